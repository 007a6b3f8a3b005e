// Copyright (c) 2026 The lecgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "adaptation/adaptation.h"
#include "common/error.h"
#include "common/rng.h"

namespace lecgen::adapt {
namespace {

std::vector<UtteranceRecord> MakeRecords(const std::vector<size_t> &per_speaker) {
  std::vector<UtteranceRecord> out;
  for (size_t s = 0; s < per_speaker.size(); ++s) {
    for (size_t i = 0; i < per_speaker[s]; ++i) {
      UtteranceRecord r;
      r.id = "spk" + std::to_string(s) + "_" + std::to_string(i);
      r.speaker = "spk" + std::to_string(s);
      r.duration = 1.0 + static_cast<double>(i);
      out.push_back(r);
    }
  }
  return out;
}

void ExpectBalanced(const std::vector<UtteranceRecord> &records,
                    const BatchPlan &plan, size_t batch_size) {
  std::set<std::string> speakers;
  for (const auto &r : records) speakers.insert(r.speaker);
  std::multiset<size_t> used;
  for (const auto &batch : plan.batches) {
    used.insert(batch.records.begin(), batch.records.end());
    if (!batch.full) {
      EXPECT_LT(batch.records.size(), batch_size);
      continue;
    }
    ASSERT_EQ(batch.records.size(), batch_size);
    std::map<std::string, size_t> counts;
    for (const auto &s : speakers) counts[s] = 0;
    for (size_t i : batch.records) ++counts[records[i].speaker];
    size_t lo = SIZE_MAX, hi = 0;
    for (const auto &[s, c] : counts) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    ASSERT_LE(hi - lo, 1u);
  }
  used.insert(plan.dropped.begin(), plan.dropped.end());
  ASSERT_EQ(used.size(), records.size());
  for (size_t i = 0; i < records.size(); ++i) ASSERT_EQ(used.count(i), 1u);
}

TEST(BalancedBatchesTest, EqualSpeakersFillEveryBatch) {
  const auto records = MakeRecords({8, 8, 8, 8});
  const auto plan = BalancedBatches(records, 8, 1);
  EXPECT_EQ(plan.batches.size(), 4u);
  EXPECT_TRUE(plan.dropped.empty());
  ExpectBalanced(records, plan, 8);
  for (const auto &b : plan.batches) EXPECT_TRUE(b.full);
}

TEST(BalancedBatchesTest, UnevenSpeakersStayBalanced) {
  const auto records = MakeRecords({20, 3, 7, 11});
  for (size_t bs : {1u, 3u, 4u, 6u, 9u}) {
    ExpectBalanced(records, BalancedBatches(records, bs, bs), bs);
  }
}

TEST(BalancedBatchesTest, RandomDatasets) {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    std::vector<size_t> sizes(static_cast<size_t>(rng.UniformInt(2, 16)));
    for (auto &s : sizes) s = static_cast<size_t>(rng.UniformInt(1, 40));
    const auto records = MakeRecords(sizes);
    const auto bs = static_cast<size_t>(rng.UniformInt(1, 32));
    ExpectBalanced(records, BalancedBatches(records, bs, rng.NextU64()), bs);
  }
}

TEST(BalancedBatchesTest, DeterministicPerSeed) {
  const auto records = MakeRecords({5, 9, 4});
  const auto a = BalancedBatches(records, 4, 7);
  const auto b = BalancedBatches(records, 4, 7);
  ASSERT_EQ(a.batches.size(), b.batches.size());
  for (size_t i = 0; i < a.batches.size(); ++i) {
    EXPECT_EQ(a.batches[i].records, b.batches[i].records);
  }
}

TEST(BalancedBatchesTest, RejectsEmptyInput) {
  EXPECT_THROW(BalancedBatches({}, 4, 0), ValidationError);
  const auto records = MakeRecords({2, 2});
  EXPECT_THROW(BalancedBatches(records, 0, 0), ValidationError);
}

TEST(SplitTest, FortyRecordsAtTwentyPercent) {
  const auto records = MakeRecords({40});
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto split = SplitAdaptationSet(records, 0.2, seed);
    EXPECT_EQ(split.test.size(), 8u);
    EXPECT_EQ(split.adapt.size(), 32u);
    EXPECT_TRUE(std::is_sorted(split.test.begin(), split.test.end()));
    EXPECT_TRUE(std::is_sorted(split.adapt.begin(), split.adapt.end()));
    std::set<size_t> all(split.test.begin(), split.test.end());
    all.insert(split.adapt.begin(), split.adapt.end());
    EXPECT_EQ(all.size(), 40u);
  }
  EXPECT_NE(SplitAdaptationSet(records, 0.2, 1).test,
            SplitAdaptationSet(records, 0.2, 2).test);
}

TEST(SplitTest, RoundHalfEven) {
  EXPECT_EQ(RoundHalfEven(2.5), 2);
  EXPECT_EQ(RoundHalfEven(3.5), 4);
  EXPECT_EQ(RoundHalfEven(2.4), 2);
  EXPECT_EQ(RoundHalfEven(2.6), 3);
  EXPECT_EQ(SplitAdaptationSet(MakeRecords({10}), 0.25, 0).test.size(), 2u);
  EXPECT_EQ(SplitAdaptationSet(MakeRecords({14}), 0.25, 0).test.size(), 4u);
}

TEST(SplitTest, RejectsBadFraction) {
  const auto records = MakeRecords({10});
  EXPECT_THROW(SplitAdaptationSet(records, 0.0, 0), ValidationError);
  EXPECT_THROW(SplitAdaptationSet(records, 1.0, 0), ValidationError);
  EXPECT_THROW(SplitAdaptationSet(MakeRecords({1}), 0.2, 0), ValidationError);
}

TEST(RecordsTest, ParseJsonLines) {
  const auto records = ParseRecords(
      "{\"id\":\"a\",\"speaker\":\"s\",\"duration\":1.5,\"transcript\":\"hi\"}\n"
      "\n"
      "{\"id\":\"b\",\"speaker\":\"t\",\"duration\":2}\n",
      "r.jsonl");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].transcript, "hi");
  EXPECT_EQ(records[1].speaker, "t");
  EXPECT_EQ(ParseRecords(RecordToJson(records[0]), "x")[0].id, "a");
  try {
    ParseRecords("{\"id\":\"a\",\"speaker\":\"s\",\"duration\":-1}\n", "r.jsonl");
    FAIL();
  } catch (const ValidationError &e) {
    EXPECT_NE(std::string(e.what()).find("r.jsonl:1"), std::string::npos);
  }
}

TEST(ScheduleTest, DefaultStages) {
  const auto stages = AdaptationSchedule(AdaptationConfig{});
  ASSERT_EQ(stages.size(), 3u);
  EXPECT_EQ(stages[0].stage, Stage::kBaseTrain);
  EXPECT_TRUE(stages[0].frozen.empty());
  EXPECT_EQ(stages[0].steps, 120000);
  EXPECT_EQ(stages[0].optimizer, "adam");
  EXPECT_EQ(stages[0].lr_policy, "step");
  EXPECT_FALSE(stages[0].attention_penalty_enabled);

  EXPECT_EQ(stages[1].stage, Stage::kDecoderAdapt);
  EXPECT_EQ(stages[1].frozen, std::set<std::string>{"encoder"});
  EXPECT_EQ(stages[1].steps, 2000);
  EXPECT_DOUBLE_EQ(stages[1].learning_rate, 3e-5);
  EXPECT_TRUE(stages[1].attention_penalty_enabled);
  EXPECT_DOUBLE_EQ(stages[1].attention_penalty_sharpness, 3.5);

  EXPECT_EQ(stages[2].stage, Stage::kVocoderAdapt);
  EXPECT_EQ(stages[2].frozen, (std::set<std::string>{"decoder", "encoder"}));
  EXPECT_FALSE(stages[2].assumptions.empty());
}

TEST(ScheduleTest, ConfigOverridesAndValidation) {
  const auto config = ParseAdaptationConfig(
      "{\"decoder\": {\"steps\": 500, \"learning_rate\": 1e-4},"
      " \"attention_penalty_weight\": 0.5}");
  const auto stages = AdaptationSchedule(config);
  EXPECT_EQ(stages[1].steps, 500);
  EXPECT_DOUBLE_EQ(stages[1].learning_rate, 1e-4);
  EXPECT_DOUBLE_EQ(stages[1].attention_penalty_weight, 0.5);
  EXPECT_EQ(stages[2].steps, 500);
  EXPECT_THROW(AdaptationSchedule(
                   ParseAdaptationConfig("{\"base\": {\"steps\": 0}}")),
               ValidationError);
  EXPECT_THROW(ParseAdaptationConfig("{not json"), ValidationError);
  const std::string json = ScheduleToJson(stages);
  EXPECT_NE(json.find("\"DecoderAdapt\""), std::string::npos);
}

}  // namespace
}  // namespace lecgen::adapt
