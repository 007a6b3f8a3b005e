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

#include "adaptation/adaptation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "common/error.h"
#include "common/matrix.h"
#include "common/rng.h"
#include "json.hpp"

namespace lecgen::adapt {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<UtteranceRecord> ParseRecords(const std::string &jsonl,
                                          const std::string &source) {
  std::vector<UtteranceRecord> out;
  std::istringstream in(jsonl);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    UtteranceRecord r;
    try {
      const auto j = json::parse(line);
      r.id = j.at("id").get<std::string>();
      r.speaker = j.at("speaker").get<std::string>();
      r.duration = j.at("duration").get<double>();
      r.transcript = j.value("transcript", "");
      r.audio_path = j.value("audio_path", "");
    } catch (const json::exception &e) {
      throw ValidationError(where + ": " + e.what());
    }
    if (r.speaker.empty()) throw ValidationError(where + ": empty speaker");
    if (!(r.duration > 0.0)) {
      throw ValidationError(where + ": duration must be positive");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<UtteranceRecord> LoadRecords(const std::string &path) {
  return ParseRecords(ReadFileBytes(path), path);
}

std::string RecordToJson(const UtteranceRecord &r) {
  ordered_json j;
  j["id"] = r.id;
  j["speaker"] = r.speaker;
  j["duration"] = r.duration;
  j["transcript"] = r.transcript;
  j["audio_path"] = r.audio_path;
  return j.dump();
}

BatchPlan BalancedBatches(std::span<const UtteranceRecord> records,
                          size_t batch_size, uint64_t seed) {
  if (records.empty()) throw ValidationError("no records, so no speakers");
  if (batch_size == 0) throw ValidationError("batch size must be positive");

  Rng rng(seed);
  std::map<std::string, std::vector<size_t>> by_speaker;
  for (size_t i = 0; i < records.size(); ++i) {
    by_speaker[records[i].speaker].push_back(i);
  }
  std::vector<std::vector<size_t>> queues;
  for (auto &[speaker, ids] : by_speaker) {
    rng.Shuffle(&ids);
    queues.push_back(std::move(ids));
  }
  const size_t speakers = queues.size();
  const size_t quota = batch_size / speakers;
  const size_t extra = batch_size % speakers;
  std::vector<size_t> next(speakers, 0);
  auto remaining = [&](size_t s) { return queues[s].size() - next[s]; };

  BatchPlan plan;
  for (size_t round = 0;; ++round) {
    // Extras go to the speakers with the most records left; ties rotate so
    // no speaker is favoured across rounds.
    std::vector<size_t> order(speakers);
    for (size_t s = 0; s < speakers; ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (remaining(a) != remaining(b)) return remaining(a) > remaining(b);
      return (a + speakers - round % speakers) % speakers <
             (b + speakers - round % speakers) % speakers;
    });
    bool feasible = true;
    for (size_t rank = 0; rank < speakers && feasible; ++rank) {
      const size_t want = quota + (rank < extra ? 1 : 0);
      feasible = remaining(order[rank]) >= want;
    }
    if (!feasible) break;
    Batch batch;
    batch.full = true;
    for (size_t rank = 0; rank < speakers; ++rank) {
      const size_t s = order[rank];
      const size_t want = quota + (rank < extra ? 1 : 0);
      for (size_t k = 0; k < want; ++k) {
        batch.records.push_back(queues[s][next[s]++]);
      }
    }
    rng.Shuffle(&batch.records);
    plan.batches.push_back(std::move(batch));
  }

  std::vector<size_t> leftover;
  for (size_t s = 0; s < speakers; ++s) {
    for (size_t k = next[s]; k < queues[s].size(); ++k) {
      leftover.push_back(queues[s][k]);
    }
  }
  rng.Shuffle(&leftover);
  const size_t keep = std::min(leftover.size(), batch_size - 1);
  if (keep > 0) {
    plan.batches.push_back(
        Batch{{leftover.begin(), leftover.begin() + static_cast<long>(keep)},
              false});
  }
  plan.dropped.assign(leftover.begin() + static_cast<long>(keep),
                      leftover.end());
  return plan;
}

int64_t RoundHalfEven(double x) {
  const double lower = std::floor(x);
  const double frac = x - lower;
  auto result = static_cast<int64_t>(lower);
  if (frac > 0.5 || (frac == 0.5 && result % 2 != 0)) ++result;
  return result;
}

SplitResult SplitAdaptationSet(std::span<const UtteranceRecord> records,
                               double test_fraction, uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError("test fraction must lie in (0, 1)");
  }
  if (records.size() < 2) {
    throw ValidationError("need at least 2 records to split, got " +
                          std::to_string(records.size()));
  }
  const auto test_size = static_cast<size_t>(
      RoundHalfEven(test_fraction * static_cast<double>(records.size())));
  std::vector<size_t> order(records.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.Shuffle(&order);
  std::vector<bool> is_test(records.size(), false);
  for (size_t i = 0; i < test_size; ++i) is_test[order[i]] = true;
  SplitResult out;
  for (size_t i = 0; i < records.size(); ++i) {
    (is_test[i] ? out.test : out.adapt).push_back(i);
  }
  return out;
}

const char *StageName(Stage stage) {
  switch (stage) {
    case Stage::kBaseTrain:
      return "BaseTrain";
    case Stage::kDecoderAdapt:
      return "DecoderAdapt";
    case Stage::kVocoderAdapt:
      return "VocoderAdapt";
  }
  return "?";
}

namespace {

void ReadStage(const json &j, const char *name, StageSettings *out) {
  if (!j.contains(name)) return;
  const json &s = j.at(name);
  if (s.contains("steps")) out->steps = s.at("steps").get<int64_t>();
  if (s.contains("learning_rate")) {
    out->learning_rate = s.at("learning_rate").get<double>();
  }
}

void CheckStage(const StageManifest &m) {
  if (m.steps <= 0) {
    throw ValidationError(std::string(StageName(m.stage)) +
                          ": steps must be positive");
  }
  if (!(m.learning_rate > 0.0)) {
    throw ValidationError(std::string(StageName(m.stage)) +
                          ": learning rate must be positive");
  }
}

}  // namespace

AdaptationConfig ParseAdaptationConfig(const std::string &json_text) {
  AdaptationConfig c;
  try {
    const auto j = json::parse(json_text);
    ReadStage(j, "base", &c.base);
    ReadStage(j, "decoder", &c.decoder);
    ReadStage(j, "vocoder", &c.vocoder);
    if (j.contains("attention_penalty_weight")) {
      c.attention_penalty_weight = j.at("attention_penalty_weight").get<double>();
    }
    c.attention_penalty_sharpness =
        j.value("attention_penalty_sharpness", c.attention_penalty_sharpness);
    c.base_lr_policy = j.value("base_lr_policy", c.base_lr_policy);
  } catch (const json::exception &e) {
    throw ValidationError(std::string("bad adaptation config: ") + e.what());
  }
  return c;
}

std::vector<StageManifest> AdaptationSchedule(const AdaptationConfig &config) {
  StageManifest base;
  base.stage = Stage::kBaseTrain;
  base.steps = config.base.steps.value_or(kBaseTrainSteps);
  base.learning_rate = config.base.learning_rate.value_or(kBaseTrainLearningRate);
  base.lr_policy = config.base_lr_policy;
  if (!config.base.learning_rate) {
    base.assumptions.push_back(
        "base learning rate is not published; default 1e-3 assumed");
  }

  StageManifest decoder;
  decoder.stage = Stage::kDecoderAdapt;
  decoder.frozen = {"encoder"};
  decoder.steps = config.decoder.steps.value_or(kDecoderAdaptSteps);
  decoder.learning_rate =
      config.decoder.learning_rate.value_or(kDecoderAdaptLearningRate);
  decoder.lr_policy = "constant";
  decoder.attention_penalty_enabled = true;
  decoder.attention_penalty_weight =
      config.attention_penalty_weight.value_or(1.0);
  decoder.attention_penalty_sharpness = config.attention_penalty_sharpness;
  if (!config.attention_penalty_weight) {
    decoder.assumptions.push_back(
        "attention penalty weight relative to the spectrogram loss is not "
        "published; 1.0 assumed");
  }

  StageManifest vocoder;
  vocoder.stage = Stage::kVocoderAdapt;
  vocoder.frozen = {"encoder", "decoder"};
  vocoder.steps = config.vocoder.steps.value_or(decoder.steps);
  vocoder.learning_rate =
      config.vocoder.learning_rate.value_or(decoder.learning_rate);
  vocoder.lr_policy = "constant";
  if (!config.vocoder.steps) {
    vocoder.assumptions.push_back(
        "vocoder fine-tune steps are not published; mirrors DecoderAdapt");
  }
  if (!config.vocoder.learning_rate) {
    vocoder.assumptions.push_back(
        "vocoder fine-tune learning rate is not published; mirrors "
        "DecoderAdapt");
  }

  std::vector<StageManifest> schedule = {base, decoder, vocoder};
  for (const auto &m : schedule) CheckStage(m);
  return schedule;
}

std::string ScheduleToJson(const std::vector<StageManifest> &schedule) {
  ordered_json arr = ordered_json::array();
  for (const auto &m : schedule) {
    ordered_json j;
    j["stage"] = StageName(m.stage);
    j["frozen"] = std::vector<std::string>(m.frozen.begin(), m.frozen.end());
    j["steps"] = m.steps;
    j["learning_rate"] = m.learning_rate;
    j["optimizer"] = m.optimizer;
    j["lr_policy"] = m.lr_policy;
    j["attention_penalty_enabled"] = m.attention_penalty_enabled;
    if (m.attention_penalty_enabled) {
      j["attention_penalty_weight"] = m.attention_penalty_weight;
      j["attention_penalty_sharpness"] = m.attention_penalty_sharpness;
    }
    j["assumptions"] = m.assumptions;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace lecgen::adapt
