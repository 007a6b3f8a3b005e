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

#ifndef LECGEN_ADAPTATION_ADAPTATION_H_
#define LECGEN_ADAPTATION_ADAPTATION_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace lecgen::adapt {

struct UtteranceRecord {
  std::string id;
  std::string speaker;
  double duration = 0.0;  // seconds
  std::string transcript;
  std::string audio_path;
};

// JSON lines, one object per line with the UtteranceRecord field names.
std::vector<UtteranceRecord> ParseRecords(const std::string &jsonl,
                                          const std::string &source);
std::vector<UtteranceRecord> LoadRecords(const std::string &path);
std::string RecordToJson(const UtteranceRecord &record);

struct Batch {
  std::vector<size_t> records;  // indices into the input list
  bool full = false;
};

struct BatchPlan {
  std::vector<Batch> batches;
  std::vector<size_t> dropped;  // not scheduled this epoch
};

// Every full batch holds each speaker of the dataset floor(B/S) or
// ceil(B/S) times. Once no further balanced batch can be formed, up to
// batch_size - 1 leftover records go into one trailing partial batch and
// the rest are reported in `dropped`.
BatchPlan BalancedBatches(std::span<const UtteranceRecord> records,
                          size_t batch_size, uint64_t seed);

struct SplitResult {
  std::vector<size_t> adapt;  // input order
  std::vector<size_t> test;   // input order
};

// |test| = round-half-to-even(test_fraction * n).
SplitResult SplitAdaptationSet(std::span<const UtteranceRecord> records,
                               double test_fraction, uint64_t seed);

int64_t RoundHalfEven(double x);

enum class Stage { kBaseTrain, kDecoderAdapt, kVocoderAdapt };
const char *StageName(Stage stage);

struct StageManifest {
  Stage stage = Stage::kBaseTrain;
  std::set<std::string> frozen;
  int64_t steps = 0;
  double learning_rate = 0.0;
  std::string optimizer = "adam";
  std::string lr_policy;
  bool attention_penalty_enabled = false;
  double attention_penalty_weight = 0.0;
  double attention_penalty_sharpness = 0.0;
  std::vector<std::string> assumptions;
};

struct StageSettings {
  std::optional<int64_t> steps;
  std::optional<double> learning_rate;
};

// Unset values fall back to defaults; defaults that are guesses rather than
// published settings are listed in the manifest's `assumptions`.
struct AdaptationConfig {
  StageSettings base;
  StageSettings decoder;
  StageSettings vocoder;
  std::optional<double> attention_penalty_weight;
  double attention_penalty_sharpness = 3.5;
  std::string base_lr_policy = "step";
};

inline constexpr int64_t kBaseTrainSteps = 120000;
inline constexpr int64_t kDecoderAdaptSteps = 2000;
inline constexpr double kDecoderAdaptLearningRate = 3e-5;
inline constexpr double kBaseTrainLearningRate = 1e-3;

AdaptationConfig ParseAdaptationConfig(const std::string &json_text);

// [BaseTrain, DecoderAdapt, VocoderAdapt] with frozen sets
// {} / {encoder} / {encoder, decoder}.
std::vector<StageManifest> AdaptationSchedule(const AdaptationConfig &config);
std::string ScheduleToJson(const std::vector<StageManifest> &schedule);

}  // namespace lecgen::adapt

#endif  // LECGEN_ADAPTATION_ADAPTATION_H_
