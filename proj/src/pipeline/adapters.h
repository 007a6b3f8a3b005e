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

#ifndef LECGEN_PIPELINE_ADAPTERS_H_
#define LECGEN_PIPELINE_ADAPTERS_H_

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "eval/similarity.h"
#include "frontend/encoder.h"
#include "mel/mel.h"
#include "video/augment.h"

namespace lecgen::pipeline {

enum class AdapterKind { kTranslation, kTts, kLipGen, kEmbedding, kFrameExtract };
const char *AdapterKindName(AdapterKind kind);

// Either an in-tree stub (by name) or an external command template whose
// {placeholders} are replaced by shell-quoted file paths or values.
struct AdapterSpec {
  AdapterKind kind = AdapterKind::kTts;
  std::string stub;
  std::string command;
  std::map<std::string, double> options;  // stub tuning, e.g. seconds_per_token
};

class TranslationAdapter {
 public:
  virtual ~TranslationAdapter() = default;
  virtual std::string Translate(const std::string &text,
                                const std::string &source_language,
                                const std::string &target_language,
                                const std::string &work_dir) const = 0;
};

struct TtsRequest {
  std::string text;
  const frontend::MixedTokenSeq *tokens = nullptr;
  std::string tokens_path;  // dump of *tokens, already on disk
  std::string wav_path;     // output
  std::string mel_path;     // optional output (+ sidecar)
  const mel::MelConfig *mel_config = nullptr;
};

struct TtsResult {
  std::string wav_path;
  std::optional<std::string> mel_path;  // set when the adapter produced one
};

class TtsAdapter {
 public:
  virtual ~TtsAdapter() = default;
  virtual TtsResult Synthesize(const TtsRequest &request) const = 0;
};

struct LipGenRequest {
  std::string wav_path;
  std::string mel_path;
  std::string plan_path;
  const video::FramePlan *plan = nullptr;
  std::string reference_frames_dir;
  std::string out_frames_dir;
};

class LipGenAdapter {
 public:
  virtual ~LipGenAdapter() = default;
  virtual void Generate(const LipGenRequest &request) const = 0;
};

class FrameExtractAdapter {
 public:
  virtual ~FrameExtractAdapter() = default;
  // Writes frame_%06d.png files into out_dir and returns their count.
  virtual size_t Extract(const std::string &video_path,
                         const std::string &out_dir) const = 0;
};

class EmbeddingAdapter {
 public:
  virtual ~EmbeddingAdapter() = default;
  virtual eval::SpeakerEmbedding Embed(const std::string &wav_path,
                                       const std::string &work_dir) const = 0;
};

std::unique_ptr<TranslationAdapter> MakeTranslationAdapter(const AdapterSpec &spec);
std::unique_ptr<TtsAdapter> MakeTtsAdapter(const AdapterSpec &spec);
std::unique_ptr<LipGenAdapter> MakeLipGenAdapter(const AdapterSpec &spec);
std::unique_ptr<FrameExtractAdapter> MakeFrameExtractAdapter(const AdapterSpec &spec);
std::unique_ptr<EmbeddingAdapter> MakeEmbeddingAdapter(const AdapterSpec &spec);

// Substitutes {name} placeholders with single-quoted values; unknown
// placeholders are an error.
std::string ExpandCommand(const std::string &templ,
                          const std::map<std::string, std::string> &values);

// Runs a shell command; throws AdapterError on a non-zero exit.
void RunCommand(AdapterKind kind, const std::string &command);

}  // namespace lecgen::pipeline

#endif  // LECGEN_PIPELINE_ADAPTERS_H_
