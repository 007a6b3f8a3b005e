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

#ifndef LECGEN_PIPELINE_PIPELINE_H_
#define LECGEN_PIPELINE_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mel/mel.h"
#include "pipeline/adapters.h"
#include "pipeline/deck.h"

namespace lecgen::pipeline {

struct CompositionLayout {
  int slide_width = 1920;
  int slide_height = 1080;
  int x = 1440;  // talking-head overlay, top-left corner
  int y = 810;
  int width = 480;
  int height = 270;
  std::string tool = "ffmpeg";
  std::string output = "lecture.mp4";

  void Validate() const;
};

struct PipelineConfig {
  std::string lexicon_path;
  std::string abbreviations_path;  // optional extra abbreviation table
  mel::MelConfig mel;
  double fps = 25.0;
  double ratio = 0.2;               // frame-plan constrain ratio r
  std::string reference_video;      // handed to the frame-extract adapter
  bool translation_enabled = true;
  AdapterSpec translation{AdapterKind::kTranslation, "identity", "", {}};
  AdapterSpec tts{AdapterKind::kTts, "silence", "", {}};
  AdapterSpec lipgen{AdapterKind::kLipGen, "copy", "", {}};
  AdapterSpec frame_extract{AdapterKind::kFrameExtract, "synthetic", "", {}};
  AdapterSpec embedding{AdapterKind::kEmbedding, "hash", "", {}};
  CompositionLayout layout;
  int threads = 1;
};

// JSON with sections textnorm, frontend, mel, video, translation, adapters,
// compose. Relative paths resolve against `base_dir`.
PipelineConfig ParsePipelineConfig(const std::string &json_text,
                                   const std::string &base_dir);
PipelineConfig LoadPipelineConfig(const std::string &path);

struct TimelineEntry {
  std::string slide_id;
  std::string slide_asset_path;
  std::string audio_path;  // paths below are relative to the output dir
  double audio_duration = 0.0;
  std::string mel_path;
  std::string frame_plan_path;
  std::string talking_head_frames_path;
  size_t frame_count = 0;
  double start_time = 0.0;
  std::vector<std::string> warnings;
};

struct TimelineManifest {
  double fps = 25.0;
  double total_duration = 0.0;
  std::vector<TimelineEntry> entries;
};

std::string ManifestToJson(const TimelineManifest &manifest);
TimelineManifest ManifestFromJson(const std::string &json_text);

// Per-slide seed: seed XOR FNV-1a(slide_id).
uint64_t SlideSeed(uint64_t seed, const std::string &slide_id);

// normalize -> translate -> encode -> TTS -> mel -> frame plan -> lip
// generation for each slide, then a contiguous timeline. Writes
// manifest.json and compose.txt into out_dir. threads <= 0 uses
// config.threads. Output bytes do not depend on the thread count.
TimelineManifest RunPipeline(const SlideDeck &deck, const PipelineConfig &config,
                             uint64_t seed, const std::string &out_dir,
                             int threads = 0);

// Overlay the talking head on each slide, mux its audio, then concatenate
// the segments (single-slide timelines skip the concatenation).
std::string ComposeScript(const TimelineManifest &manifest,
                          const CompositionLayout &layout);
CompositionLayout ParseLayout(const std::string &json_text);

}  // namespace lecgen::pipeline

#endif  // LECGEN_PIPELINE_PIPELINE_H_
