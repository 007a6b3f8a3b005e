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

#include "pipeline/adapters.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "common/error.h"
#include "common/matrix.h"
#include "mel/wav_io.h"

namespace lecgen::pipeline {

namespace fs = std::filesystem;

const char *AdapterKindName(AdapterKind kind) {
  switch (kind) {
    case AdapterKind::kTranslation:
      return "translation";
    case AdapterKind::kTts:
      return "tts";
    case AdapterKind::kLipGen:
      return "lipgen";
    case AdapterKind::kEmbedding:
      return "embedding";
    case AdapterKind::kFrameExtract:
      return "frame_extract";
  }
  return "?";
}

namespace {

std::string ShellQuote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

bool IsPlaceholderChar(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

AdapterError Failure(AdapterKind kind, const std::string &message) {
  return AdapterError(AdapterKindName(kind), "", message);
}

double Option(const AdapterSpec &spec, const std::string &name, double fallback) {
  auto it = spec.options.find(name);
  return it == spec.options.end() ? fallback : it->second;
}

// --- stubs ---------------------------------------------------------------

class IdentityTranslation : public TranslationAdapter {
 public:
  std::string Translate(const std::string &text, const std::string &,
                        const std::string &, const std::string &) const override {
    return text;
  }
};

// Silence lasting seconds_per_token for every encoder token, plus its mel.
class SilenceTts : public TtsAdapter {
 public:
  explicit SilenceTts(double seconds_per_token)
      : seconds_per_token_(seconds_per_token) {}

  TtsResult Synthesize(const TtsRequest &req) const override {
    const mel::MelConfig &cfg = *req.mel_config;
    const double seconds =
        seconds_per_token_ * static_cast<double>(req.tokens->tokens.size());
    mel::Waveform wave;
    wave.sample_rate = cfg.sample_rate;
    wave.samples.assign(
        static_cast<size_t>(std::llround(seconds * cfg.sample_rate)), 0.0f);
    if (wave.samples.size() < static_cast<size_t>(cfg.win)) {
      wave.samples.resize(static_cast<size_t>(cfg.win), 0.0f);
    }
    mel::WriteWavPcm16(wave, req.wav_path);
    TtsResult result{req.wav_path, std::nullopt};
    if (!req.mel_path.empty()) {
      mel::WriteMel(mel::ComputeMelSpectrogram(wave, cfg), req.mel_path);
      result.mel_path = req.mel_path;
    }
    return result;
  }

 private:
  double seconds_per_token_;
};

class CopyLipGen : public LipGenAdapter {
 public:
  void Generate(const LipGenRequest &req) const override {
    video::ApplyPlanToDirectory(*req.plan, req.reference_frames_dir,
                                req.out_frames_dir);
  }
};

// Placeholder frames standing in for a decoded reference clip.
class SyntheticFrames : public FrameExtractAdapter {
 public:
  explicit SyntheticFrames(size_t count) : count_(count) {}

  size_t Extract(const std::string &, const std::string &out_dir) const override {
    fs::create_directories(out_dir);
    for (size_t i = 0; i < count_; ++i) {
      char body[64];
      std::snprintf(body, sizeof(body), "stub reference frame %06zu\n", i);
      WriteFileBytes((fs::path(out_dir) / video::FrameFileName(i)).string(),
                     body);
    }
    return count_;
  }

 private:
  size_t count_;
};

class HashEmbedding : public EmbeddingAdapter {
 public:
  eval::SpeakerEmbedding Embed(const std::string &wav_path,
                               const std::string &) const override {
    return eval::StubEmbedding(ReadFileBytes(wav_path));
  }
};

// --- external commands ---------------------------------------------------

class CommandTranslation : public TranslationAdapter {
 public:
  explicit CommandTranslation(std::string templ) : templ_(std::move(templ)) {}

  std::string Translate(const std::string &text, const std::string &source,
                        const std::string &target,
                        const std::string &work_dir) const override {
    const std::string in = (fs::path(work_dir) / "translate_in.txt").string();
    const std::string out = (fs::path(work_dir) / "translate_out.txt").string();
    WriteFileBytes(in, text);
    RunCommand(AdapterKind::kTranslation,
               ExpandCommand(templ_, {{"input", in},
                                      {"output", out},
                                      {"source_lang", source},
                                      {"target_lang", target}}));
    if (!fs::exists(out)) {
      throw Failure(AdapterKind::kTranslation, "command produced no " + out);
    }
    return ReadFileBytes(out);
  }

 private:
  std::string templ_;
};

class CommandTts : public TtsAdapter {
 public:
  explicit CommandTts(std::string templ) : templ_(std::move(templ)) {}

  TtsResult Synthesize(const TtsRequest &req) const override {
    const std::string text_path =
        (fs::path(req.wav_path).parent_path() / "tts_input.txt").string();
    WriteFileBytes(text_path, req.text);
    RunCommand(AdapterKind::kTts, ExpandCommand(templ_, {{"text", text_path},
                                                         {"tokens", req.tokens_path},
                                                         {"wav", req.wav_path},
                                                         {"mel", req.mel_path}}));
    if (!fs::exists(req.wav_path)) {
      throw Failure(AdapterKind::kTts, "command produced no " + req.wav_path);
    }
    TtsResult result{req.wav_path, std::nullopt};
    if (!req.mel_path.empty() && fs::exists(req.mel_path)) {
      result.mel_path = req.mel_path;
    }
    return result;
  }

 private:
  std::string templ_;
};

class CommandLipGen : public LipGenAdapter {
 public:
  explicit CommandLipGen(std::string templ) : templ_(std::move(templ)) {}

  void Generate(const LipGenRequest &req) const override {
    fs::create_directories(req.out_frames_dir);
    RunCommand(AdapterKind::kLipGen,
               ExpandCommand(templ_, {{"wav", req.wav_path},
                                      {"mel", req.mel_path},
                                      {"plan", req.plan_path},
                                      {"reference", req.reference_frames_dir},
                                      {"frames", req.out_frames_dir}}));
    const size_t produced = video::CountFrames(req.out_frames_dir);
    if (produced != req.plan->indices.size()) {
      throw Failure(AdapterKind::kLipGen,
                    "expected " + std::to_string(req.plan->indices.size()) +
                        " frames, command produced " + std::to_string(produced));
    }
  }

 private:
  std::string templ_;
};

class CommandFrameExtract : public FrameExtractAdapter {
 public:
  explicit CommandFrameExtract(std::string templ) : templ_(std::move(templ)) {}

  size_t Extract(const std::string &video_path,
                 const std::string &out_dir) const override {
    fs::create_directories(out_dir);
    RunCommand(AdapterKind::kFrameExtract,
               ExpandCommand(templ_, {{"video", video_path}, {"frames", out_dir}}));
    return video::CountFrames(out_dir);
  }

 private:
  std::string templ_;
};

class CommandEmbedding : public EmbeddingAdapter {
 public:
  explicit CommandEmbedding(std::string templ) : templ_(std::move(templ)) {}

  eval::SpeakerEmbedding Embed(const std::string &wav_path,
                               const std::string &work_dir) const override {
    const std::string out = (fs::path(work_dir) / "embedding.bin").string();
    RunCommand(AdapterKind::kEmbedding,
               ExpandCommand(templ_, {{"wav", wav_path}, {"output", out}}));
    return eval::ReadEmbedding(out);
  }

 private:
  std::string templ_;
};

void CheckSpec(const AdapterSpec &spec, AdapterKind kind) {
  if (spec.kind != kind) {
    throw ValidationError(std::string("adapter spec kind mismatch for ") +
                          AdapterKindName(kind));
  }
  if (spec.stub.empty() == spec.command.empty()) {
    throw ValidationError(std::string("adapter ") + AdapterKindName(kind) +
                          " needs exactly one of 'stub' or 'command'");
  }
}

[[noreturn]] void UnknownStub(const AdapterSpec &spec) {
  throw ValidationError(std::string("unknown ") + AdapterKindName(spec.kind) +
                        " stub '" + spec.stub + "'");
}

}  // namespace

std::string ExpandCommand(const std::string &templ,
                          const std::map<std::string, std::string> &values) {
  std::string out;
  size_t i = 0;
  while (i < templ.size()) {
    if (templ[i] == '{') {
      size_t j = i + 1;
      while (j < templ.size() && IsPlaceholderChar(templ[j])) ++j;
      if (j < templ.size() && templ[j] == '}' && j > i + 1) {
        const std::string name = templ.substr(i + 1, j - i - 1);
        auto it = values.find(name);
        if (it == values.end()) {
          throw ValidationError("unknown placeholder {" + name +
                                "} in adapter command");
        }
        out += ShellQuote(it->second);
        i = j + 1;
        continue;
      }
    }
    out.push_back(templ[i++]);
  }
  return out;
}

void RunCommand(AdapterKind kind, const std::string &command) {
  std::fflush(nullptr);
  const int status = std::system(command.c_str());
  if (status != 0) {
    throw Failure(kind, "command exited with status " + std::to_string(status) +
                            ": " + command);
  }
}

std::unique_ptr<TranslationAdapter> MakeTranslationAdapter(const AdapterSpec &spec) {
  CheckSpec(spec, AdapterKind::kTranslation);
  if (!spec.command.empty()) return std::make_unique<CommandTranslation>(spec.command);
  if (spec.stub == "identity") return std::make_unique<IdentityTranslation>();
  UnknownStub(spec);
}

std::unique_ptr<TtsAdapter> MakeTtsAdapter(const AdapterSpec &spec) {
  CheckSpec(spec, AdapterKind::kTts);
  if (!spec.command.empty()) return std::make_unique<CommandTts>(spec.command);
  if (spec.stub == "silence") {
    const double seconds = Option(spec, "seconds_per_token", 0.1);
    if (!(seconds > 0.0)) {
      throw ValidationError("silence tts: seconds_per_token must be positive");
    }
    return std::make_unique<SilenceTts>(seconds);
  }
  UnknownStub(spec);
}

std::unique_ptr<LipGenAdapter> MakeLipGenAdapter(const AdapterSpec &spec) {
  CheckSpec(spec, AdapterKind::kLipGen);
  if (!spec.command.empty()) return std::make_unique<CommandLipGen>(spec.command);
  if (spec.stub == "copy") return std::make_unique<CopyLipGen>();
  UnknownStub(spec);
}

std::unique_ptr<FrameExtractAdapter> MakeFrameExtractAdapter(const AdapterSpec &spec) {
  CheckSpec(spec, AdapterKind::kFrameExtract);
  if (!spec.command.empty()) {
    return std::make_unique<CommandFrameExtract>(spec.command);
  }
  if (spec.stub == "synthetic") {
    const double frames = Option(spec, "frames", 50);
    if (!(frames >= 0.0)) throw ValidationError("synthetic frames: bad count");
    return std::make_unique<SyntheticFrames>(static_cast<size_t>(frames));
  }
  UnknownStub(spec);
}

std::unique_ptr<EmbeddingAdapter> MakeEmbeddingAdapter(const AdapterSpec &spec) {
  CheckSpec(spec, AdapterKind::kEmbedding);
  if (!spec.command.empty()) return std::make_unique<CommandEmbedding>(spec.command);
  if (spec.stub == "hash") return std::make_unique<HashEmbedding>();
  UnknownStub(spec);
}

}  // namespace lecgen::pipeline
