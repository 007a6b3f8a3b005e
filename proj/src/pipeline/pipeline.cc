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

#include "pipeline/pipeline.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <thread>

#include "common/error.h"
#include "common/matrix.h"
#include "common/rng.h"
#include "frontend/encoder.h"
#include "json.hpp"
#include "textnorm/normalizer.h"
#include "video/augment.h"

namespace lecgen::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string Resolve(const std::string &base_dir, const std::string &path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_relative()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

AdapterSpec ReadAdapter(const json &j, AdapterKind kind, AdapterSpec spec) {
  spec.kind = kind;
  if (j.contains("stub") || j.contains("command")) {
    spec.stub = j.value("stub", "");
    spec.command = j.value("command", "");
  }
  for (const auto &[key, value] : j.items()) {
    if (value.is_number()) spec.options[key] = value.get<double>();
  }
  return spec;
}

}  // namespace

void CompositionLayout::Validate() const {
  if (slide_width <= 0 || slide_height <= 0) {
    throw ValidationError("layout: slide size must be positive");
  }
  if (width <= 0 || height <= 0) {
    throw ValidationError("layout: overlay size must be positive");
  }
  if (x < 0 || y < 0 || x + width > slide_width || y + height > slide_height) {
    throw ValidationError("layout: overlay (" + std::to_string(x) + ", " +
                          std::to_string(y) + ", " + std::to_string(width) +
                          "x" + std::to_string(height) +
                          ") exceeds the slide bounds " +
                          std::to_string(slide_width) + "x" +
                          std::to_string(slide_height));
  }
}

namespace {

CompositionLayout LayoutFromJson(const json &j) {
  CompositionLayout l;
  l.slide_width = j.value("slide_width", l.slide_width);
  l.slide_height = j.value("slide_height", l.slide_height);
  l.x = j.value("x", l.x);
  l.y = j.value("y", l.y);
  l.width = j.value("width", l.width);
  l.height = j.value("height", l.height);
  l.tool = j.value("tool", l.tool);
  l.output = j.value("output", l.output);
  return l;
}

}  // namespace

CompositionLayout ParseLayout(const std::string &json_text) {
  try {
    auto l = LayoutFromJson(json::parse(json_text));
    l.Validate();
    return l;
  } catch (const json::exception &e) {
    throw ValidationError(std::string("bad layout: ") + e.what());
  }
}

PipelineConfig ParsePipelineConfig(const std::string &json_text,
                                   const std::string &base_dir) {
  PipelineConfig c;
  try {
    const json j = json::parse(json_text);
    const json empty = json::object();
    auto section = [&](const char *name) -> const json & {
      return j.contains(name) ? j.at(name) : empty;
    };
    c.lexicon_path = Resolve(base_dir, section("frontend").at("lexicon").get<std::string>());
    c.abbreviations_path =
        Resolve(base_dir, section("textnorm").value("abbreviations", ""));

    const json &m = section("mel");
    c.mel.sample_rate = m.value("sample_rate", c.mel.sample_rate);
    c.mel.n_fft = m.value("n_fft", c.mel.n_fft);
    c.mel.win = m.value("win", c.mel.win);
    c.mel.hop = m.value("hop", c.mel.hop);
    c.mel.bands = m.value("bands", c.mel.bands);
    c.mel.fmin = m.value("fmin", c.mel.fmin);
    c.mel.fmax = m.value("fmax", c.mel.fmax);
    c.mel.floor_amplitude = m.value("floor_amplitude", c.mel.floor_amplitude);

    const json &v = section("video");
    c.fps = v.value("fps", c.fps);
    c.ratio = v.value("r", c.ratio);
    c.reference_video = Resolve(base_dir, v.value("reference", ""));

    c.translation_enabled = section("translation").value("enabled", true);

    const json &a = section("adapters");
    auto adapter = [&](const char *name) -> const json & {
      return a.contains(name) ? a.at(name) : empty;
    };
    c.translation = ReadAdapter(adapter("translation"), AdapterKind::kTranslation,
                                c.translation);
    c.tts = ReadAdapter(adapter("tts"), AdapterKind::kTts, c.tts);
    c.lipgen = ReadAdapter(adapter("lipgen"), AdapterKind::kLipGen, c.lipgen);
    c.frame_extract = ReadAdapter(adapter("frame_extract"),
                                  AdapterKind::kFrameExtract, c.frame_extract);
    c.embedding = ReadAdapter(adapter("embedding"), AdapterKind::kEmbedding,
                              c.embedding);

    c.layout = LayoutFromJson(section("compose"));
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception &e) {
    throw ValidationError(std::string("bad pipeline config: ") + e.what());
  }
  c.mel.Validate();
  c.layout.Validate();
  if (!(c.fps > 0.0)) throw ValidationError("fps must be positive");
  return c;
}

PipelineConfig LoadPipelineConfig(const std::string &path) {
  return ParsePipelineConfig(ReadFileBytes(path),
                             fs::path(path).parent_path().string());
}

std::string ManifestToJson(const TimelineManifest &manifest) {
  ordered_json j;
  j["fps"] = manifest.fps;
  j["total_duration"] = manifest.total_duration;
  ordered_json entries = ordered_json::array();
  for (const auto &e : manifest.entries) {
    ordered_json o;
    o["slide_id"] = e.slide_id;
    o["slide_asset_path"] = e.slide_asset_path;
    o["audio_path"] = e.audio_path;
    o["audio_duration"] = e.audio_duration;
    o["mel_path"] = e.mel_path;
    o["frame_plan_path"] = e.frame_plan_path;
    o["talking_head_frames_path"] = e.talking_head_frames_path;
    o["frame_count"] = e.frame_count;
    o["start_time"] = e.start_time;
    o["warnings"] = e.warnings;
    entries.push_back(std::move(o));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

TimelineManifest ManifestFromJson(const std::string &json_text) {
  TimelineManifest m;
  try {
    const json j = json::parse(json_text);
    m.fps = j.at("fps").get<double>();
    m.total_duration = j.at("total_duration").get<double>();
    for (const auto &o : j.at("entries")) {
      TimelineEntry e;
      e.slide_id = o.at("slide_id").get<std::string>();
      e.slide_asset_path = o.at("slide_asset_path").get<std::string>();
      e.audio_path = o.at("audio_path").get<std::string>();
      e.audio_duration = o.at("audio_duration").get<double>();
      e.mel_path = o.at("mel_path").get<std::string>();
      e.frame_plan_path = o.at("frame_plan_path").get<std::string>();
      e.talking_head_frames_path =
          o.at("talking_head_frames_path").get<std::string>();
      e.frame_count = o.value("frame_count", size_t{0});
      e.start_time = o.at("start_time").get<double>();
      e.warnings = o.value("warnings", std::vector<std::string>{});
      m.entries.push_back(std::move(e));
    }
  } catch (const json::exception &e) {
    throw ValidationError(std::string("bad manifest: ") + e.what());
  }
  return m;
}

uint64_t SlideSeed(uint64_t seed, const std::string &slide_id) {
  return seed ^ Fnv1a64(slide_id);
}

namespace {

struct Adapters {
  std::unique_ptr<TranslationAdapter> translation;
  std::unique_ptr<TtsAdapter> tts;
  std::unique_ptr<LipGenAdapter> lipgen;
};

// Runs one adapter call, tagging failures with the stage and slide.
template <typename Fn>
auto InStage(AdapterKind kind, const std::string &slide_id, Fn &&fn) {
  try {
    return fn();
  } catch (const AdapterError &e) {
    throw AdapterError(AdapterKindName(kind), slide_id, e.detail());
  } catch (const ValidationError &) {
    throw;
  } catch (const std::exception &e) {
    throw AdapterError(AdapterKindName(kind), slide_id, e.what());
  }
}

std::string SlideDirName(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "slides/%03zu", index);
  return buf;
}

class SlideWorker {
 public:
  SlideWorker(const SlideDeck &deck, const PipelineConfig &config,
              const textnorm::Normalizer &normalizer,
              const frontend::Lexicon &lexicon, const Adapters &adapters,
              const std::string &out_dir, const std::string &reference_dir,
              size_t reference_frames, uint64_t seed)
      : deck_(deck),
        config_(config),
        normalizer_(normalizer),
        lexicon_(lexicon),
        adapters_(adapters),
        out_dir_(out_dir),
        reference_dir_(reference_dir),
        reference_frames_(reference_frames),
        seed_(seed) {}

  TimelineEntry Run(size_t index) const {
    const Slide &slide = deck_.slides[index];
    const std::string rel_dir = SlideDirName(index);
    const fs::path dir = fs::path(out_dir_) / rel_dir;
    fs::create_directories(dir);

    TimelineEntry entry;
    entry.slide_id = slide.id;
    entry.slide_asset_path = slide.asset_path;

    auto normalized = normalizer_.Normalize(slide.annotation);
    for (const auto &d : normalized.diagnostics) {
      entry.warnings.push_back("offset " + std::to_string(d.offset) + ": " +
                               d.message);
    }
    std::string text = normalized.text;
    const bool translate = config_.translation_enabled &&
                           deck_.target_language.has_value() &&
                           *deck_.target_language != deck_.language;
    if (translate) {
      text = InStage(AdapterKind::kTranslation, slide.id, [&] {
        return adapters_.translation->Translate(text, deck_.language,
                                                *deck_.target_language,
                                                dir.string());
      });
      // Translation output is written-style text again.
      text = normalizer_.Normalize(text).text;
    }
    WriteFileBytes((dir / "text.txt").string(), text + "\n");

    const frontend::MixedTokenSeq tokens = frontend::EncodeInfer(text, lexicon_);
    if (tokens.tokens.empty()) {
      throw ValidationError("slide \"" + slide.id +
                            "\" has no speakable text after normalization");
    }
    const std::string tokens_path = (dir / "tokens.tsv").string();
    WriteFileBytes(tokens_path, frontend::DumpTokens(tokens));

    TtsRequest tts_req;
    tts_req.text = text;
    tts_req.tokens = &tokens;
    tts_req.tokens_path = tokens_path;
    tts_req.wav_path = (dir / "audio.wav").string();
    tts_req.mel_path = (dir / "mel.bin").string();
    tts_req.mel_config = &config_.mel;
    for (const auto &stale : {tts_req.wav_path, tts_req.mel_path,
                              mel::SidecarPath(tts_req.mel_path)}) {
      fs::remove(stale);
    }
    const TtsResult tts = InStage(AdapterKind::kTts, slide.id, [&] {
      return adapters_.tts->Synthesize(tts_req);
    });

    const mel::Waveform wave = mel::ReadWav(tts.wav_path);
    if (tts.mel_path) {
      const mel::MelSpectrogram provided = mel::ReadMel(*tts.mel_path);
      try {
        mel::CheckSameParameters(config_.mel, provided.config);
      } catch (const ValidationError &e) {
        throw ValidationError("slide \"" + slide.id + "\": " + e.what());
      }
    } else {
      mel::WriteMel(mel::ComputeMelSpectrogram(wave, config_.mel),
                    tts_req.mel_path);
    }
    entry.audio_path = rel_dir + "/audio.wav";
    entry.mel_path = rel_dir + "/mel.bin";
    entry.audio_duration = wave.duration_seconds();

    video::AugmentParams params;
    params.t = reference_frames_;
    params.t_prime =
        static_cast<size_t>(std::llround(entry.audio_duration * config_.fps));
    params.r = config_.ratio;
    params.seed = SlideSeed(seed_, slide.id);
    const video::FramePlan plan = video::Plan(params);
    if (auto diags = video::ValidatePlan(plan, params); !diags.empty()) {
      throw std::logic_error("frame plan failed validation: " + diags.front());
    }
    const std::string plan_path = (dir / "plan.json").string();
    WriteFileBytes(plan_path, video::PlanToJson(plan, params));
    entry.frame_plan_path = rel_dir + "/plan.json";
    entry.frame_count = plan.indices.size();

    LipGenRequest lip;
    lip.wav_path = tts.wav_path;
    lip.mel_path = tts_req.mel_path;
    lip.plan_path = plan_path;
    lip.plan = &plan;
    lip.reference_frames_dir = reference_dir_;
    lip.out_frames_dir = (dir / "frames").string();
    InStage(AdapterKind::kLipGen, slide.id,
            [&] { adapters_.lipgen->Generate(lip); });
    entry.talking_head_frames_path = rel_dir + "/frames";
    return entry;
  }

 private:
  const SlideDeck &deck_;
  const PipelineConfig &config_;
  const textnorm::Normalizer &normalizer_;
  const frontend::Lexicon &lexicon_;
  const Adapters &adapters_;
  std::string out_dir_;
  std::string reference_dir_;
  size_t reference_frames_;
  uint64_t seed_;
};

}  // namespace

TimelineManifest RunPipeline(const SlideDeck &deck, const PipelineConfig &config,
                             uint64_t seed, const std::string &out_dir,
                             int threads) {
  if (deck.slides.empty()) throw ValidationError("empty deck");
  config.mel.Validate();
  config.layout.Validate();

  textnorm::AbbreviationTable abbreviations = textnorm::AbbreviationTable::Default();
  if (!config.abbreviations_path.empty()) {
    abbreviations.Merge(textnorm::AbbreviationTable::Load(config.abbreviations_path));
  }
  const textnorm::Normalizer normalizer(std::move(abbreviations));
  const frontend::Lexicon lexicon = frontend::Lexicon::Load(config.lexicon_path);

  Adapters adapters;
  adapters.translation = MakeTranslationAdapter(config.translation);
  adapters.tts = MakeTtsAdapter(config.tts);
  adapters.lipgen = MakeLipGenAdapter(config.lipgen);
  const auto extractor = MakeFrameExtractAdapter(config.frame_extract);

  fs::create_directories(out_dir);
  const std::string reference_dir = (fs::path(out_dir) / "reference_frames").string();
  const size_t reference_frames = InStage(
      AdapterKind::kFrameExtract, "*",
      [&] { return extractor->Extract(config.reference_video, reference_dir); });
  {
    video::AugmentParams check;
    check.t = reference_frames;
    check.r = config.ratio;
    check.Validate();
  }

  const SlideWorker worker(deck, config, normalizer, lexicon, adapters, out_dir,
                           reference_dir, reference_frames, seed);
  const size_t n = deck.slides.size();
  std::vector<std::optional<TimelineEntry>> results(n);
  std::vector<std::exception_ptr> errors(n);
  const int requested = threads > 0 ? threads : std::max(config.threads, 1);
  const size_t pool_size = std::min<size_t>(static_cast<size_t>(requested), n);
  std::atomic<size_t> next{0};
  auto drain = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        results[i] = worker.Run(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (pool_size <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < pool_size; ++t) pool.emplace_back(drain);
    for (auto &th : pool) th.join();
  }
  for (const auto &err : errors) {
    if (err) std::rethrow_exception(err);
  }

  TimelineManifest manifest;
  manifest.fps = config.fps;
  double clock = 0.0;
  for (auto &r : results) {
    r->start_time = clock;
    clock += r->audio_duration;
    manifest.entries.push_back(std::move(*r));
  }
  manifest.total_duration = clock;

  WriteFileBytes((fs::path(out_dir) / "manifest.json").string(),
                 ManifestToJson(manifest));
  WriteFileBytes((fs::path(out_dir) / "compose.txt").string(),
                 ComposeScript(manifest, config.layout));
  return manifest;
}

namespace {

std::string Quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string SegmentName(size_t index, const char *suffix) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "segment_%03zu%s.mp4", index, suffix);
  return buf;
}

}  // namespace

std::string ComposeScript(const TimelineManifest &manifest,
                          const CompositionLayout &layout) {
  layout.Validate();
  if (manifest.entries.empty()) throw ValidationError("manifest has no entries");
  const std::string fps = Fixed(manifest.fps, 3);
  const std::string &tool = layout.tool;
  const bool single = manifest.entries.size() == 1;
  std::string out;
  out += "# lecgen composition script: one command per line, run from the\n";
  out += "# generation output directory\n";
  size_t step = 0;
  std::vector<std::string> segments;
  for (size_t i = 0; i < manifest.entries.size(); ++i) {
    const TimelineEntry &e = manifest.entries[i];
    const std::string video_only = SegmentName(i, "_video");
    const std::string muxed = single ? layout.output : SegmentName(i, "");
    const std::string frames = e.talking_head_frames_path + "/frame_%06d.png";
    out += "# step " + std::to_string(++step) + ": overlay slide " + e.slide_id +
           " [" + Fixed(e.start_time, 6) + ", " +
           Fixed(e.start_time + e.audio_duration, 6) + ")\n";
    out += tool + " -y -loop 1 -framerate " + fps + " -i " +
           Quote(e.slide_asset_path) + " -framerate " + fps + " -i " +
           Quote(frames) + " -filter_complex " +
           Quote("[0:v]scale=" + std::to_string(layout.slide_width) + ":" +
                 std::to_string(layout.slide_height) + "[bg];[1:v]scale=" +
                 std::to_string(layout.width) + ":" +
                 std::to_string(layout.height) + "[th];[bg][th]overlay=" +
                 std::to_string(layout.x) + ":" + std::to_string(layout.y)) +
           " -t " + Fixed(e.audio_duration, 6) +
           " -c:v libx264 -pix_fmt yuv420p " + Quote(video_only) + "\n";
    out += "# step " + std::to_string(++step) + ": mux audio for slide " +
           e.slide_id + "\n";
    out += tool + " -y -i " + Quote(video_only) + " -i " + Quote(e.audio_path) +
           " -c:v copy -c:a aac -shortest " + Quote(muxed) + "\n";
    segments.push_back(muxed);
  }
  if (!single) {
    out += "# step " + std::to_string(++step) + ": concatenate " +
           std::to_string(segments.size()) + " segments\n";
    std::string cmd = tool + " -y";
    std::string graph;
    for (size_t i = 0; i < segments.size(); ++i) {
      cmd += " -i " + Quote(segments[i]);
      graph += "[" + std::to_string(i) + ":v][" + std::to_string(i) + ":a]";
    }
    graph += "concat=n=" + std::to_string(segments.size()) + ":v=1:a=1[v][a]";
    cmd += " -filter_complex " + Quote(graph) + " -map \"[v]\" -map \"[a]\" " +
           Quote(layout.output);
    out += cmd + "\n";
  }
  return out;
}

}  // namespace lecgen::pipeline
