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

// Command-line front end. Links only the public C interface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lecgen/lecgen.h"

namespace {

constexpr int kExitUsage = 1;

class Owned {
 public:
  Owned() = default;
  ~Owned() { lecgen_string_free(s_); }
  Owned(const Owned &) = delete;
  Owned &operator=(const Owned &) = delete;
  char **out() { return &s_; }
  std::string str() const { return s_ == nullptr ? "" : s_; }

 private:
  char *s_ = nullptr;
};

int Report(lecgen_status status) {
  if (status != LECGEN_OK) {
    std::cerr << "lecgen: " << lecgen_last_error() << "\n";
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"lecgen: lecture-video generation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lecgen_version());
  int rc = 0;

  // generate
  std::string deck, config, out_dir;
  uint64_t seed = 0;
  int threads = 0;
  auto *generate = app.add_subcommand("generate", "Run the end-to-end pipeline");
  generate->add_option("--deck", deck, "Slide deck JSON")->required();
  generate->add_option("--config", config, "Pipeline config JSON")->required();
  generate->add_option("--seed", seed, "Random seed")->required();
  generate->add_option("--out", out_dir, "Output directory")->required();
  generate->add_option("--threads", threads, "Worker threads (0: config)");
  generate->callback([&] {
    Owned manifest;
    rc = Report(lecgen_generate(deck.c_str(), config.c_str(), seed,
                                out_dir.c_str(), threads, manifest.out()));
    if (rc == 0) std::cout << manifest.str();
  });

  // plan-video
  size_t t = 0, t_prime = 0;
  double ratio = 0.2;
  std::string plan_out;
  auto *plan = app.add_subcommand("plan-video", "Build a frame plan");
  plan->add_option("--t", t, "Reference frame count")->required();
  plan->add_option("--t-prime", t_prime, "Target frame count")->required();
  plan->add_option("--r", ratio, "Turning-zone ratio")->capture_default_str();
  plan->add_option("--seed", seed, "Random seed")->required();
  plan->add_option("--out", plan_out, "Write the plan JSON here");
  plan->callback([&] {
    lecgen_plan *p = nullptr;
    rc = Report(lecgen_plan_video(t, t_prime, ratio, seed, &p));
    if (rc != 0) return;
    Owned json;
    rc = Report(lecgen_plan_to_json(p, json.out()));
    lecgen_plan_free(p);
    if (rc != 0) return;
    if (plan_out.empty()) {
      std::cout << json.str();
    } else {
      std::ofstream(plan_out, std::ios::binary) << json.str();
    }
  });

  // penalty
  size_t n_len = 0, t_len = 0;
  double sharpness = 3.5;
  std::string penalty_out;
  auto *penalty = app.add_subcommand("penalty", "Write a guided-attention penalty matrix");
  penalty->add_option("--n", n_len, "Encoder length")->required();
  penalty->add_option("--t", t_len, "Decoder length")->required();
  penalty->add_option("--k", sharpness, "Sharpness")->capture_default_str();
  penalty->add_option("--out", penalty_out,
                      "Output file (.mtx for text, otherwise binary)")
      ->required();
  penalty->callback([&] {
    lecgen_matrix *m = nullptr;
    rc = Report(lecgen_penalty_matrix(n_len, t_len, sharpness, &m));
    if (rc != 0) return;
    rc = Report(lecgen_matrix_write(m, penalty_out.c_str()));
    lecgen_matrix_free(m);
    if (rc == 0) {
      std::cout << n_len << "x" << t_len << " penalty matrix written to "
                << penalty_out << "\n";
    }
  });

  // encode
  std::string text, lexicon_path;
  std::optional<double> train_p;
  auto *encode = app.add_subcommand("encode", "Encode text into mixed tokens");
  encode->add_option("--text", text, "Normalized text")->required();
  encode->add_option("--lexicon", lexicon_path, "Pronunciation lexicon")
      ->required();
  encode->add_option("--train-p", train_p,
                     "Training mode: phoneme replacement probability");
  encode->add_option("--seed", seed, "Random seed for training mode");
  encode->callback([&] {
    lecgen_lexicon *lex = nullptr;
    rc = Report(lecgen_lexicon_load(lexicon_path.c_str(), &lex));
    if (rc != 0) return;
    lecgen_tokens *tokens = nullptr;
    rc = Report(train_p ? lecgen_encode_train(lex, text.c_str(), *train_p,
                                              seed, &tokens)
                        : lecgen_encode_infer(lex, text.c_str(), &tokens));
    lecgen_lexicon_free(lex);
    if (rc != 0) return;
    Owned dump;
    rc = Report(lecgen_tokens_dump(tokens, dump.out()));
    lecgen_tokens_free(tokens);
    if (rc == 0) std::cout << dump.str();
  });

  // mel
  std::string wav, mel_out;
  auto *mel = app.add_subcommand("mel", "Compute a log-mel spectrogram");
  mel->add_option("--wav", wav, "Input WAV")->required();
  mel->add_option("--out", mel_out, "Output matrix (sidecar: <out>.json)")
      ->required();
  mel->add_option("--threads", threads, "Worker threads");
  mel->callback([&] {
    size_t frames = 0, bands = 0;
    rc = Report(lecgen_mel_from_wav(wav.c_str(), mel_out.c_str(), threads,
                                    &frames, &bands));
    if (rc == 0) {
      std::cout << frames << " frames x " << bands << " bands written to "
                << mel_out << "\n";
    }
  });

  // eval
  auto *eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);
  std::string csv;
  double confidence = 0.95;
  auto *mos = eval->add_subcommand("mos", "Mean opinion score with CI");
  mos->add_option("--csv", csv, "rater,item,score CSV")->required();
  mos->add_option("--confidence", confidence, "Confidence level")
      ->capture_default_str();
  mos->callback([&] {
    Owned formatted;
    rc = Report(lecgen_mos_from_csv(csv.c_str(), confidence, nullptr, nullptr,
                                    nullptr, formatted.out()));
    if (rc == 0) std::cout << formatted.str() << "\n";
  });
  std::string truth, synth, pairing = "paired";
  auto *sim = eval->add_subcommand("speaker-sim", "Mean speaker similarity");
  sim->add_option("--truth", truth, "Ground-truth embedding directory")
      ->required();
  sim->add_option("--synth", synth, "Synthesized embedding directory")
      ->required();
  sim->add_option("--pairing", pairing, "paired or centroid")
      ->check(CLI::IsMember({"paired", "centroid"}))
      ->capture_default_str();
  sim->callback([&] {
    double value = 0.0;
    rc = Report(lecgen_speaker_similarity_dirs(
        truth.c_str(), synth.c_str(),
        pairing == "paired" ? LECGEN_PAIRING_PAIRED
                            : LECGEN_PAIRING_MEAN_CENTROID,
        &value));
    if (rc == 0) std::printf("%.3f\n", value);
  });

  // normalize
  std::string abbreviations;
  auto *normalize = app.add_subcommand("normalize", "Normalize raw text");
  normalize->add_option("--text", text, "Raw text")->required();
  normalize->add_option("--abbreviations", abbreviations,
                        "Extra abbreviation table");
  normalize->callback([&] {
    Owned out, diags;
    rc = Report(lecgen_normalize(
        text.c_str(), abbreviations.empty() ? nullptr : abbreviations.c_str(),
        out.out(), diags.out()));
    if (rc != 0) return;
    std::cout << out.str() << "\n";
    std::istringstream lines(diags.str());
    for (std::string line; std::getline(lines, line);) {
      std::cerr << "warning: offset " << line << "\n";
    }
  });

  // loss
  std::string attention;
  auto *loss = app.add_subcommand("loss", "Guided-attention loss of an alignment");
  loss->add_option("--attention", attention, "Attention matrix file")
      ->required();
  loss->add_option("--k", sharpness, "Sharpness")->capture_default_str();
  loss->callback([&] {
    lecgen_matrix *m = nullptr;
    rc = Report(lecgen_matrix_read(attention.c_str(), &m));
    if (rc != 0) return;
    double value = 0.0, diag = 0.0;
    rc = Report(lecgen_attention_loss(m, sharpness, &value));
    if (rc == 0) rc = Report(lecgen_diagonality_score(m, &diag));
    lecgen_matrix_free(m);
    if (rc == 0) std::printf("loss %.9g\ndiagonality %.9g\n", value, diag);
  });

  // adapt
  auto *adapt = app.add_subcommand("adapt", "Speaker-adaptation data plumbing");
  adapt->require_subcommand(1);
  std::string records;
  size_t batch_size = 0;
  double test_fraction = 0.2;
  auto *batches = adapt->add_subcommand("batches", "Speaker-balanced batches");
  batches->add_option("--records", records, "Utterance records (JSONL)")
      ->required();
  batches->add_option("--batch-size", batch_size, "Batch size")->required();
  batches->add_option("--seed", seed, "Random seed")->required();
  batches->callback([&] {
    Owned json;
    rc = Report(lecgen_adapt_batches(records.c_str(), batch_size, seed,
                                     json.out()));
    if (rc == 0) std::cout << json.str();
  });
  auto *split = adapt->add_subcommand("split", "Adaptation/test split");
  split->add_option("--records", records, "Utterance records (JSONL)")
      ->required();
  split->add_option("--test-fraction", test_fraction, "Test fraction")
      ->capture_default_str();
  split->add_option("--seed", seed, "Random seed")->required();
  split->callback([&] {
    Owned json;
    rc = Report(lecgen_adapt_split(records.c_str(), test_fraction, seed,
                                   json.out()));
    if (rc == 0) std::cout << json.str();
  });
  std::string adapt_config;
  auto *schedule = adapt->add_subcommand("schedule", "Training stage manifests");
  schedule->add_option("--config", adapt_config, "Adaptation config JSON");
  schedule->callback([&] {
    Owned json;
    rc = Report(lecgen_adapt_schedule(
        adapt_config.empty() ? nullptr : adapt_config.c_str(), json.out()));
    if (rc == 0) std::cout << json.str();
  });

  // compose
  std::string manifest_path, layout_json;
  auto *compose = app.add_subcommand("compose", "Emit the composition script");
  compose->add_option("--manifest", manifest_path, "manifest.json")->required();
  compose->add_option("--layout", layout_json, "Layout JSON object");
  compose->callback([&] {
    Owned script;
    rc = Report(lecgen_compose(
        manifest_path.c_str(), layout_json.empty() ? nullptr : layout_json.c_str(),
        script.out()));
    if (rc == 0) std::cout << script.str();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  return rc;
}
