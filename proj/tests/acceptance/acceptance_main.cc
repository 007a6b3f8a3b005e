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

// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit status
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adaptation/adaptation.h"
#include "attn/penalty.h"
#include "common/error.h"
#include "common/matrix.h"
#include "common/rng.h"
#include "eval/mos.h"
#include "eval/similarity.h"
#include "frontend/encoder.h"
#include "frontend/lexicon.h"
#include "json.hpp"
#include "mel/mel.h"
#include "mel/wav_io.h"
#include "pipeline/deck.h"
#include "pipeline/pipeline.h"
#include "support/oracles.h"
#include "support/test_util.h"
#include "video/augment.h"

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Collects the first failure message of a criterion.
class Check {
 public:
  bool ok() const { return failure_.empty(); }
  const std::string &failure() const { return failure_; }
  bool Expect(bool cond, const std::string &message) {
    if (!cond && failure_.empty()) failure_ = message;
    return cond;
  }

 private:
  std::string failure_;
};

std::string Fmt(const char *format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char *format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome Finish(const Check &check, const std::string &summary) {
  return {check.ok(), check.ok() ? summary : check.failure()};
}

lecgen::video::AugmentParams Params(size_t t, size_t t_prime, double r,
                                    uint64_t seed) {
  lecgen::video::AugmentParams p;
  p.t = t;
  p.t_prime = t_prime;
  p.r = r;
  p.seed = seed;
  return p;
}

Outcome GapFreedom() {
  std::mt19937_64 gen(20260101);
  std::uniform_int_distribution<size_t> t_dist(10, 2000);
  std::uniform_real_distribution<double> r_dist(0.1, 0.4);
  Check check;
  size_t total = 0, turns = 0;
  const auto start = Clock::now();
  for (int i = 0; i < 1000 && check.ok(); ++i) {
    const size_t t = t_dist(gen);
    const double r = r_dist(gen);
    const auto plan = lecgen::video::Plan(Params(t, 10 * t, r, gen()));
    const auto &idx = plan.indices;
    const auto low_max =
        static_cast<size_t>(std::floor(r * static_cast<double>(t - 1) + 1e-9));
    const size_t high_min = t - 1 - low_max;
    check.Expect(idx.size() == 10 * t, Fmt("case %d: length %zu", i, idx.size()));
    total += idx.size();
    for (size_t k = 0; k < idx.size() && check.ok(); ++k) {
      if (idx[k] >= t) {
        check.Expect(false, Fmt("case %d: index %zu out of range", i, idx[k]));
      }
      if (k == 0) continue;
      const long d = static_cast<long>(idx[k]) - static_cast<long>(idx[k - 1]);
      if (d != 1 && d != -1) {
        check.Expect(false, Fmt("case %d: delta %ld at position %zu", i, d, k));
      }
      if (k + 1 < idx.size()) {
        const bool is_max = idx[k] > idx[k - 1] && idx[k] > idx[k + 1];
        const bool is_min = idx[k] < idx[k - 1] && idx[k] < idx[k + 1];
        if (is_max || is_min) ++turns;
        if (is_max && idx[k] < high_min) {
          check.Expect(false, Fmt("case %d: turn at %zu below high zone %zu", i,
                                  idx[k], high_min));
        }
        if (is_min && idx[k] > low_max) {
          check.Expect(false, Fmt("case %d: turn at %zu above low zone %zu", i,
                                  idx[k], low_max));
        }
      }
    }
    check.Expect(idx.empty() || idx.front() <= low_max,
                 Fmt("case %d: start %zu outside low zone", i, idx.front()));
  }
  const double elapsed = Seconds(start);
  check.Expect(elapsed < 5.0, Fmt("took %.2f s (limit 5 s)", elapsed));
  return Finish(check, Fmt("1000 plans, %zu indices, %zu turns, %.2f s", total,
                           turns, elapsed));
}

Outcome OracleEquivalence() {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<size_t> t_dist(10, 50);
  std::uniform_real_distribution<double> r_dist(0.1, 0.4);
  Check check;
  for (int i = 0; i < 200 && check.ok(); ++i) {
    const size_t t = t_dist(gen);
    const double r = r_dist(gen);
    const size_t t_prime = gen() % (20 * t);
    const uint64_t seed = gen();
    const auto plan = lecgen::video::Plan(Params(t, t_prime, r, seed));
    lecgen::Rng rng(seed);
    const auto brute = oracle::BruteForcePlan(
        t, t_prime, r, [&rng](size_t lo, size_t hi) {
          return static_cast<size_t>(rng.UniformInt(static_cast<int64_t>(lo),
                                                    static_cast<int64_t>(hi)));
        });
    check.Expect(plan.indices == brute,
                 Fmt("case %d (t=%zu r=%.4f t'=%zu) differs", i, t, r, t_prime));
  }
  return Finish(check, "200 cases with t <= 50 identical to the array-reversing walk");
}

Outcome Penalty() {
  Check check;
  for (size_t n : {1u, 2u, 10u, 100u, 257u}) {
    const lecgen::attn::PenaltyMatrix pen(n, n);
    for (size_t i = 0; i < n; ++i) {
      check.Expect(std::fabs(pen(i, i)) <= 1e-12,
                   Fmt("P[%zu][%zu] = %g for N=T=%zu", i, i, pen(i, i), n));
    }
  }
  // Row n/N = 1, column t/T = 1/2.
  const lecgen::attn::PenaltyMatrix half(4, 2, 3.5);
  const double want = 1.0 - std::exp(-3.0625);
  check.Expect(std::fabs(half(3, 0) - want) <= 1e-9,
               Fmt("offset 0.5: %.12f vs %.12f", half(3, 0), want));

  for (size_t n : {1u, 8u, 64u}) {
    lecgen::Matrix eye(n, n);
    for (size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
    const double loss = lecgen::attn::AttentionLoss(
        lecgen::attn::AttentionMatrix(eye), lecgen::attn::PenaltyMatrix(n, n));
    check.Expect(loss == 0.0, Fmt("diagonal loss %g for N=%zu", loss, n));
  }

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  size_t compared = 0;
  for (auto [N, T] : {std::pair<size_t, size_t>{5, 7}, {12, 9}, {20, 31}}) {
    const lecgen::attn::PenaltyMatrix pen(N, T);
    lecgen::Matrix att(N, T);
    for (auto &v : att.data()) v = u(gen);
    const auto grad = lecgen::attn::AttentionLossGradient(att, pen);
    const double h = 1e-4;
    for (size_t n = 0; n < N; ++n) {
      for (size_t t = 0; t < T; ++t) {
        lecgen::Matrix plus = att, minus = att;
        plus(n, t) += h;
        minus(n, t) -= h;
        const double fd = (lecgen::attn::AttentionLoss(plus, pen) -
                           lecgen::attn::AttentionLoss(minus, pen)) /
                          (2 * h);
        const double analytic = pen(n, t) / static_cast<double>(N * T);
        check.Expect(std::fabs(grad(n, t) - analytic) <= 1e-15 * analytic,
                     Fmt("gradient (%zu,%zu) %.17g != pen/(N*T) %.17g", n, t,
                         grad(n, t), analytic));
        check.Expect(std::fabs(fd - analytic) <=
                         1e-6 * std::max(std::fabs(analytic), 1e-6),
                     Fmt("finite difference (%zu,%zu) %.12g vs %.12g", n, t,
                         fd, analytic));
        ++compared;
      }
    }
  }
  return Finish(check, Fmt("diagonal zero, offset 0.5 = %.9f, diagonal loss 0, "
                           "%zu gradient entries match",
                           want, compared));
}

Outcome FrontEnd() {
  Check check;
  const auto lex =
      lecgen::frontend::Lexicon::Load(testutil::DataPath("lexicon.dict"));
  const std::vector<std::string> known = {
      "hello", "world", "the", "welcome", "to", "lecture", "on", "speech",
      "synthesis", "doctor", "smith", "slides", "today", "video", "thank", "you"};
  std::mt19937_64 gen(4242);
  auto oov_word = [&]() {
    for (;;) {
      std::string w;
      const size_t len = 3 + gen() % 7;
      for (size_t i = 0; i < len; ++i) w.push_back(static_cast<char>('a' + gen() % 26));
      if (lex.Lookup(w) == nullptr) return w;
    }
  };
  std::vector<std::string> words;
  std::string corpus;
  const char *punct[] = {",", ".", "?", "!"};
  for (int i = 0; i < 1000; ++i) {
    words.push_back(gen() % 3 == 0 ? oov_word() : known[gen() % known.size()]);
    corpus += words.back();
    corpus += gen() % 10 == 0 ? std::string(punct[gen() % 4]) + " " : " ";
  }

  const auto infer = lecgen::frontend::EncodeInfer(corpus, lex);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto train = lecgen::frontend::EncodeTrain(corpus, lex, 1.0, seed);
    check.Expect(train.tokens == infer.tokens,
                 Fmt("train(p=1, seed=%llu) differs from infer",
                     static_cast<unsigned long long>(seed)));

    // Per-word groups of tokens between word boundaries.
    const auto half = lecgen::frontend::EncodeTrain(corpus, lex, 0.5, seed);
    for (const auto *seq : {&train, &half}) {
      std::vector<std::vector<const lecgen::frontend::MixedToken *>> groups(1);
      for (const auto &tok : seq->tokens) {
        if (tok.kind == lecgen::frontend::TokenKind::kWordBoundary) {
          groups.emplace_back();
        } else if (tok.kind != lecgen::frontend::TokenKind::kPunctuation) {
          groups.back().push_back(&tok);
        }
      }
      if (!check.Expect(groups.size() == words.size(),
                        Fmt("%zu token groups for %zu words", groups.size(),
                            words.size()))) {
        break;
      }
      for (size_t w = 0; w < words.size(); ++w) {
        if (lex.Lookup(words[w]) != nullptr) continue;
        std::string spelled;
        bool chars = true;
        for (const auto *tok : groups[w]) {
          chars &= tok->kind == lecgen::frontend::TokenKind::kCharacter;
          spelled += tok->symbol;
        }
        check.Expect(chars && spelled == words[w],
                     "OOV word '" + words[w] + "' not emitted as characters");
      }
    }
  }

  std::string in_lexicon;
  for (int i = 0; i < 10000; ++i) {
    in_lexicon += known[gen() % known.size()];
    in_lexicon += ' ';
  }
  const auto half = lecgen::frontend::EncodeTrain(in_lexicon, lex, 0.5, 2026);
  const double rate = static_cast<double>(half.replaced_words) / 10000.0;
  check.Expect(half.lexicon_words == 10000,
               Fmt("%zu lexicon words counted", half.lexicon_words));
  check.Expect(rate >= 0.48 && rate <= 0.52, Fmt("replacement rate %.4f", rate));
  return Finish(check, Fmt("infer == train(p=1) for 20 seeds over 1000 words; "
                           "p=0.5 rate %.4f; OOV words spelled out",
                           rate));
}

Outcome BalancedBatches() {
  Check check;
  std::mt19937_64 gen(555);
  size_t full_batches = 0;
  for (int d = 0; d < 500 && check.ok(); ++d) {
    const size_t speakers = 2 + gen() % 15;
    std::vector<lecgen::adapt::UtteranceRecord> records;
    for (size_t s = 0; s < speakers; ++s) {
      const size_t n = 1 + gen() % 60;
      for (size_t i = 0; i < n; ++i) {
        lecgen::adapt::UtteranceRecord r;
        r.id = Fmt("d%d_s%zu_%zu", d, s, i);
        r.speaker = Fmt("spk%zu", s);
        r.duration = 1.0;
        records.push_back(r);
      }
    }
    std::shuffle(records.begin(), records.end(), gen);
    const size_t batch_size = 1 + gen() % 64;
    const auto plan = lecgen::adapt::BalancedBatches(records, batch_size, gen());
    for (const auto &batch : plan.batches) {
      if (!batch.full) continue;
      ++full_batches;
      std::map<std::string, size_t> counts;
      for (size_t s = 0; s < speakers; ++s) counts[Fmt("spk%zu", s)] = 0;
      for (size_t i : batch.records) ++counts[records[i].speaker];
      size_t lo = SIZE_MAX, hi = 0;
      for (const auto &[spk, c] : counts) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      check.Expect(batch.records.size() == batch_size,
                   Fmt("dataset %d: full batch of %zu records", d,
                       batch.records.size()));
      check.Expect(hi - lo <= 1, Fmt("dataset %d: per-speaker spread %zu", d,
                                     hi - lo));
    }
  }
  std::vector<lecgen::adapt::UtteranceRecord> forty(40);
  for (size_t i = 0; i < forty.size(); ++i) {
    forty[i].id = Fmt("u%zu", i);
    forty[i].speaker = "target";
    forty[i].duration = 7.5;
  }
  const auto split = lecgen::adapt::SplitAdaptationSet(forty, 0.2, 1);
  check.Expect(split.test.size() == 8 && split.adapt.size() == 32,
               Fmt("40-record split gave %zu test / %zu adapt",
                   split.test.size(), split.adapt.size()));
  return Finish(check, Fmt("500 datasets, %zu full batches balanced; "
                           "40 records at 0.2 -> 8 test",
                           full_batches));
}

lecgen::mel::Waveform Tone(double hz, double amplitude, size_t n) {
  lecgen::mel::Waveform w;
  w.sample_rate = 16000;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    w.samples[i] = static_cast<float>(
        amplitude * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) /
                             16000.0));
  }
  return w;
}

Outcome MelDsp() {
  Check check;
  const lecgen::mel::MelConfig cfg;
  lecgen::mel::Waveform silence;
  silence.sample_rate = cfg.sample_rate;
  silence.samples.assign(12345, 0.0f);
  const auto quiet = lecgen::mel::ComputeMelSpectrogram(silence, cfg);
  for (double v : quiet.frames.data()) {
    check.Expect(v == std::log(cfg.floor_amplitude), Fmt("silence entry %g", v));
  }

  const auto tone = Tone(440.0, 0.5, 8000);
  const auto mel = lecgen::mel::ComputeMelSpectrogram(tone, cfg);
  const size_t analytic =
      oracle::NearestMelBand(440.0, cfg.bands, cfg.fmin, cfg.fmax);
  const std::vector<double> x(tone.samples.begin(), tone.samples.end());
  long worst = 0;
  for (size_t f = 0; f < mel.frames.rows(); f += 9) {
    const auto row = mel.frames.row(f);
    const auto peak =
        static_cast<size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    const auto ref = oracle::MelFrame(x, f * cfg.hop, cfg.win, cfg.n_fft,
                                      cfg.sample_rate, cfg.bands, cfg.fmin,
                                      cfg.fmax, cfg.floor_amplitude);
    const auto ref_peak =
        static_cast<size_t>(std::max_element(ref.begin(), ref.end()) - ref.begin());
    worst = std::max(worst, std::labs(static_cast<long>(peak) -
                                      static_cast<long>(analytic)));
    check.Expect(peak == ref_peak,
                 Fmt("frame %zu: peak band %zu, direct DFT peak %zu", f, peak,
                     ref_peak));
    for (size_t b = 0; b < ref.size(); ++b) {
      check.Expect(std::fabs(row[b] - ref[b]) < 1e-6,
                   Fmt("frame %zu band %zu: %.9f vs direct DFT %.9f", f, b,
                       row[b], ref[b]));
    }
  }
  check.Expect(worst <= 1, Fmt("440 Hz peak %ld bands from analytic band %zu",
                               worst, analytic));

  const auto quieter = lecgen::mel::ComputeMelSpectrogram(Tone(440.0, 0.25, 8000), cfg);
  size_t shifted = 0;
  for (size_t i = 0; i < mel.frames.size(); ++i) {
    if (quieter.frames.data()[i] <= cfg.log_floor()) continue;
    ++shifted;
    const double d = mel.frames.data()[i] - quieter.frames.data()[i];
    check.Expect(std::fabs(d - std::log(2.0)) <= 1e-4,
                 Fmt("entry %zu shifted by %.8f", i, d));
  }
  check.Expect(shifted > 0, "no entries above the floor");

  std::mt19937_64 gen(8);
  for (int i = 0; i < 100; ++i) {
    const size_t len = cfg.win + gen() % 30000;
    lecgen::mel::Waveform w;
    w.sample_rate = cfg.sample_rate;
    w.samples.assign(len, 0.0f);
    const size_t rows = lecgen::mel::ComputeMelSpectrogram(w, cfg).frames.rows();
    const size_t want = oracle::EnumerateFrames(len, cfg.win, cfg.hop);
    check.Expect(rows == want && lecgen::mel::FrameCount(len, cfg.win, cfg.hop) == want,
                 Fmt("length %zu: %zu frames, enumeration %zu", len, rows, want));
  }
  return Finish(check, Fmt("silence at floor; 440 Hz peak within %ld of band %zu; "
                           "doubling shifts %zu entries by log 2; 100 frame counts",
                           worst, analytic, shifted));
}

Outcome Evalkit() {
  Check check;
  std::mt19937_64 gen(256);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> a(lecgen::eval::kEmbeddingDim), b(a.size());
    for (auto &v : a) v = normal(gen);
    for (auto &v : b) v = normal(gen);
    const double d =
        std::fabs(lecgen::eval::CosineSimilarity(a, b) - oracle::Cosine(a, b));
    worst = std::max(worst, d);
  }
  check.Expect(worst <= 1e-9, Fmt("cosine deviates by %g", worst));

  std::vector<lecgen::eval::SpeakerEmbedding> x;
  for (int i = 0; i < 40; ++i) {
    std::vector<double> v(lecgen::eval::kEmbeddingDim);
    for (auto &e : v) e = normal(gen);
    x.emplace_back(std::move(v));
  }
  const double self = lecgen::eval::MeanSpeakerSimilarity(x, x);
  check.Expect(self == 1.0 && Fmt("%.3f", self) == "1.000",
               Fmt("self similarity %.17g", self));

  const std::regex shape(R"(^\d+\.\d\d±\d+\.\d\d$)");
  std::string example;
  for (int i = 0; i < 100; ++i) {
    std::vector<lecgen::eval::MosSample> samples;
    std::vector<double> scores;
    const size_t n = 2 + gen() % 400;
    for (size_t k = 0; k < n; ++k) {
      const int s = static_cast<int>(1 + gen() % 5);
      samples.push_back({Fmt("r%zu", k % 40), Fmt("i%zu", k), s});
      scores.push_back(s);
    }
    const auto got = lecgen::eval::MosWithCi(samples, 0.95);
    const auto want = oracle::TInterval(scores, 0.95);
    check.Expect(std::fabs(got.mean - want.mean) <= 1e-9 &&
                     std::fabs(got.half_width - want.half_width) <= 1e-9,
                 Fmt("set %d: %.12f±%.12f vs oracle %.12f±%.12f", i, got.mean,
                     got.half_width, want.mean, want.half_width));
    const std::string text = got.Format();
    check.Expect(std::regex_match(text, shape), "bad MOS format: " + text);
    check.Expect(text == Fmt("%.2f±%.2f", want.mean, want.half_width),
                 "MOS text " + text + " disagrees with the oracle");
    if (i == 0) example = text;
  }
  return Finish(check, Fmt("cosine max error %.2g; self similarity %.3f; "
                           "100 MOS intervals match, e.g. %s",
                           worst, self, example.c_str()));
}

Outcome EndToEnd() {
  Check check;
  const auto start = Clock::now();
  testutil::TempDir work;
  std::vector<std::string> manifests;
  try {
    const auto deck = lecgen::pipeline::LoadDeck(testutil::DataPath("deck3.json"));
    const auto config =
        lecgen::pipeline::LoadPipelineConfig(testutil::DataPath("pipeline.json"));
    const std::pair<const char *, int> runs[] = {{"a", 1}, {"b", 1}, {"c", 8}};
    for (const auto &[name, threads] : runs) {
      lecgen::pipeline::RunPipeline(deck, config, 2026, work / name, threads);
      manifests.push_back(lecgen::ReadFileBytes(work / (std::string(name) + "/manifest.json")));
    }
  } catch (const std::exception &e) {
    check.Expect(false, std::string("pipeline failed: ") + e.what());
    return Finish(check, "");
  }
  check.Expect(manifests[0] == manifests[1], "two 1-thread runs differ");
  check.Expect(manifests[0] == manifests[2], "1-thread and 8-thread runs differ");

  const auto j = nlohmann::json::parse(manifests[0]);
  const auto &entries = j.at("entries");
  check.Expect(entries.size() == 3, Fmt("%zu entries", entries.size()));
  double clock = 0.0, worst = 0.0;
  for (const auto &e : entries) {
    worst = std::max(worst, std::fabs(e.at("start_time").get<double>() - clock));
    clock += e.at("audio_duration").get<double>();
  }
  worst = std::max(worst, std::fabs(j.at("total_duration").get<double>() - clock));
  check.Expect(worst <= 1e-6, Fmt("contiguity off by %g s", worst));
  const double elapsed = Seconds(start);
  check.Expect(elapsed < 10.0, Fmt("took %.2f s (limit 10 s)", elapsed));
  return Finish(check, Fmt("3 slides, %zu-byte manifest identical across runs "
                           "and 1/8 threads; contiguity error %.1g s; %.2f s",
                           manifests[0].size(), worst, elapsed));
}

}  // namespace

int main() {
  const std::pair<const char *, std::function<Outcome()>> criteria[] = {
      {"frame-plan gap-freedom", GapFreedom},
      {"frame-plan oracle equivalence", OracleEquivalence},
      {"penalty matrix", Penalty},
      {"front-end", FrontEnd},
      {"balanced batches", BalancedBatches},
      {"mel dsp", MelDsp},
      {"evalkit", Evalkit},
      {"end-to-end", EndToEnd},
  };
  int failures = 0;
  for (const auto &[name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name,
                outcome.detail.c_str());
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
