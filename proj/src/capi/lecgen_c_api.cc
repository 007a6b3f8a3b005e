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

#include "lecgen/lecgen.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <string>

#include "adaptation/adaptation.h"
#include "attn/penalty.h"
#include "common/error.h"
#include "common/matrix.h"
#include "eval/mos.h"
#include "eval/similarity.h"
#include "frontend/encoder.h"
#include "frontend/lexicon.h"
#include "json.hpp"
#include "mel/mel.h"
#include "mel/wav_io.h"
#include "pipeline/deck.h"
#include "pipeline/pipeline.h"
#include "textnorm/normalizer.h"
#include "textnorm/number_words.h"
#include "video/augment.h"

struct lecgen_lexicon {
  lecgen::frontend::Lexicon lexicon;
};

struct lecgen_tokens {
  lecgen::frontend::MixedTokenSeq seq;
};

struct lecgen_matrix {
  lecgen::Matrix m;
};

struct lecgen_plan {
  lecgen::video::FramePlan plan;
  lecgen::video::AugmentParams params;
};

namespace {

thread_local std::string g_last_error;

lecgen_status Fail(lecgen_status status, const std::string &message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
lecgen_status Guard(Fn &&fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const lecgen::Error &e) {
    switch (e.kind()) {
      case lecgen::ErrorKind::kUsage:
        return Fail(LECGEN_ERR_USAGE, e.what());
      case lecgen::ErrorKind::kValidation:
        return Fail(LECGEN_ERR_VALIDATION, e.what());
      case lecgen::ErrorKind::kAdapter:
        return Fail(LECGEN_ERR_ADAPTER, e.what());
    }
    return Fail(LECGEN_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc &) {
    return Fail(LECGEN_ERR_INTERNAL, "out of memory");
  } catch (const std::filesystem::filesystem_error &e) {
    return Fail(LECGEN_ERR_VALIDATION, e.what());
  } catch (const std::exception &e) {
    return Fail(LECGEN_ERR_INTERNAL, e.what());
  }
}

char *Dup(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

void Require(const void *p, const char *name) {
  if (p == nullptr) {
    throw lecgen::UsageError(std::string(name) + " must not be NULL");
  }
}

bool IsTextMatrixPath(const std::string &path) {
  return std::filesystem::path(path).extension() == ".mtx";
}

std::string IdsJson(const std::vector<lecgen::adapt::UtteranceRecord> &records,
                    const std::vector<size_t> &indices) {
  nlohmann::ordered_json ids = nlohmann::ordered_json::array();
  for (size_t i : indices) ids.push_back(records[i].id);
  return ids.dump();
}

}  // namespace

extern "C" {

const char *lecgen_version(void) { return "0.1.0"; }

const char *lecgen_last_error(void) { return g_last_error.c_str(); }

void lecgen_string_free(char *s) { std::free(s); }

lecgen_status lecgen_normalize(const char *text, const char *abbreviations_path,
                               char **out_text, char **out_diagnostics) {
  return Guard([&] {
    Require(text, "text");
    Require(out_text, "out_text");
    auto table = lecgen::textnorm::AbbreviationTable::Default();
    if (abbreviations_path != nullptr) {
      table.Merge(lecgen::textnorm::AbbreviationTable::Load(abbreviations_path));
    }
    const lecgen::textnorm::Normalizer normalizer(std::move(table));
    const auto result = normalizer.Normalize(text);
    std::string diags;
    for (const auto &d : result.diagnostics) {
      diags += std::to_string(d.offset) + "\t" + d.message + "\n";
    }
    *out_text = Dup(result.text);
    if (out_diagnostics != nullptr) *out_diagnostics = Dup(diags);
    return LECGEN_OK;
  });
}

lecgen_status lecgen_number_to_words(uint64_t n, char **out) {
  return Guard([&] {
    Require(out, "out");
    *out = Dup(lecgen::textnorm::NumberToWords(n));
    return LECGEN_OK;
  });
}

lecgen_status lecgen_lexicon_load(const char *path, lecgen_lexicon **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new lecgen_lexicon{lecgen::frontend::Lexicon::Load(path)};
    return LECGEN_OK;
  });
}

size_t lecgen_lexicon_size(const lecgen_lexicon *lexicon) {
  return lexicon == nullptr ? 0 : lexicon->lexicon.size();
}

void lecgen_lexicon_free(lecgen_lexicon *lexicon) { delete lexicon; }

lecgen_status lecgen_encode_infer(const lecgen_lexicon *lexicon,
                                  const char *text, lecgen_tokens **out) {
  return Guard([&] {
    Require(lexicon, "lexicon");
    Require(text, "text");
    Require(out, "out");
    *out = new lecgen_tokens{
        lecgen::frontend::EncodeInfer(text, lexicon->lexicon)};
    return LECGEN_OK;
  });
}

lecgen_status lecgen_encode_train(const lecgen_lexicon *lexicon,
                                  const char *text, double p, uint64_t seed,
                                  lecgen_tokens **out) {
  return Guard([&] {
    Require(lexicon, "lexicon");
    Require(text, "text");
    Require(out, "out");
    *out = new lecgen_tokens{
        lecgen::frontend::EncodeTrain(text, lexicon->lexicon, p, seed)};
    return LECGEN_OK;
  });
}

size_t lecgen_tokens_count(const lecgen_tokens *tokens) {
  return tokens == nullptr ? 0 : tokens->seq.tokens.size();
}

lecgen_status lecgen_tokens_get(const lecgen_tokens *tokens, size_t index,
                                lecgen_token_kind *kind, const char **symbol,
                                int32_t *id) {
  return Guard([&] {
    Require(tokens, "tokens");
    if (index >= tokens->seq.tokens.size()) {
      throw lecgen::UsageError("token index out of range");
    }
    const auto &tok = tokens->seq.tokens[index];
    if (kind != nullptr) *kind = static_cast<lecgen_token_kind>(tok.kind);
    if (symbol != nullptr) *symbol = tok.symbol.c_str();
    if (id != nullptr) *id = tok.id;
    return LECGEN_OK;
  });
}

size_t lecgen_tokens_replaced_words(const lecgen_tokens *tokens) {
  return tokens == nullptr ? 0 : tokens->seq.replaced_words;
}

lecgen_status lecgen_tokens_dump(const lecgen_tokens *tokens, char **out) {
  return Guard([&] {
    Require(tokens, "tokens");
    Require(out, "out");
    *out = Dup(lecgen::frontend::DumpTokens(tokens->seq));
    return LECGEN_OK;
  });
}

void lecgen_tokens_free(lecgen_tokens *tokens) { delete tokens; }

lecgen_status lecgen_matrix_read(const char *path, lecgen_matrix **out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new lecgen_matrix{IsTextMatrixPath(path)
                                 ? lecgen::ReadMatrixText(path)
                                 : lecgen::ReadMatrixBinary(path)};
    return LECGEN_OK;
  });
}

lecgen_status lecgen_matrix_write(const lecgen_matrix *m, const char *path) {
  return Guard([&] {
    Require(m, "matrix");
    Require(path, "path");
    if (IsTextMatrixPath(path)) {
      lecgen::WriteMatrixText(m->m, path);
    } else {
      lecgen::WriteMatrixBinary(m->m, path);
    }
    return LECGEN_OK;
  });
}

size_t lecgen_matrix_rows(const lecgen_matrix *m) {
  return m == nullptr ? 0 : m->m.rows();
}

size_t lecgen_matrix_cols(const lecgen_matrix *m) {
  return m == nullptr ? 0 : m->m.cols();
}

const double *lecgen_matrix_data(const lecgen_matrix *m) {
  return m == nullptr ? nullptr : m->m.data().data();
}

void lecgen_matrix_free(lecgen_matrix *m) { delete m; }

lecgen_status lecgen_penalty_matrix(size_t encoder_len, size_t decoder_len,
                                    double sharpness, lecgen_matrix **out) {
  return Guard([&] {
    Require(out, "out");
    lecgen::attn::PenaltyMatrix pen(encoder_len, decoder_len, sharpness);
    *out = new lecgen_matrix{pen.values()};
    return LECGEN_OK;
  });
}

lecgen_status lecgen_attention_loss(const lecgen_matrix *attention,
                                    double sharpness, double *out_loss) {
  return Guard([&] {
    Require(attention, "attention");
    Require(out_loss, "out_loss");
    const lecgen::attn::AttentionMatrix att(attention->m);
    const lecgen::attn::PenaltyMatrix pen(att.encoder_len(), att.decoder_len(),
                                          sharpness);
    *out_loss = lecgen::attn::AttentionLoss(att, pen);
    return LECGEN_OK;
  });
}

lecgen_status lecgen_diagonality_score(const lecgen_matrix *attention,
                                       double *out_score) {
  return Guard([&] {
    Require(attention, "attention");
    Require(out_score, "out_score");
    *out_score = lecgen::attn::DiagonalityScore(
        lecgen::attn::AttentionMatrix(attention->m));
    return LECGEN_OK;
  });
}

lecgen_status lecgen_mel_from_wav(const char *wav_path, const char *out_path,
                                  int num_threads, size_t *out_frames,
                                  size_t *out_bands) {
  return Guard([&] {
    Require(wav_path, "wav_path");
    Require(out_path, "out_path");
    const lecgen::mel::MelConfig config;
    const auto wave = lecgen::mel::ReadWav(wav_path);
    const auto mel =
        lecgen::mel::ComputeMelSpectrogram(wave, config, num_threads);
    lecgen::mel::WriteMel(mel, out_path);
    if (out_frames != nullptr) *out_frames = mel.frames.rows();
    if (out_bands != nullptr) *out_bands = mel.frames.cols();
    return LECGEN_OK;
  });
}

lecgen_status lecgen_plan_video(size_t t, size_t t_prime, double r,
                                uint64_t seed, lecgen_plan **out) {
  return Guard([&] {
    Require(out, "out");
    lecgen::video::AugmentParams params;
    params.t = t;
    params.t_prime = t_prime;
    params.r = r;
    params.seed = seed;
    auto plan = lecgen::video::Plan(params);
    *out = new lecgen_plan{std::move(plan), params};
    return LECGEN_OK;
  });
}

size_t lecgen_plan_length(const lecgen_plan *plan) {
  return plan == nullptr ? 0 : plan->plan.indices.size();
}

const size_t *lecgen_plan_indices(const lecgen_plan *plan) {
  return plan == nullptr ? nullptr : plan->plan.indices.data();
}

lecgen_status lecgen_plan_to_json(const lecgen_plan *plan, char **out) {
  return Guard([&] {
    Require(plan, "plan");
    Require(out, "out");
    *out = Dup(lecgen::video::PlanToJson(plan->plan, plan->params));
    return LECGEN_OK;
  });
}

lecgen_status lecgen_plan_validate(const lecgen_plan *plan,
                                   char **out_diagnostics) {
  return Guard([&] {
    Require(plan, "plan");
    const auto diags = lecgen::video::ValidatePlan(plan->plan, plan->params);
    std::string text;
    for (const auto &d : diags) text += d + "\n";
    if (out_diagnostics != nullptr) *out_diagnostics = Dup(text);
    if (!diags.empty()) {
      return Fail(LECGEN_ERR_VALIDATION, "frame plan failed validation: " +
                                             diags.front());
    }
    return LECGEN_OK;
  });
}

void lecgen_plan_free(lecgen_plan *plan) { delete plan; }

lecgen_status lecgen_cosine_similarity(const double *a, const double *b,
                                       size_t dim, double *out) {
  return Guard([&] {
    Require(a, "a");
    Require(b, "b");
    Require(out, "out");
    *out = lecgen::eval::CosineSimilarity(std::span<const double>(a, dim),
                                          std::span<const double>(b, dim));
    return LECGEN_OK;
  });
}

lecgen_status lecgen_mos_from_csv(const char *csv_path, double confidence,
                                  double *out_mean, double *out_half_width,
                                  size_t *out_count, char **out_formatted) {
  return Guard([&] {
    Require(csv_path, "csv_path");
    const auto samples = lecgen::eval::LoadMosCsv(csv_path);
    const auto result = lecgen::eval::MosWithCi(samples, confidence);
    if (out_mean != nullptr) *out_mean = result.mean;
    if (out_half_width != nullptr) *out_half_width = result.half_width;
    if (out_count != nullptr) *out_count = result.count;
    if (out_formatted != nullptr) *out_formatted = Dup(result.Format());
    return LECGEN_OK;
  });
}

lecgen_status lecgen_speaker_similarity_dirs(const char *truth_dir,
                                             const char *synth_dir,
                                             lecgen_pairing pairing,
                                             double *out_similarity) {
  return Guard([&] {
    Require(truth_dir, "truth_dir");
    Require(synth_dir, "synth_dir");
    Require(out_similarity, "out_similarity");
    if (pairing != LECGEN_PAIRING_PAIRED &&
        pairing != LECGEN_PAIRING_MEAN_CENTROID) {
      throw lecgen::UsageError("unknown pairing mode");
    }
    const auto result = lecgen::eval::SpeakerSimilarityDirs(
        truth_dir, synth_dir,
        pairing == LECGEN_PAIRING_PAIRED ? lecgen::eval::Pairing::kPaired
                                         : lecgen::eval::Pairing::kMeanCentroid);
    *out_similarity = result.similarity;
    return LECGEN_OK;
  });
}

lecgen_status lecgen_adapt_batches(const char *records_path, size_t batch_size,
                                   uint64_t seed, char **out_json) {
  return Guard([&] {
    Require(records_path, "records_path");
    Require(out_json, "out_json");
    const auto records = lecgen::adapt::LoadRecords(records_path);
    const auto plan = lecgen::adapt::BalancedBatches(records, batch_size, seed);
    nlohmann::ordered_json j;
    j["batches"] = nlohmann::ordered_json::array();
    for (const auto &b : plan.batches) {
      nlohmann::ordered_json o;
      o["full"] = b.full;
      o["records"] = nlohmann::ordered_json::parse(IdsJson(records, b.records));
      j["batches"].push_back(std::move(o));
    }
    j["dropped"] = nlohmann::ordered_json::parse(IdsJson(records, plan.dropped));
    *out_json = Dup(j.dump(2) + "\n");
    return LECGEN_OK;
  });
}

lecgen_status lecgen_adapt_split(const char *records_path, double test_fraction,
                                 uint64_t seed, char **out_json) {
  return Guard([&] {
    Require(records_path, "records_path");
    Require(out_json, "out_json");
    const auto records = lecgen::adapt::LoadRecords(records_path);
    const auto split =
        lecgen::adapt::SplitAdaptationSet(records, test_fraction, seed);
    nlohmann::ordered_json j;
    j["adapt"] = nlohmann::ordered_json::parse(IdsJson(records, split.adapt));
    j["test"] = nlohmann::ordered_json::parse(IdsJson(records, split.test));
    *out_json = Dup(j.dump(2) + "\n");
    return LECGEN_OK;
  });
}

lecgen_status lecgen_adapt_schedule(const char *config_path, char **out_json) {
  return Guard([&] {
    Require(out_json, "out_json");
    lecgen::adapt::AdaptationConfig config;
    if (config_path != nullptr) {
      config = lecgen::adapt::ParseAdaptationConfig(
          lecgen::ReadFileBytes(config_path));
    }
    *out_json = Dup(lecgen::adapt::ScheduleToJson(
        lecgen::adapt::AdaptationSchedule(config)));
    return LECGEN_OK;
  });
}

lecgen_status lecgen_generate(const char *deck_path, const char *config_path,
                              uint64_t seed, const char *out_dir, int threads,
                              char **out_manifest_json) {
  return Guard([&] {
    Require(deck_path, "deck_path");
    Require(config_path, "config_path");
    Require(out_dir, "out_dir");
    const auto deck = lecgen::pipeline::LoadDeck(deck_path);
    const auto config = lecgen::pipeline::LoadPipelineConfig(config_path);
    const auto manifest =
        lecgen::pipeline::RunPipeline(deck, config, seed, out_dir, threads);
    if (out_manifest_json != nullptr) {
      *out_manifest_json = Dup(lecgen::pipeline::ManifestToJson(manifest));
    }
    return LECGEN_OK;
  });
}

lecgen_status lecgen_compose(const char *manifest_path, const char *layout_json,
                             char **out_script) {
  return Guard([&] {
    Require(manifest_path, "manifest_path");
    Require(out_script, "out_script");
    const auto manifest = lecgen::pipeline::ManifestFromJson(
        lecgen::ReadFileBytes(manifest_path));
    const auto layout = layout_json == nullptr
                            ? lecgen::pipeline::CompositionLayout{}
                            : lecgen::pipeline::ParseLayout(layout_json);
    *out_script = Dup(lecgen::pipeline::ComposeScript(manifest, layout));
    return LECGEN_OK;
  });
}

}  // extern "C"
