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

// C interface to the lecgen toolkit. Every fallible call returns a
// lecgen_status; on failure lecgen_last_error() describes the problem for
// the calling thread. Strings returned through char** are owned by the
// caller and released with lecgen_string_free().

#ifndef LECGEN_LECGEN_H_
#define LECGEN_LECGEN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LECGEN_BUILDING_LIBRARY)
#define LECGEN_API __declspec(dllexport)
#else
#define LECGEN_API __declspec(dllimport)
#endif
#else
#define LECGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lecgen_status {
  LECGEN_OK = 0,
  LECGEN_ERR_USAGE = 1,
  LECGEN_ERR_VALIDATION = 2,
  LECGEN_ERR_ADAPTER = 3,
  LECGEN_ERR_INTERNAL = 4
} lecgen_status;

LECGEN_API const char *lecgen_version(void);
LECGEN_API const char *lecgen_last_error(void);
LECGEN_API void lecgen_string_free(char *s);

/* Text normalization. abbreviations_path may be NULL. diagnostics (may be
 * NULL) receives one "offset<TAB>message" line per dropped input. */
LECGEN_API lecgen_status lecgen_normalize(const char *text,
                                          const char *abbreviations_path,
                                          char **out_text,
                                          char **out_diagnostics);
LECGEN_API lecgen_status lecgen_number_to_words(uint64_t n, char **out);

/* Front-end. */
typedef struct lecgen_lexicon lecgen_lexicon;
typedef struct lecgen_tokens lecgen_tokens;

typedef enum lecgen_token_kind {
  LECGEN_TOKEN_CHARACTER = 0,
  LECGEN_TOKEN_PHONEME = 1,
  LECGEN_TOKEN_WORD_BOUNDARY = 2,
  LECGEN_TOKEN_PUNCTUATION = 3
} lecgen_token_kind;

LECGEN_API lecgen_status lecgen_lexicon_load(const char *path,
                                             lecgen_lexicon **out);
LECGEN_API size_t lecgen_lexicon_size(const lecgen_lexicon *lexicon);
LECGEN_API void lecgen_lexicon_free(lecgen_lexicon *lexicon);

LECGEN_API lecgen_status lecgen_encode_infer(const lecgen_lexicon *lexicon,
                                             const char *text,
                                             lecgen_tokens **out);
LECGEN_API lecgen_status lecgen_encode_train(const lecgen_lexicon *lexicon,
                                             const char *text, double p,
                                             uint64_t seed,
                                             lecgen_tokens **out);
LECGEN_API size_t lecgen_tokens_count(const lecgen_tokens *tokens);
/* symbol stays valid until lecgen_tokens_free. */
LECGEN_API lecgen_status lecgen_tokens_get(const lecgen_tokens *tokens,
                                           size_t index,
                                           lecgen_token_kind *kind,
                                           const char **symbol, int32_t *id);
LECGEN_API size_t lecgen_tokens_replaced_words(const lecgen_tokens *tokens);
/* One "Kind<TAB>SYMBOL<TAB>ID" line per token. */
LECGEN_API lecgen_status lecgen_tokens_dump(const lecgen_tokens *tokens,
                                            char **out);
LECGEN_API void lecgen_tokens_free(lecgen_tokens *tokens);

/* Row-major double matrices. Files ending in ".mtx" use the MatrixMarket
 * array text format; anything else uses the binary format (u32 rows,
 * u32 cols, float32 values, little-endian). */
typedef struct lecgen_matrix lecgen_matrix;

LECGEN_API lecgen_status lecgen_matrix_read(const char *path,
                                            lecgen_matrix **out);
LECGEN_API lecgen_status lecgen_matrix_write(const lecgen_matrix *m,
                                             const char *path);
LECGEN_API size_t lecgen_matrix_rows(const lecgen_matrix *m);
LECGEN_API size_t lecgen_matrix_cols(const lecgen_matrix *m);
LECGEN_API const double *lecgen_matrix_data(const lecgen_matrix *m);
LECGEN_API void lecgen_matrix_free(lecgen_matrix *m);

/* Guided-attention penalty (encoder_len x decoder_len). */
LECGEN_API lecgen_status lecgen_penalty_matrix(size_t encoder_len,
                                               size_t decoder_len,
                                               double sharpness,
                                               lecgen_matrix **out);
LECGEN_API lecgen_status lecgen_attention_loss(const lecgen_matrix *attention,
                                               double sharpness,
                                               double *out_loss);
LECGEN_API lecgen_status lecgen_diagonality_score(
    const lecgen_matrix *attention, double *out_score);

/* Log-mel spectrogram of a WAV file with the default analysis settings
 * (16 kHz, n_fft 1024, win 800, hop 200, 80 bands, 0-8000 Hz). Writes the
 * binary matrix to out_path plus a JSON sidecar at out_path + ".json". */
LECGEN_API lecgen_status lecgen_mel_from_wav(const char *wav_path,
                                             const char *out_path,
                                             int num_threads,
                                             size_t *out_frames,
                                             size_t *out_bands);

/* Portrait-video temporal augmentation. */
typedef struct lecgen_plan lecgen_plan;

LECGEN_API lecgen_status lecgen_plan_video(size_t t, size_t t_prime, double r,
                                           uint64_t seed, lecgen_plan **out);
LECGEN_API size_t lecgen_plan_length(const lecgen_plan *plan);
LECGEN_API const size_t *lecgen_plan_indices(const lecgen_plan *plan);
LECGEN_API lecgen_status lecgen_plan_to_json(const lecgen_plan *plan,
                                             char **out);
/* LECGEN_OK if gap-free and in-zone, else LECGEN_ERR_VALIDATION with the
 * diagnostics (one per line) in out_diagnostics (may be NULL). */
LECGEN_API lecgen_status lecgen_plan_validate(const lecgen_plan *plan,
                                              char **out_diagnostics);
LECGEN_API void lecgen_plan_free(lecgen_plan *plan);

/* Evaluation. */
typedef enum lecgen_pairing {
  LECGEN_PAIRING_PAIRED = 0,
  LECGEN_PAIRING_MEAN_CENTROID = 1
} lecgen_pairing;

LECGEN_API lecgen_status lecgen_cosine_similarity(const double *a,
                                                  const double *b, size_t dim,
                                                  double *out);
/* out_formatted (may be NULL) receives "M.MM±H.HH" (UTF-8). */
LECGEN_API lecgen_status lecgen_mos_from_csv(const char *csv_path,
                                             double confidence,
                                             double *out_mean,
                                             double *out_half_width,
                                             size_t *out_count,
                                             char **out_formatted);
LECGEN_API lecgen_status lecgen_speaker_similarity_dirs(
    const char *truth_dir, const char *synth_dir, lecgen_pairing pairing,
    double *out_similarity);

/* Speaker adaptation plumbing; results are JSON documents. */
LECGEN_API lecgen_status lecgen_adapt_batches(const char *records_path,
                                              size_t batch_size, uint64_t seed,
                                              char **out_json);
LECGEN_API lecgen_status lecgen_adapt_split(const char *records_path,
                                            double test_fraction,
                                            uint64_t seed, char **out_json);
/* config_path may be NULL for the defaults. */
LECGEN_API lecgen_status lecgen_adapt_schedule(const char *config_path,
                                               char **out_json);

/* End-to-end generation. threads <= 0 uses the config value. Writes
 * manifest.json and compose.txt into out_dir; out_manifest_json may be
 * NULL. */
LECGEN_API lecgen_status lecgen_generate(const char *deck_path,
                                         const char *config_path,
                                         uint64_t seed, const char *out_dir,
                                         int threads,
                                         char **out_manifest_json);
/* layout_json may be NULL for the default layout. */
LECGEN_API lecgen_status lecgen_compose(const char *manifest_path,
                                        const char *layout_json,
                                        char **out_script);

#ifdef __cplusplus
}
#endif

#endif  // LECGEN_LECGEN_H_
