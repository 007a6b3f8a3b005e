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

#ifndef LECGEN_EVAL_SIMILARITY_H_
#define LECGEN_EVAL_SIMILARITY_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lecgen::eval {

inline constexpr size_t kEmbeddingDim = 256;

class SpeakerEmbedding {
 public:
  // Requires kEmbeddingDim finite entries with a non-zero norm.
  explicit SpeakerEmbedding(std::vector<double> values);

  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

// dot(a, b) / sqrt(dot(a, a) * dot(b, b)), clamped to [-1, 1].
// Throws ValidationError on mismatched sizes or a zero vector.
double CosineSimilarity(std::span<const double> a, std::span<const double> b);
inline double CosineSimilarity(const SpeakerEmbedding &a,
                               const SpeakerEmbedding &b) {
  return CosineSimilarity(a.values(), b.values());
}

enum class Pairing { kPaired, kMeanCentroid };

// Paired: mean of per-pair cosines (equal list sizes). MeanCentroid: cosine
// between the two set centroids.
double MeanSpeakerSimilarity(std::span<const SpeakerEmbedding> truth,
                             std::span<const SpeakerEmbedding> synth,
                             Pairing pairing = Pairing::kPaired);

// Binary file: u32 dim, then dim float32 (little-endian).
std::string EncodeEmbedding(std::span<const double> values);
std::vector<double> DecodeEmbedding(const std::string &bytes);
SpeakerEmbedding ReadEmbedding(const std::string &path);
void WriteEmbedding(const SpeakerEmbedding &e, const std::string &path);

struct DirectorySimilarity {
  double similarity = 0.0;
  size_t truth_count = 0;
  size_t synth_count = 0;
};

// Loads every regular file in both directories. Paired mode matches files
// by name and requires identical name sets.
DirectorySimilarity SpeakerSimilarityDirs(const std::string &truth_dir,
                                          const std::string &synth_dir,
                                          Pairing pairing);

// Deterministic stand-in for a speaker encoder: a unit vector derived from
// a hash of `key`.
SpeakerEmbedding StubEmbedding(std::string_view key);

}  // namespace lecgen::eval

#endif  // LECGEN_EVAL_SIMILARITY_H_
