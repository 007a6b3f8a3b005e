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

#include "eval/similarity.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

#include "common/error.h"
#include "common/matrix.h"
#include "common/rng.h"

namespace lecgen::eval {

namespace fs = std::filesystem;

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

SpeakerEmbedding::SpeakerEmbedding(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() != kEmbeddingDim) {
    throw ValidationError("speaker embedding must have " +
                          std::to_string(kEmbeddingDim) + " dimensions, got " +
                          std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw ValidationError("speaker embedding has a non-finite entry");
    }
  }
  if (Dot(values_, values_) == 0.0) {
    throw ValidationError("speaker embedding has zero norm");
  }
}

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ValidationError("embedding sizes differ: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
  const double aa = Dot(a, a);
  const double bb = Dot(b, b);
  if (aa == 0.0 || bb == 0.0) {
    throw ValidationError("cosine similarity of a zero vector");
  }
  // sqrt(aa * aa) == aa exactly, so identical inputs give exactly 1.
  return std::clamp(Dot(a, b) / std::sqrt(aa * bb), -1.0, 1.0);
}

double MeanSpeakerSimilarity(std::span<const SpeakerEmbedding> truth,
                             std::span<const SpeakerEmbedding> synth,
                             Pairing pairing) {
  if (truth.empty() || synth.empty()) {
    throw ValidationError("speaker similarity needs non-empty embedding sets");
  }
  if (pairing == Pairing::kPaired) {
    if (truth.size() != synth.size()) {
      throw ValidationError("paired similarity needs equal set sizes (" +
                            std::to_string(truth.size()) + " vs " +
                            std::to_string(synth.size()) + ")");
    }
    double sum = 0.0;
    for (size_t i = 0; i < truth.size(); ++i) {
      sum += CosineSimilarity(truth[i], synth[i]);
    }
    return sum / static_cast<double>(truth.size());
  }
  auto centroid = [](std::span<const SpeakerEmbedding> set) {
    std::vector<double> c(kEmbeddingDim, 0.0);
    for (const auto &e : set) {
      for (size_t i = 0; i < kEmbeddingDim; ++i) c[i] += e.values()[i];
    }
    for (double &v : c) v /= static_cast<double>(set.size());
    return c;
  };
  return CosineSimilarity(centroid(truth), centroid(synth));
}

std::string EncodeEmbedding(std::span<const double> values) {
  std::string out;
  AppendU32(&out, static_cast<uint32_t>(values.size()));
  for (double v : values) AppendF32(&out, static_cast<float>(v));
  return out;
}

std::vector<double> DecodeEmbedding(const std::string &bytes) {
  const auto *p = reinterpret_cast<const uint8_t *>(bytes.data());
  if (bytes.size() < 4) throw ValidationError("embedding file truncated");
  const uint32_t dim = LoadU32(p);
  if (bytes.size() != 4 + 4 * static_cast<size_t>(dim)) {
    throw ValidationError("embedding file size does not match dim " +
                          std::to_string(dim));
  }
  std::vector<double> v(dim);
  for (uint32_t i = 0; i < dim; ++i) v[i] = LoadF32(p + 4 + 4 * i);
  return v;
}

SpeakerEmbedding ReadEmbedding(const std::string &path) {
  try {
    return SpeakerEmbedding(DecodeEmbedding(ReadFileBytes(path)));
  } catch (const ValidationError &e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void WriteEmbedding(const SpeakerEmbedding &e, const std::string &path) {
  WriteFileBytes(path, EncodeEmbedding(e.values()));
}

namespace {

std::map<std::string, SpeakerEmbedding> LoadDir(const std::string &dir) {
  if (!fs::is_directory(dir)) {
    throw ValidationError("embedding directory not found: " + dir);
  }
  std::map<std::string, SpeakerEmbedding> out;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    out.emplace(entry.path().filename().string(),
                ReadEmbedding(entry.path().string()));
  }
  if (out.empty()) throw ValidationError("no embeddings in " + dir);
  return out;
}

}  // namespace

DirectorySimilarity SpeakerSimilarityDirs(const std::string &truth_dir,
                                          const std::string &synth_dir,
                                          Pairing pairing) {
  const auto truth = LoadDir(truth_dir);
  const auto synth = LoadDir(synth_dir);
  std::vector<SpeakerEmbedding> t, s;
  if (pairing == Pairing::kPaired) {
    for (const auto &[name, e] : truth) {
      auto it = synth.find(name);
      if (it == synth.end()) {
        throw ValidationError("no synthesized embedding named " + name);
      }
      t.push_back(e);
      s.push_back(it->second);
    }
    if (synth.size() != truth.size()) {
      throw ValidationError("synthesized set has embeddings without a "
                            "ground-truth counterpart");
    }
  } else {
    for (const auto &[name, e] : truth) t.push_back(e);
    for (const auto &[name, e] : synth) s.push_back(e);
  }
  return {MeanSpeakerSimilarity(t, s, pairing), truth.size(), synth.size()};
}

SpeakerEmbedding StubEmbedding(std::string_view key) {
  Rng rng(Fnv1a64(key));
  std::vector<double> v(kEmbeddingDim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double &x : v) {
      x = 2.0 * rng.NextUnit() - 1.0;
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double &x : v) x *= inv;
  return SpeakerEmbedding(std::move(v));
}

}  // namespace lecgen::eval
