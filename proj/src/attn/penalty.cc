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

#include "attn/penalty.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.h"

namespace lecgen::attn {

PenaltyMatrix::PenaltyMatrix(size_t encoder_len, size_t decoder_len,
                             double sharpness)
    : sharpness_(sharpness) {
  if (encoder_len == 0 || decoder_len == 0) {
    throw ValidationError("penalty matrix needs N >= 1 and T >= 1");
  }
  if (!(sharpness > 0.0) || !std::isfinite(sharpness)) {
    throw ValidationError("penalty sharpness k must be positive");
  }
  values_ = Matrix(encoder_len, decoder_len);
  const double k2 = sharpness * sharpness;
  const double n_len = static_cast<double>(encoder_len);
  const double t_len = static_cast<double>(decoder_len);
  for (size_t n = 0; n < encoder_len; ++n) {
    for (size_t t = 0; t < decoder_len; ++t) {
      const double d = static_cast<double>(n + 1) / n_len -
                       static_cast<double>(t + 1) / t_len;
      values_(n, t) = -std::expm1(-k2 * d * d);
    }
  }
}

AttentionMatrix::AttentionMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("attention matrix is empty");
  for (size_t t = 0; t < values_.cols(); ++t) {
    double sum = 0.0;
    for (size_t n = 0; n < values_.rows(); ++n) {
      const double v = values_(n, t);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ValidationError("attention weight at (" + std::to_string(n) +
                              ", " + std::to_string(t) +
                              ") is negative or not finite");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kAttentionColumnTolerance) {
      throw ValidationError("attention column " + std::to_string(t) +
                            " sums to " + std::to_string(sum) + ", not 1");
    }
  }
}

namespace {

void CheckShape(const Matrix &att, const PenaltyMatrix &pen) {
  if (att.rows() != pen.encoder_len() || att.cols() != pen.decoder_len()) {
    throw ValidationError(
        "attention shape " + std::to_string(att.rows()) + "x" +
        std::to_string(att.cols()) + " does not match penalty shape " +
        std::to_string(pen.encoder_len()) + "x" +
        std::to_string(pen.decoder_len()));
  }
}

}  // namespace

double AttentionLoss(const Matrix &att, const PenaltyMatrix &pen) {
  CheckShape(att, pen);
  const auto &a = att.data();
  const auto &p = pen.values().data();
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * p[i];
  return sum / static_cast<double>(a.size());
}

Matrix AttentionLossGradient(const Matrix &att, const PenaltyMatrix &pen) {
  CheckShape(att, pen);
  Matrix grad = pen.values();
  const double scale = 1.0 / static_cast<double>(grad.size());
  for (double &g : grad.data()) g *= scale;
  return grad;
}

double DiagonalityScore(const AttentionMatrix &att) {
  const Matrix &a = att.values();
  const double n_len = static_cast<double>(a.rows());
  const double t_len = static_cast<double>(a.cols());
  double expected = 0.0;
  double worst = 0.0;
  for (size_t t = 0; t < a.cols(); ++t) {
    const double y = static_cast<double>(t + 1) / t_len;
    worst += std::max(std::abs(1.0 / n_len - y), std::abs(1.0 - y));
    for (size_t n = 0; n < a.rows(); ++n) {
      expected += a(n, t) * std::abs(static_cast<double>(n + 1) / n_len - y);
    }
  }
  if (worst == 0.0) return 1.0;
  return std::clamp(1.0 - expected / worst, 0.0, 1.0);
}

}  // namespace lecgen::attn
