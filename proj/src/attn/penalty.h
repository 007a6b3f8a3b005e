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

#ifndef LECGEN_ATTN_PENALTY_H_
#define LECGEN_ATTN_PENALTY_H_

#include <cstddef>

#include "common/matrix.h"

namespace lecgen::attn {

inline constexpr double kDefaultSharpness = 3.5;
inline constexpr double kAttentionColumnTolerance = 1e-6;

// P[n][t] = 1 - exp(-k^2 (n/N - t/T)^2) over 1-based n in [1, N] (rows) and
// t in [1, T] (columns). Zero on the n/N == t/T locus, approaching 1 away
// from it.
class PenaltyMatrix {
 public:
  PenaltyMatrix(size_t encoder_len, size_t decoder_len,
                double sharpness = kDefaultSharpness);

  size_t encoder_len() const { return values_.rows(); }
  size_t decoder_len() const { return values_.cols(); }
  double sharpness() const { return sharpness_; }
  double operator()(size_t n, size_t t) const { return values_(n, t); }
  const Matrix &values() const { return values_; }

 private:
  double sharpness_;
  Matrix values_;
};

// Encoder positions (rows) by decoder steps (columns). Entries are
// non-negative and every column sums to one.
class AttentionMatrix {
 public:
  explicit AttentionMatrix(Matrix values);

  size_t encoder_len() const { return values_.rows(); }
  size_t decoder_len() const { return values_.cols(); }
  const Matrix &values() const { return values_; }

 private:
  Matrix values_;
};

// Mean over all cells of att * pen. Accepts raw weights so trainers can
// evaluate unnormalized iterates; shapes must match.
double AttentionLoss(const Matrix &att, const PenaltyMatrix &pen);
inline double AttentionLoss(const AttentionMatrix &att,
                            const PenaltyMatrix &pen) {
  return AttentionLoss(att.values(), pen);
}

// d loss / d att, which is pen / (N*T) since the loss is linear in att.
Matrix AttentionLossGradient(const Matrix &att, const PenaltyMatrix &pen);

// 1 - sum_t E_t / sum_t M_t, where E_t is the expected normalized distance
// |n/N - t/T| of column t and M_t its largest possible value. 1 for a
// perfectly diagonal alignment, 0 when every column puts all of its mass on
// its farthest encoder position.
double DiagonalityScore(const AttentionMatrix &att);

}  // namespace lecgen::attn

#endif  // LECGEN_ATTN_PENALTY_H_
