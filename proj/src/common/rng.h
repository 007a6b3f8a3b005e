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

#ifndef LECGEN_COMMON_RNG_H_
#define LECGEN_COMMON_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace lecgen {

// Portable seeded generator. std::mt19937_64 has a fully specified output
// sequence; the standard distributions do not, so bounded draws are done
// here by rejection sampling.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double NextUnit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  int64_t UniformInt(int64_t lo, int64_t hi);

  bool Bernoulli(double p) { return NextUnit() < p; }

  template <typename T>
  void Shuffle(std::vector<T> *items) {
    for (size_t i = items->size(); i > 1; --i) {
      auto j = static_cast<size_t>(UniformInt(0, static_cast<int64_t>(i) - 1));
      std::swap((*items)[i - 1], (*items)[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// 64-bit FNV-1a; stable across platforms, used for per-slide seed derivation.
uint64_t Fnv1a64(std::string_view data);

}  // namespace lecgen

#endif  // LECGEN_COMMON_RNG_H_
