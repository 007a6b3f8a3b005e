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

#ifndef LECGEN_FRONTEND_ENCODER_H_
#define LECGEN_FRONTEND_ENCODER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "frontend/lexicon.h"

namespace lecgen::frontend {

struct MixedToken {
  TokenKind kind;
  std::string symbol;
  int id;

  bool operator==(const MixedToken &) const = default;
};

enum class EncodeMode { kTrain, kInfer };

struct MixedTokenSeq {
  std::vector<MixedToken> tokens;
  EncodeMode mode = EncodeMode::kInfer;
  size_t words = 0;
  size_t lexicon_words = 0;   // words that have a dictionary entry
  size_t replaced_words = 0;  // words emitted as phonemes
};

inline constexpr double kDefaultReplaceProbability = 0.5;

// Training channel: every dictionary word is independently emitted as its
// phonemes with probability `p`, one draw per word from a generator seeded
// with `seed`. Other words stay as characters.
MixedTokenSeq EncodeTrain(std::string_view text, const Lexicon &lexicon,
                          double p, uint64_t seed);

// Inference channel: dictionary words become phonemes, the rest characters.
MixedTokenSeq EncodeInfer(std::string_view text, const Lexicon &lexicon);

// One token per line: KIND<TAB>SYMBOL<TAB>ID
std::string DumpTokens(const MixedTokenSeq &seq);

}  // namespace lecgen::frontend

#endif  // LECGEN_FRONTEND_ENCODER_H_
