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

#ifndef LECGEN_TEXTNORM_NUMBER_WORDS_H_
#define LECGEN_TEXTNORM_NUMBER_WORDS_H_

#include <cstdint>
#include <string>

namespace lecgen::textnorm {

inline constexpr uint64_t kMaxSpokenNumber = 999'999'999'999ULL;

// English cardinal words, space separated, no "and".
// Throws ValidationError when n > kMaxSpokenNumber.
std::string NumberToWords(uint64_t n);

// "first", "twenty second", "one hundredth", ...
std::string OrdinalWords(uint64_t n);

// Word for a single decimal digit.
const char *DigitWord(char digit);

}  // namespace lecgen::textnorm

#endif  // LECGEN_TEXTNORM_NUMBER_WORDS_H_
