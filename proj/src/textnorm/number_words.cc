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

#include "textnorm/number_words.h"

#include <array>
#include <string_view>

#include "common/error.h"

namespace lecgen::textnorm {

namespace {

constexpr std::array<std::string_view, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",
    "five",    "six",     "seven",     "eight",    "nine",
    "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
    "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};

constexpr std::array<std::string_view, 10> kTens = {
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
    "eighty", "ninety"};

constexpr std::array<std::string_view, 4> kScales = {"", "thousand", "million",
                                                     "billion"};

void AppendWord(std::string *out, std::string_view word) {
  if (!out->empty()) out->push_back(' ');
  out->append(word);
}

// 1..999
void AppendTriple(std::string *out, unsigned n) {
  if (n >= 100) {
    AppendWord(out, kOnes[n / 100]);
    AppendWord(out, "hundred");
    n %= 100;
  }
  if (n >= 20) {
    AppendWord(out, kTens[n / 10]);
    n %= 10;
    if (n != 0) AppendWord(out, kOnes[n]);
  } else if (n != 0) {
    AppendWord(out, kOnes[n]);
  }
}

}  // namespace

std::string NumberToWords(uint64_t n) {
  if (n > kMaxSpokenNumber) {
    throw ValidationError("number out of range for spoken form: " +
                          std::to_string(n));
  }
  if (n == 0) return "zero";
  std::array<unsigned, 4> groups{};
  for (auto &g : groups) {
    g = static_cast<unsigned>(n % 1000);
    n /= 1000;
  }
  std::string out;
  for (int i = 3; i >= 0; --i) {
    if (groups[i] == 0) continue;
    AppendTriple(&out, groups[i]);
    if (i > 0) AppendWord(&out, kScales[i]);
  }
  return out;
}

std::string OrdinalWords(uint64_t n) {
  std::string words = NumberToWords(n);
  const size_t cut = words.rfind(' ');
  const size_t start = cut == std::string::npos ? 0 : cut + 1;
  const std::string last = words.substr(start);
  std::string ordinal;
  if (last == "one") {
    ordinal = "first";
  } else if (last == "two") {
    ordinal = "second";
  } else if (last == "three") {
    ordinal = "third";
  } else if (last == "five") {
    ordinal = "fifth";
  } else if (last == "eight") {
    ordinal = "eighth";
  } else if (last == "nine") {
    ordinal = "ninth";
  } else if (last == "twelve") {
    ordinal = "twelfth";
  } else if (last.back() == 'y') {
    ordinal = last.substr(0, last.size() - 1) + "ieth";
  } else {
    ordinal = last + "th";
  }
  return words.substr(0, start) + ordinal;
}

const char *DigitWord(char digit) {
  return kOnes[static_cast<unsigned>(digit - '0')].data();
}

}  // namespace lecgen::textnorm
