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

#ifndef LECGEN_FRONTEND_LEXICON_H_
#define LECGEN_FRONTEND_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lecgen::frontend {

enum class TokenKind { kCharacter, kPhoneme, kWordBoundary, kPunctuation };

const char *TokenKindName(TokenKind kind);

inline constexpr std::string_view kWordBoundarySymbol = "<wb>";

// The 39 ARPAbet phonemes; vowels also appear with stress digits 0/1/2.
std::set<std::string> ArpabetAlphabet();

// Unified id space for encoder input. Ids are assigned to characters first,
// then phonemes, then specials (word boundary and punctuation), each block
// in sorted symbol order, so ids depend only on the phoneme alphabet.
class Vocabulary {
 public:
  explicit Vocabulary(const std::set<std::string> &phoneme_alphabet);

  std::optional<int> Find(TokenKind kind, std::string_view symbol) const;
  int Id(TokenKind kind, std::string_view symbol) const;
  const std::pair<TokenKind, std::string> &Symbol(int id) const;
  size_t size() const { return by_id_.size(); }

  static const std::string &CharacterSet();
  static const std::string &PunctuationSet();

 private:
  std::vector<std::pair<TokenKind, std::string>> by_id_;
  std::map<std::pair<TokenKind, std::string>, int, std::less<>> ids_;
};

// Word -> phoneme sequence. Words are stored uppercase; lookup ignores case.
class Lexicon {
 public:
  // Two-column format: `WORD<whitespace>PH PH ...`. Lines starting with
  // ";;;" or '#' are comments. "WORD(2)" alternates collapse onto WORD;
  // the first pronunciation wins and conflicting ones are reported through
  // `warnings`.
  static Lexicon Parse(std::string_view text, const std::string &source,
                       const std::set<std::string> &alphabet,
                       std::vector<std::string> *warnings = nullptr);
  static Lexicon Load(const std::string &path,
                      const std::set<std::string> &alphabet = ArpabetAlphabet(),
                      std::vector<std::string> *warnings = nullptr);

  const std::vector<std::string> *Lookup(std::string_view word) const;

  size_t size() const { return entries_.size(); }
  const std::set<std::string> &alphabet() const { return alphabet_; }
  const Vocabulary &vocabulary() const { return vocabulary_; }

 private:
  explicit Lexicon(std::set<std::string> alphabet)
      : alphabet_(std::move(alphabet)), vocabulary_(alphabet_) {}

  std::set<std::string> alphabet_;
  Vocabulary vocabulary_;
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

}  // namespace lecgen::frontend

#endif  // LECGEN_FRONTEND_LEXICON_H_
