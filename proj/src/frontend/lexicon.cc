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

#include "frontend/lexicon.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "common/error.h"
#include "common/matrix.h"

namespace lecgen::frontend {

const char *TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kCharacter:
      return "Character";
    case TokenKind::kPhoneme:
      return "Phoneme";
    case TokenKind::kWordBoundary:
      return "WordBoundary";
    case TokenKind::kPunctuation:
      return "Punctuation";
  }
  return "?";
}

std::set<std::string> ArpabetAlphabet() {
  static const char *kVowels[] = {"AA", "AE", "AH", "AO", "AW",
                                  "AY", "EH", "ER", "EY", "IH",
                                  "IY", "OW", "OY", "UH", "UW"};
  static const char *kConsonants[] = {
      "B", "CH", "D",  "DH", "F", "G",  "HH", "JH", "K", "L",  "M", "N",
      "NG", "P", "R", "S",  "SH", "T", "TH", "V", "W",  "Y", "Z", "ZH"};
  std::set<std::string> out;
  for (const char *v : kVowels) {
    out.insert(v);
    for (const char *stress : {"0", "1", "2"}) {
      out.insert(std::string(v) + stress);
    }
  }
  for (const char *c : kConsonants) out.insert(c);
  return out;
}

const std::string &Vocabulary::CharacterSet() {
  static const std::string kChars = "'-abcdefghijklmnopqrstuvwxyz";
  return kChars;
}

const std::string &Vocabulary::PunctuationSet() {
  static const std::string kPunct = "!,.?";
  return kPunct;
}

Vocabulary::Vocabulary(const std::set<std::string> &phoneme_alphabet) {
  for (char c : CharacterSet()) {
    by_id_.emplace_back(TokenKind::kCharacter, std::string(1, c));
  }
  for (const auto &p : phoneme_alphabet) {
    by_id_.emplace_back(TokenKind::kPhoneme, p);
  }
  std::vector<std::pair<std::string, TokenKind>> specials;
  specials.emplace_back(std::string(kWordBoundarySymbol),
                        TokenKind::kWordBoundary);
  for (char c : PunctuationSet()) {
    specials.emplace_back(std::string(1, c), TokenKind::kPunctuation);
  }
  std::sort(specials.begin(), specials.end());
  for (auto &[symbol, kind] : specials) by_id_.emplace_back(kind, symbol);
  for (size_t i = 0; i < by_id_.size(); ++i) {
    ids_.emplace(by_id_[i], static_cast<int>(i));
  }
}

std::optional<int> Vocabulary::Find(TokenKind kind,
                                    std::string_view symbol) const {
  auto it = ids_.find(std::make_pair(kind, std::string(symbol)));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::Id(TokenKind kind, std::string_view symbol) const {
  if (auto id = Find(kind, symbol)) return *id;
  throw ValidationError(std::string("symbol not in vocabulary: ") +
                        TokenKindName(kind) + " '" + std::string(symbol) + "'");
}

const std::pair<TokenKind, std::string> &Vocabulary::Symbol(int id) const {
  if (id < 0 || static_cast<size_t>(id) >= by_id_.size()) {
    throw ValidationError("token id out of range: " + std::to_string(id));
  }
  return by_id_[static_cast<size_t>(id)];
}

namespace {

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

// "WORD(2)" -> "WORD"
std::string StripAlternateMarker(const std::string &word) {
  if (word.size() < 4 || word.back() != ')') return word;
  const size_t open = word.rfind('(');
  if (open == std::string::npos || open == 0) return word;
  for (size_t i = open + 1; i + 1 < word.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(word[i]))) return word;
  }
  return open + 2 < word.size() ? word.substr(0, open) : word;
}

std::string Join(const std::vector<std::string> &v) {
  std::string out;
  for (const auto &s : v) {
    if (!out.empty()) out.push_back(' ');
    out += s;
  }
  return out;
}

}  // namespace

Lexicon Lexicon::Parse(std::string_view text, const std::string &source,
                       const std::set<std::string> &alphabet,
                       std::vector<std::string> *warnings) {
  Lexicon lex(alphabet);
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = source + ":" + std::to_string(line_no);
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    if (word.rfind(";;;", 0) == 0 || word[0] == '#') continue;
    std::vector<std::string> phones;
    for (std::string ph; fields >> ph;) {
      if (!lex.alphabet_.count(ph)) {
        throw ValidationError(where + ": phoneme '" + ph +
                              "' is not in the phoneme alphabet");
      }
      phones.push_back(ph);
    }
    if (phones.empty()) {
      throw ValidationError(where + ": word '" + word +
                            "' has no pronunciation");
    }
    const std::string key = Upper(StripAlternateMarker(word));
    auto [it, inserted] = lex.entries_.emplace(key, phones);
    if (!inserted && it->second != phones && warnings) {
      warnings->push_back(where + ": ignoring pronunciation '" + Join(phones) +
                          "' for " + key + "; keeping '" + Join(it->second) +
                          "'");
    }
  }
  if (lex.entries_.empty()) throw ValidationError(source + ": empty lexicon");
  return lex;
}

Lexicon Lexicon::Load(const std::string &path,
                      const std::set<std::string> &alphabet,
                      std::vector<std::string> *warnings) {
  return Parse(ReadFileBytes(path), path, alphabet, warnings);
}

const std::vector<std::string> *Lexicon::Lookup(std::string_view word) const {
  auto it = entries_.find(Upper(word));
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace lecgen::frontend
