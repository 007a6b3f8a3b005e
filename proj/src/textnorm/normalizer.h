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

#ifndef LECGEN_TEXTNORM_NORMALIZER_H_
#define LECGEN_TEXTNORM_NORMALIZER_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lecgen::textnorm {

struct Diagnostic {
  size_t offset = 0;  // byte offset into the raw input
  std::string message;
};

struct NormalizeResult {
  std::string text;
  std::vector<Diagnostic> diagnostics;
};

// Written form -> spoken form. Keys are matched case-insensitively at token
// starts; a trailing '.' in a key is part of the match ("dr." eats the dot).
//
// Spoken forms are restricted to words of letters with inner apostrophes or
// hyphens, and no spoken word may itself be a key or a word the number and
// symbol expanders emit. That restriction is what keeps Normalize idempotent.
class AbbreviationTable {
 public:
  AbbreviationTable() = default;

  static AbbreviationTable Default();

  // Lines of `WRITTEN<TAB>spoken form`; '#' starts a comment line.
  static AbbreviationTable Parse(std::string_view text,
                                 const std::string &source = "<memory>");
  static AbbreviationTable Load(const std::string &path);

  // Adds or replaces an entry, then re-checks the whole table.
  void Add(std::string_view written, std::string_view spoken);
  void Merge(const AbbreviationTable &other);

  // Longest key matching at `pos`, respecting letter boundaries.
  struct Match {
    size_t length;
    const std::string *spoken;
  };
  std::optional<Match> MatchAt(std::string_view text, size_t pos) const;

  size_t size() const { return entries_.size(); }

 private:
  void Validate() const;

  std::map<std::string, std::string> entries_;  // lowercase key -> spoken
};

class Normalizer {
 public:
  Normalizer() : abbreviations_(AbbreviationTable::Default()) {}
  explicit Normalizer(AbbreviationTable abbreviations)
      : abbreviations_(std::move(abbreviations)) {}

  NormalizeResult Normalize(std::string_view raw) const;

  const AbbreviationTable &abbreviations() const { return abbreviations_; }

 private:
  AbbreviationTable abbreviations_;
};

// Normalize with the default rule set.
NormalizeResult Normalize(std::string_view raw);

}  // namespace lecgen::textnorm

#endif  // LECGEN_TEXTNORM_NORMALIZER_H_
