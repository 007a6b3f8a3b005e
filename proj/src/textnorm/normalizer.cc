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

#include "textnorm/normalizer.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "common/error.h"
#include "common/matrix.h"
#include "textnorm/number_words.h"

namespace lecgen::textnorm {

namespace {

bool IsLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlnum(char c) { return IsLetter(c) || IsDigit(c); }
char Lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = Lower(c);
  return out;
}

// Decodes one UTF-8 sequence; invalid sequences decode to U+FFFD, length 1.
char32_t DecodeUtf8(std::string_view text, size_t pos, size_t *len) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  auto cont = [&](size_t i) -> int {
    if (pos + i >= text.size()) return -1;
    const auto b = static_cast<unsigned char>(text[pos + i]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) {
    *len = 1;
    return b0;
  }
  int need = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
  } else {
    *len = 1;
    return 0xFFFD;
  }
  for (int i = 1; i <= need; ++i) {
    const int c = cont(static_cast<size_t>(i));
    if (c < 0) {
      *len = 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | static_cast<char32_t>(c);
  }
  *len = static_cast<size_t>(need) + 1;
  return cp;
}

struct Currency {
  const char *unit;
  const char *units;
  const char *sub;
  const char *subs;
};

const Currency *CurrencyFor(char32_t cp) {
  static const Currency kDollar{"dollar", "dollars", "cent", "cents"};
  static const Currency kEuro{"euro", "euros", "cent", "cents"};
  static const Currency kPound{"pound", "pounds", "penny", "pence"};
  switch (cp) {
    case U'$':
      return &kDollar;
    case U'\u20AC':
      return &kEuro;
    case U'\u00A3':
      return &kPound;
    default:
      return nullptr;
  }
}

const char *SymbolWord(char32_t cp) {
  switch (cp) {
    case U'&':
      return "and";
    case U'+':
      return "plus";
    case U'=':
      return "equals";
    case U'@':
      return "at";
    case U'%':
      return "percent";
    case U'#':
      return "number";
    case U'\u00B0':
      return "degrees";
    case U'\u00D7':
      return "times";
    default:
      return nullptr;
  }
}

// Characters that only separate words and are dropped without comment.
bool IsSilentSeparator(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
    case U'(': case U')': case U'[': case U']': case U'{': case U'}':
    case U'"': case U'\'': case U'`': case U'/': case U'\\': case U'_':
    case U'*': case U'-':
    case U'\u00A0': case U'\u2013': case U'\u2014': case U'\u2018':
    case U'\u2019': case U'\u201C': case U'\u201D':
      return true;
    default:
      return false;
  }
}

// Maps sentence punctuation to the kept set {. , ? !}; 0 if not punctuation.
char PunctuationMark(char32_t cp) {
  switch (cp) {
    case U'.': case U'\u2026':
      return '.';
    case U',': case U';': case U':':
      return ',';
    case U'?':
      return '?';
    case U'!':
      return '!';
    default:
      return 0;
  }
}

// Every word the number, currency and symbol expanders can produce.
const std::set<std::string> &ReservedWords() {
  static const std::set<std::string> kWords = [] {
    std::set<std::string> words = {
        "point", "minus", "percent", "and", "plus", "equals", "at",
        "number", "degrees", "times", "dollar", "dollars", "euro", "euros",
        "pound", "pounds", "cent", "cents", "penny", "pence"};
    std::vector<uint64_t> samples;
    for (uint64_t n = 0; n < 100; ++n) samples.push_back(n);
    for (uint64_t n : {100ULL, 1000ULL, 1000000ULL, 1000000000ULL}) {
      samples.push_back(n);
    }
    for (uint64_t n : samples) {
      for (const std::string &phrase : {NumberToWords(n), OrdinalWords(n)}) {
        size_t start = 0;
        while (start <= phrase.size()) {
          size_t end = phrase.find(' ', start);
          if (end == std::string::npos) end = phrase.size();
          words.insert(phrase.substr(start, end - start));
          start = end + 1;
        }
      }
    }
    return words;
  }();
  return kWords;
}

bool IsSpokenWord(std::string_view w) {
  if (w.empty() || !IsLetter(w.front()) || !IsLetter(w.back())) return false;
  for (size_t i = 0; i < w.size(); ++i) {
    const char c = w[i];
    if (IsLetter(c)) continue;
    if ((c == '\'' || c == '-') && IsLetter(w[i + 1])) continue;
    return false;
  }
  return true;
}

std::vector<std::string> SplitSpaces(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Accumulates output words and punctuation in canonical spacing.
class Emitter {
 public:
  void Words(std::string_view phrase) {
    for (auto &w : SplitSpaces(phrase)) items_.push_back({false, ToLower(w)});
  }

  void Punct(char mark) {
    if (items_.empty() || items_.back().punct) return;
    items_.push_back({true, std::string(1, mark)});
  }

  std::string Render() const {
    std::string out;
    for (const auto &item : items_) {
      if (!item.punct && !out.empty()) out.push_back(' ');
      out += item.text;
    }
    return out;
  }

 private:
  struct Item {
    bool punct;
    std::string text;
  };
  std::vector<Item> items_;
};

struct NumberToken {
  std::string int_digits;
  std::string frac_digits;
  bool ordinal = false;
  size_t end = 0;
};

NumberToken ScanNumber(std::string_view text, size_t pos) {
  NumberToken tok;
  size_t j = pos;
  while (j < text.size() && IsDigit(text[j])) tok.int_digits += text[j++];
  if (tok.int_digits.size() <= 3) {
    // Thousands separators: 1,234,567
    while (j + 3 < text.size() && text[j] == ',' && IsDigit(text[j + 1]) &&
           IsDigit(text[j + 2]) && IsDigit(text[j + 3]) &&
           (j + 4 >= text.size() || !IsDigit(text[j + 4]))) {
      tok.int_digits.append(text.substr(j + 1, 3));
      j += 4;
    }
  }
  if (j + 1 < text.size() && text[j] == '.' && IsDigit(text[j + 1])) {
    ++j;
    while (j < text.size() && IsDigit(text[j])) tok.frac_digits += text[j++];
  } else if (j + 1 < text.size() && IsLetter(text[j]) &&
             IsLetter(text[j + 1]) &&
             (j + 2 >= text.size() || !IsLetter(text[j + 2]))) {
    const std::string suffix = ToLower(text.substr(j, 2));
    if (suffix == "st" || suffix == "nd" || suffix == "rd" ||
        suffix == "th") {
      tok.ordinal = true;
      j += 2;
    }
  }
  tok.end = j;
  return tok;
}

std::string StripLeadingZeros(const std::string &digits) {
  const size_t first = digits.find_first_not_of('0');
  return first == std::string::npos ? "0" : digits.substr(first);
}

std::string DigitByDigit(std::string_view digits) {
  std::string out;
  for (char d : digits) {
    if (!out.empty()) out.push_back(' ');
    out += DigitWord(d);
  }
  return out;
}

class Pass {
 public:
  Pass(const AbbreviationTable &abbreviations, std::string_view text,
       std::vector<Diagnostic> *diagnostics)
      : abbreviations_(abbreviations), text_(text), diagnostics_(diagnostics) {}

  std::string Run() {
    size_t pos = 0;
    while (pos < text_.size()) pos = Step(pos);
    return out_.Render();
  }

 private:
  void Warn(size_t offset, std::string message) {
    if (diagnostics_) diagnostics_->push_back({offset, std::move(message)});
  }

  std::string IntegerWords(const std::string &digits, size_t offset) {
    const std::string stripped = StripLeadingZeros(digits);
    if (stripped.size() > 12) {
      Warn(offset, "number " + digits + " too large; read digit by digit");
      return DigitByDigit(stripped);
    }
    return NumberToWords(std::stoull(stripped));
  }

  void EmitNumber(const NumberToken &tok, size_t offset) {
    if (tok.ordinal) {
      const std::string stripped = StripLeadingZeros(tok.int_digits);
      if (stripped.size() > 12) {
        Warn(offset, "ordinal " + tok.int_digits + " too large");
        out_.Words(DigitByDigit(stripped));
      } else {
        out_.Words(OrdinalWords(std::stoull(stripped)));
      }
      return;
    }
    out_.Words(IntegerWords(tok.int_digits, offset));
    if (!tok.frac_digits.empty()) {
      out_.Words("point");
      out_.Words(DigitByDigit(tok.frac_digits));
    }
  }

  void EmitAmount(const NumberToken &tok, const Currency &cur, size_t offset) {
    const std::string whole = StripLeadingZeros(tok.int_digits);
    if (tok.frac_digits.size() == 2) {
      const int sub = std::stoi(tok.frac_digits);
      if (whole == "0" && sub > 0) {
        out_.Words(NumberToWords(static_cast<uint64_t>(sub)));
        out_.Words(sub == 1 ? cur.sub : cur.subs);
        return;
      }
      out_.Words(IntegerWords(tok.int_digits, offset));
      out_.Words(whole == "1" ? cur.unit : cur.units);
      if (sub > 0) {
        out_.Words(NumberToWords(static_cast<uint64_t>(sub)));
        out_.Words(sub == 1 ? cur.sub : cur.subs);
      }
      return;
    }
    NumberToken plain = tok;
    plain.ordinal = false;
    EmitNumber(plain, offset);
    const bool singular =
        whole == "1" &&
        tok.frac_digits.find_first_not_of('0') == std::string::npos;
    out_.Words(singular ? cur.unit : cur.units);
  }

  size_t Step(size_t pos) {
    const char c = text_[pos];
    const bool word_start = pos == 0 || !IsLetter(text_[pos - 1]);
    if (word_start) {
      if (auto match = abbreviations_.MatchAt(text_, pos)) {
        out_.Words(*match->spoken);
        return pos + match->length;
      }
    }
    if (IsDigit(c)) {
      NumberToken tok = ScanNumber(text_, pos);
      if (!tok.ordinal && tok.end < text_.size()) {
        size_t len = 0;
        const char32_t next = DecodeUtf8(text_, tok.end, &len);
        if (const Currency *cur = CurrencyFor(next)) {
          EmitAmount(tok, *cur, pos);
          return tok.end + len;
        }
      }
      EmitNumber(tok, pos);
      return tok.end;
    }
    if (IsLetter(c)) return ScanWord(pos);

    size_t len = 0;
    const char32_t cp = DecodeUtf8(text_, pos, &len);
    if (const Currency *cur = CurrencyFor(cp)) {
      if (pos + len < text_.size() && IsDigit(text_[pos + len])) {
        NumberToken tok = ScanNumber(text_, pos + len);
        tok.ordinal = false;
        EmitAmount(tok, *cur, pos);
        return tok.end;
      }
      out_.Words(cur->unit);
      return pos + len;
    }
    if ((cp == U'-' || cp == U'\u2212') && pos + len < text_.size() &&
        IsDigit(text_[pos + len]) && (pos == 0 || !IsAlnum(text_[pos - 1]))) {
      out_.Words("minus");
      return pos + len;
    }
    if (const char mark = PunctuationMark(cp)) {
      out_.Punct(mark);
      return pos + len;
    }
    if (const char *word = SymbolWord(cp)) {
      out_.Words(word);
      return pos + len;
    }
    if (IsSilentSeparator(cp)) return pos + len;

    Warn(pos, "dropped unknown symbol '" + std::string(text_.substr(pos, len)) +
                  "'");
    return pos + len;
  }

  size_t ScanWord(size_t pos) {
    std::string word;
    size_t j = pos;
    while (j < text_.size()) {
      if (IsLetter(text_[j])) {
        word.push_back(Lower(text_[j++]));
        continue;
      }
      if ((text_[j] == '\'' || text_[j] == '-') && j + 1 < text_.size() &&
          IsLetter(text_[j + 1])) {
        word.push_back(text_[j++]);
        continue;
      }
      // Typographic apostrophe inside a word.
      if (text_.substr(j, 3) == "\xE2\x80\x99" && j + 3 < text_.size() &&
          IsLetter(text_[j + 3])) {
        word.push_back('\'');
        j += 3;
        continue;
      }
      break;
    }
    out_.Words(word);
    return j;
  }

  const AbbreviationTable &abbreviations_;
  std::string_view text_;
  std::vector<Diagnostic> *diagnostics_;
  Emitter out_;
};

}  // namespace

AbbreviationTable AbbreviationTable::Default() {
  AbbreviationTable table;
  const std::pair<const char *, const char *> kEntries[] = {
      {"dr.", "doctor"},         {"mr.", "mister"},
      {"mrs.", "missus"},        {"ms.", "miz"},
      {"prof.", "professor"},    {"etc.", "et cetera"},
      {"e.g.", "for example"},   {"i.e.", "that is"},
      {"vs.", "versus"},         {"approx.", "approximately"},
      {"fig.", "figure"},        {"eq.", "equation"},
      {"dept.", "department"},   {"univ.", "university"},
      {"jr.", "junior"},         {"sr.", "senior"},
  };
  for (const auto &[written, spoken] : kEntries) {
    table.entries_[written] = spoken;
  }
  table.Validate();
  return table;
}

AbbreviationTable AbbreviationTable::Parse(std::string_view text,
                                           const std::string &source) {
  AbbreviationTable table;
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ValidationError(source + ":" + std::to_string(line_no) +
                            ": expected WRITTEN<TAB>spoken form");
    }
    try {
      table.Add(line.substr(0, tab), line.substr(tab + 1));
    } catch (const ValidationError &e) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": " +
                            e.what());
    }
  }
  return table;
}

AbbreviationTable AbbreviationTable::Load(const std::string &path) {
  return Parse(ReadFileBytes(path), path);
}

void AbbreviationTable::Add(std::string_view written, std::string_view spoken) {
  if (written.empty()) throw ValidationError("empty written form");
  for (char c : written) {
    if (static_cast<unsigned char>(c) <= ' ' ||
        static_cast<unsigned char>(c) >= 0x7F) {
      throw ValidationError("written form must be printable ASCII without "
                            "spaces: '" + std::string(written) + "'");
    }
  }
  if (!IsAlnum(written.front())) {
    throw ValidationError("written form must start with a letter or digit: '" +
                          std::string(written) + "'");
  }
  const auto words = SplitSpaces(spoken);
  if (words.empty()) throw ValidationError("empty spoken form");
  std::string canonical;
  for (const auto &w : words) {
    if (!IsSpokenWord(w)) {
      throw ValidationError("spoken form may only contain letters, "
                            "apostrophes and hyphens: '" + std::string(spoken) +
                            "'");
    }
    if (!canonical.empty()) canonical.push_back(' ');
    canonical += ToLower(w);
  }
  const std::string key = ToLower(written);
  std::string bare = key;
  if (bare.size() > 1 && bare.back() == '.') bare.pop_back();
  if (ReservedWords().count(bare)) {
    throw ValidationError("written form '" + std::string(written) +
                          "' collides with a built-in expansion word");
  }
  auto previous = entries_.find(key);
  std::optional<std::string> saved;
  if (previous != entries_.end()) saved = previous->second;
  entries_[key] = canonical;
  try {
    Validate();
  } catch (...) {
    if (saved) {
      entries_[key] = *saved;
    } else {
      entries_.erase(key);
    }
    throw;
  }
}

void AbbreviationTable::Merge(const AbbreviationTable &other) {
  for (const auto &[key, spoken] : other.entries_) Add(key, spoken);
}

void AbbreviationTable::Validate() const {
  std::set<std::string> bare_keys;
  for (const auto &[key, spoken] : entries_) {
    std::string bare = key;
    if (bare.size() > 1 && bare.back() == '.') bare.pop_back();
    bare_keys.insert(bare);
  }
  for (const auto &[key, spoken] : entries_) {
    for (const auto &w : SplitSpaces(spoken)) {
      if (bare_keys.count(w)) {
        throw ValidationError("expansion of '" + key + "' contains '" + w +
                              "', which is itself an abbreviation");
      }
    }
  }
}

std::optional<AbbreviationTable::Match> AbbreviationTable::MatchAt(
    std::string_view text, size_t pos) const {
  if (pos >= text.size()) return std::nullopt;
  const std::string first(1, Lower(text[pos]));
  std::optional<Match> best;
  for (auto it = entries_.lower_bound(first);
       it != entries_.end() && it->first[0] == first[0]; ++it) {
    const std::string &key = it->first;
    if (pos + key.size() > text.size()) continue;
    bool equal = true;
    for (size_t i = 0; i < key.size() && equal; ++i) {
      equal = Lower(text[pos + i]) == key[i];
    }
    if (!equal) continue;
    const size_t end = pos + key.size();
    if (end < text.size()) {
      const char last = key.back();
      if (IsLetter(last) && IsLetter(text[end])) continue;
      if (IsDigit(last) && IsDigit(text[end])) continue;
    }
    if (!best || key.size() > best->length) best = Match{key.size(), &it->second};
  }
  return best;
}

NormalizeResult Normalizer::Normalize(std::string_view raw) const {
  NormalizeResult result;
  std::string text = Pass(abbreviations_, raw, &result.diagnostics).Run();
  // Canonical spacing can bring a word next to a '.' it was separated from in
  // the input ("dr ." -> "dr."), so rules run until the text is a fixpoint.
  for (int i = 0; i < 8; ++i) {
    std::string next = Pass(abbreviations_, text, nullptr).Run();
    if (next == text) break;
    text = std::move(next);
  }
  result.text = std::move(text);
  return result;
}

NormalizeResult Normalize(std::string_view raw) {
  static const Normalizer kDefault;
  return kDefault.Normalize(raw);
}

}  // namespace lecgen::textnorm
