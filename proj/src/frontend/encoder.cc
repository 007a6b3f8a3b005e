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

#include "frontend/encoder.h"

#include <cctype>
#include <optional>

#include "common/error.h"
#include "common/rng.h"

namespace lecgen::frontend {

namespace {

struct Piece {
  bool is_word;
  std::string text;  // lowercase word or one punctuation mark
};

// Splits spoken text into words ([a-z'-]) and punctuation marks; any other
// character separates words.
std::vector<Piece> Split(std::string_view text) {
  const std::string &punct = Vocabulary::PunctuationSet();
  std::vector<Piece> pieces;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) pieces.push_back({true, std::move(word)});
    word.clear();
  };
  for (char raw : text) {
    const char c =
        static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    if ((c >= 'a' && c <= 'z') || ((c == '\'' || c == '-') && !word.empty())) {
      word.push_back(c);
    } else if (punct.find(c) != std::string::npos) {
      flush();
      pieces.push_back({false, std::string(1, c)});
    } else {
      flush();
    }
  }
  flush();
  return pieces;
}

MixedTokenSeq Encode(std::string_view text, const Lexicon &lexicon,
                     EncodeMode mode, double p, uint64_t seed) {
  const Vocabulary &vocab = lexicon.vocabulary();
  Rng rng(seed);
  MixedTokenSeq seq;
  seq.mode = mode;
  auto push = [&](TokenKind kind, const std::string &symbol) {
    seq.tokens.push_back({kind, symbol, vocab.Id(kind, symbol)});
  };
  for (const Piece &piece : Split(text)) {
    if (!piece.is_word) {
      push(TokenKind::kPunctuation, piece.text);
      continue;
    }
    if (seq.words > 0) {
      push(TokenKind::kWordBoundary, std::string(kWordBoundarySymbol));
    }
    ++seq.words;
    const bool draw = mode == EncodeMode::kInfer || rng.Bernoulli(p);
    const std::vector<std::string> *phones = lexicon.Lookup(piece.text);
    if (phones) ++seq.lexicon_words;
    if (phones && draw) {
      ++seq.replaced_words;
      for (const auto &ph : *phones) push(TokenKind::kPhoneme, ph);
    } else {
      for (char c : piece.text) push(TokenKind::kCharacter, std::string(1, c));
    }
  }
  return seq;
}

}  // namespace

MixedTokenSeq EncodeTrain(std::string_view text, const Lexicon &lexicon,
                          double p, uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("replacement probability must be in [0, 1]");
  }
  return Encode(text, lexicon, EncodeMode::kTrain, p, seed);
}

MixedTokenSeq EncodeInfer(std::string_view text, const Lexicon &lexicon) {
  return Encode(text, lexicon, EncodeMode::kInfer, 1.0, 0);
}

std::string DumpTokens(const MixedTokenSeq &seq) {
  std::string out;
  for (const auto &tok : seq.tokens) {
    out += TokenKindName(tok.kind);
    out.push_back('\t');
    out += tok.symbol;
    out.push_back('\t');
    out += std::to_string(tok.id);
    out.push_back('\n');
  }
  return out;
}

}  // namespace lecgen::frontend
