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

#ifndef LECGEN_PIPELINE_DECK_H_
#define LECGEN_PIPELINE_DECK_H_

#include <optional>
#include <string>
#include <vector>

namespace lecgen::pipeline {

struct Slide {
  std::string id;
  std::string asset_path;  // resolved against the deck's directory
  std::string annotation;
};

struct SlideDeck {
  std::string language;
  std::optional<std::string> target_language;
  std::vector<Slide> slides;
};

// {language, target_language?, slides:[{id, asset, annotation}]}
// Rejects duplicate ids, empty annotations and missing asset files.
SlideDeck ParseDeck(const std::string &json_text, const std::string &base_dir);
SlideDeck LoadDeck(const std::string &path);

}  // namespace lecgen::pipeline

#endif  // LECGEN_PIPELINE_DECK_H_
