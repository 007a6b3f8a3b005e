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

#include "pipeline/deck.h"

#include <filesystem>
#include <set>

#include "common/error.h"
#include "common/matrix.h"
#include "json.hpp"

namespace lecgen::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

SlideDeck ParseDeck(const std::string &json_text, const std::string &base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception &e) {
    throw ValidationError(std::string("deck is not valid JSON: ") + e.what());
  }
  SlideDeck deck;
  try {
    deck.language = j.at("language").get<std::string>();
    if (j.contains("target_language") && !j.at("target_language").is_null()) {
      deck.target_language = j.at("target_language").get<std::string>();
    }
    std::set<std::string> seen;
    for (const auto &s : j.at("slides")) {
      Slide slide;
      slide.id = s.at("id").get<std::string>();
      const auto asset = s.at("asset").get<std::string>();
      slide.annotation = s.at("annotation").get<std::string>();
      if (slide.id.empty()) throw ValidationError("slide with empty id");
      if (!seen.insert(slide.id).second) {
        throw ValidationError("duplicate slide id \"" + slide.id + "\"");
      }
      if (slide.annotation.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ValidationError("slide \"" + slide.id + "\" has an empty annotation");
      }
      fs::path path(asset);
      if (path.is_relative()) path = fs::path(base_dir) / path;
      path = fs::absolute(path).lexically_normal();
      if (!fs::exists(path)) {
        throw ValidationError("slide \"" + slide.id + "\" asset not found: " +
                              path.string());
      }
      slide.asset_path = path.string();
      deck.slides.push_back(std::move(slide));
    }
  } catch (const json::exception &e) {
    throw ValidationError(std::string("deck schema error: ") + e.what());
  }
  return deck;
}

SlideDeck LoadDeck(const std::string &path) {
  return ParseDeck(ReadFileBytes(path),
                   fs::path(path).parent_path().string());
}

}  // namespace lecgen::pipeline
