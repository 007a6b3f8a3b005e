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

#include "eval/mos.h"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "common/error.h"
#include "common/matrix.h"

namespace lecgen::eval {

std::string FormatMeanCi(double mean, double half_width) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f±%.2f", mean, half_width);
  return buf;
}

std::string MosResult::Format() const { return FormatMeanCi(mean, half_width); }

double StudentTQuantile(double probability, double df) {
  if (!(probability > 0.0 && probability < 1.0) || !(df > 0.0)) {
    throw ValidationError("invalid t quantile request");
  }
  boost::math::students_t dist(df);
  return boost::math::quantile(dist, probability);
}

MosResult MeanWithCi(std::span<const double> scores, double confidence) {
  if (scores.size() < 2) {
    throw ValidationError("confidence interval needs at least 2 scores, got " +
                          std::to_string(scores.size()));
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ValidationError("confidence must lie in (0, 1)");
  }
  const double n = static_cast<double>(scores.size());
  double sum = 0.0;
  for (double s : scores) sum += s;
  const double mean = sum / n;
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  MosResult r;
  r.mean = mean;
  r.count = scores.size();
  r.half_width =
      sd == 0.0 ? 0.0
                : StudentTQuantile((1.0 + confidence) / 2.0, n - 1.0) * sd /
                      std::sqrt(n);
  return r;
}

MosResult MosWithCi(std::span<const MosSample> samples, double confidence) {
  std::vector<double> scores;
  scores.reserve(samples.size());
  for (const auto &s : samples) {
    if (s.score < 1 || s.score > 5) {
      throw ValidationError("MOS score out of range [1, 5]: " +
                            std::to_string(s.score));
    }
    scores.push_back(s.score);
  }
  return MeanWithCi(scores, confidence);
}

namespace {

std::string Trim(const std::string &s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<MosSample> ParseMosCsv(const std::string &text,
                                   const std::string &source) {
  std::vector<MosSample> out;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string col; std::getline(ls, col, ',');) cols.push_back(Trim(col));
    const std::string where = source + ":" + std::to_string(line_no);
    if (cols.size() != 3) {
      throw ValidationError(where + ": expected rater,item,score");
    }
    if (out.empty() && cols[2] == "score") continue;
    int score = 0;
    size_t used = 0;
    try {
      score = std::stoi(cols[2], &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != cols[2].size() || cols[2].empty()) {
      throw ValidationError(where + ": score '" + cols[2] +
                            "' is not an integer");
    }
    if (score < 1 || score > 5) {
      throw ValidationError(where + ": score " + cols[2] +
                            " outside [1, 5]");
    }
    out.push_back({cols[0], cols[1], score});
  }
  return out;
}

std::vector<MosSample> LoadMosCsv(const std::string &path) {
  return ParseMosCsv(ReadFileBytes(path), path);
}

}  // namespace lecgen::eval
