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

#ifndef LECGEN_EVAL_MOS_H_
#define LECGEN_EVAL_MOS_H_

#include <span>
#include <string>
#include <vector>

namespace lecgen::eval {

struct MosSample {
  std::string rater;
  std::string item;
  int score = 0;  // 1 (worst) .. 5 (best)
};

struct MosResult {
  double mean = 0.0;
  double half_width = 0.0;
  size_t count = 0;

  // "M.MM±H.HH"
  std::string Format() const;
};

// Student-t interval: half_width = t_{n-1, (1+confidence)/2} * s / sqrt(n)
// with the sample standard deviation s. Needs at least two samples.
MosResult MosWithCi(std::span<const MosSample> samples,
                    double confidence = 0.95);
MosResult MeanWithCi(std::span<const double> scores, double confidence = 0.95);

// Upper quantile of Student's t distribution with `df` degrees of freedom.
double StudentTQuantile(double probability, double df);

// CSV `rater,item,score`; a leading header row is skipped.
std::vector<MosSample> ParseMosCsv(const std::string &text,
                                   const std::string &source);
std::vector<MosSample> LoadMosCsv(const std::string &path);

std::string FormatMeanCi(double mean, double half_width);

}  // namespace lecgen::eval

#endif  // LECGEN_EVAL_MOS_H_
