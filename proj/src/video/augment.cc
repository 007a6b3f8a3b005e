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

#include "video/augment.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "common/rng.h"
#include "json.hpp"

namespace lecgen::video {

namespace fs = std::filesystem;

void AugmentParams::Validate() const {
  if (t < 2) throw ValidationError("reference video needs at least 2 frames");
  if (!(r > 0.0 && r < 0.5)) {
    throw ValidationError("constrain ratio r must lie in (0, 0.5)");
  }
  if (r * static_cast<double>(t) < 1.0) {
    throw ValidationError("r * t must be at least 1 (r=" + std::to_string(r) +
                          ", t=" + std::to_string(t) + ")");
  }
  if (high_min() <= low_max()) {
    throw ValidationError("turning zones overlap for r=" + std::to_string(r));
  }
}

size_t AugmentParams::high_min() const {
  const double edge = (1.0 - r) * static_cast<double>(t - 1);
  return static_cast<size_t>(std::ceil(edge - 1e-9));
}

FramePlan Plan(const AugmentParams &params) {
  Rng rng(params.seed);
  return Plan(params, [&rng](size_t lo, size_t hi) {
    return static_cast<size_t>(
        rng.UniformInt(static_cast<int64_t>(lo), static_cast<int64_t>(hi)));
  });
}

FramePlan Plan(const AugmentParams &params, const ZoneSampler &sample) {
  params.Validate();
  const size_t last = params.t - 1;
  const size_t high_min = params.high_min();
  const size_t low_max = params.low_max();

  // Positions are in the current walking direction's coordinates; reversing
  // the clip maps position j to last - j.
  auto draw_end = [&](size_t pos) {
    size_t end = sample(high_min, last);
    while (end <= pos) end = sample(high_min, last);
    return end;
  };
  size_t pos = sample(0, low_max);
  size_t end = draw_end(pos);
  bool forward = true;

  FramePlan plan;
  plan.t = params.t;
  plan.indices.reserve(params.t_prime);
  for (size_t i = 0; i < params.t_prime; ++i) {
    plan.indices.push_back(forward ? pos : last - pos);
    ++pos;
    if (pos == end) {
      forward = !forward;
      pos = last - pos;
      end = draw_end(pos);
    }
  }
  return plan;
}

std::vector<std::string> ValidatePlan(const FramePlan &plan,
                                      const AugmentParams &params) {
  std::vector<std::string> diags;
  const auto &idx = plan.indices;
  if (plan.t != params.t) {
    diags.push_back("plan reference length " + std::to_string(plan.t) +
                    " differs from t=" + std::to_string(params.t));
  }
  if (idx.size() != params.t_prime) {
    diags.push_back("plan length " + std::to_string(idx.size()) +
                    " differs from t_prime=" + std::to_string(params.t_prime));
  }
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= params.t) {
      diags.push_back("index out of range at position " + std::to_string(i) +
                      " (" + std::to_string(idx[i]) + ")");
    }
  }
  for (size_t i = 1; i < idx.size(); ++i) {
    const auto delta = static_cast<long long>(idx[i]) -
                       static_cast<long long>(idx[i - 1]);
    if (delta != 1 && delta != -1) {
      diags.push_back("gap at position " + std::to_string(i) + " (delta " +
                      std::to_string(delta) + ")");
    }
  }
  if (params.t < 2 || !(params.r > 0.0 && params.r < 0.5)) return diags;
  const size_t high_min = params.high_min();
  const size_t low_max = params.low_max();
  for (size_t i = 1; i + 1 < idx.size(); ++i) {
    const bool peak = idx[i] > idx[i - 1] && idx[i] > idx[i + 1];
    const bool valley = idx[i] < idx[i - 1] && idx[i] < idx[i + 1];
    if (peak && idx[i] < high_min) {
      diags.push_back("turn outside high zone at position " +
                      std::to_string(i) + " (index " + std::to_string(idx[i]) +
                      ", zone starts at " + std::to_string(high_min) + ")");
    }
    if (valley && idx[i] > low_max) {
      diags.push_back("turn outside low zone at position " + std::to_string(i) +
                      " (index " + std::to_string(idx[i]) + ", zone ends at " +
                      std::to_string(low_max) + ")");
    }
  }
  return diags;
}

std::string PlanToJson(const FramePlan &plan, const AugmentParams &params) {
  nlohmann::ordered_json j;
  j["t"] = params.t;
  j["t_prime"] = params.t_prime;
  j["r"] = params.r;
  j["seed"] = params.seed;
  j["indices"] = plan.indices;
  return j.dump() + "\n";
}

FramePlan PlanFromJson(const std::string &json_text, AugmentParams *params) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    FramePlan plan;
    plan.t = j.at("t").get<size_t>();
    plan.indices = j.at("indices").get<std::vector<size_t>>();
    if (params) {
      params->t = plan.t;
      params->t_prime = j.at("t_prime").get<size_t>();
      params->r = j.at("r").get<double>();
      params->seed = j.at("seed").get<uint64_t>();
    }
    return plan;
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("bad plan file: ") + e.what());
  }
}

std::string FrameFileName(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06zu.png", index);
  return buf;
}

size_t CountFrames(const std::string &dir) {
  if (!fs::is_directory(dir)) {
    throw ValidationError("frames directory not found: " + dir);
  }
  size_t n = 0;
  while (fs::exists(fs::path(dir) / FrameFileName(n))) ++n;
  return n;
}

void ApplyPlanToDirectory(const FramePlan &plan, const std::string &src_dir,
                          const std::string &dst_dir) {
  const size_t available = CountFrames(src_dir);
  if (available != plan.t) {
    throw ValidationError("plan was built for " + std::to_string(plan.t) +
                          " frames but " + src_dir + " holds " +
                          std::to_string(available));
  }
  fs::create_directories(dst_dir);
  for (size_t i = 0; i < plan.indices.size(); ++i) {
    if (plan.indices[i] >= plan.t) {
      throw ValidationError("plan index " + std::to_string(plan.indices[i]) +
                            " out of range");
    }
    fs::copy_file(fs::path(src_dir) / FrameFileName(plan.indices[i]),
                  fs::path(dst_dir) / FrameFileName(i),
                  fs::copy_options::overwrite_existing);
  }
}

}  // namespace lecgen::video
