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

#ifndef LECGEN_VIDEO_AUGMENT_H_
#define LECGEN_VIDEO_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "common/error.h"

namespace lecgen::video {

inline constexpr double kDefaultRatio = 0.2;
// Suggested ratio ranges for short and long reference clips.
inline constexpr double kShortClipRatioMin = 0.1, kShortClipRatioMax = 0.3;
inline constexpr double kLongClipRatioMin = 0.1, kLongClipRatioMax = 0.4;

struct AugmentParams {
  size_t t = 0;        // reference length in frames
  size_t t_prime = 0;  // target length in frames
  double r = kDefaultRatio;
  uint64_t seed = 0;

  // Requires t >= 2, 0 < r < 0.5 and r * t >= 1.
  void Validate() const;

  // Turning zones on 0-based frame indices: [0, low_max] and
  // [high_min, t - 1], high_min = ceil((1 - r)(t - 1)).
  size_t high_min() const;
  size_t low_max() const { return t - 1 - high_min(); }
};

struct FramePlan {
  size_t t = 0;
  std::vector<size_t> indices;

  bool operator==(const FramePlan &) const = default;
};

// Draws an integer uniformly from [lo, hi].
using ZoneSampler = std::function<size_t(size_t lo, size_t hi)>;

// Ping-pong walk over the reference frames. The start is drawn from the low
// zone and each turning point from the far zone; the walk moves one frame
// per output step and the turning frame is emitted once.
FramePlan Plan(const AugmentParams &params);
FramePlan Plan(const AugmentParams &params, const ZoneSampler &sample);

// Empty iff the plan is gap-free, in range and turns only inside the zones.
std::vector<std::string> ValidatePlan(const FramePlan &plan,
                                      const AugmentParams &params);

template <typename T>
std::vector<T> ApplyPlan(const FramePlan &plan, std::span<const T> frames) {
  if (frames.size() != plan.t) {
    throw ValidationError("plan was built for " + std::to_string(plan.t) +
                          " frames but " + std::to_string(frames.size()) +
                          " were given");
  }
  std::vector<T> out;
  out.reserve(plan.indices.size());
  for (size_t idx : plan.indices) {
    if (idx >= frames.size()) {
      throw ValidationError("plan index " + std::to_string(idx) +
                            " out of range for " +
                            std::to_string(frames.size()) + " frames");
    }
    out.push_back(frames[idx]);
  }
  return out;
}

// {t, t_prime, r, seed, indices:[...]}
std::string PlanToJson(const FramePlan &plan, const AugmentParams &params);
FramePlan PlanFromJson(const std::string &json_text,
                       AugmentParams *params = nullptr);

// Frames directory convention: frame_%06d.png
std::string FrameFileName(size_t index);
// Number of consecutive frame files starting at frame_000000.png.
size_t CountFrames(const std::string &dir);
// Copies src/frame_{plan[i]} to dst/frame_{i} for every i.
void ApplyPlanToDirectory(const FramePlan &plan, const std::string &src_dir,
                          const std::string &dst_dir);

}  // namespace lecgen::video

#endif  // LECGEN_VIDEO_AUGMENT_H_
