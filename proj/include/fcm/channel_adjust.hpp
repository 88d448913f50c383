// Copyright 2026 The fcmcodec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "fcm/tensor.hpp"

namespace fcm {

/// Binary per-channel map: 1 = removed, 0 = kept. At least one channel
/// is always kept.
struct ActivityMap {
  std::vector<std::uint8_t> removed;
  float threshold_used = 0.0f;

  std::size_t kept_count() const;
  bool operator==(const ActivityMap& o) const { return removed == o.removed; }
};

/// Per-channel dynamic range max - min over spatial positions.
std::vector<float> channel_ranges(const ReducedFeature& z);

/// Threshold T = alpha * mean(ranges); channels with range strictly
/// below T are marked removed. If that would remove everything the
/// single widest-range channel is kept.
ActivityMap activity_map(const std::vector<float>& ranges, float alpha);

/// All-kept map of the given length (channel adjustment disabled).
ActivityMap all_kept_map(std::size_t channel_count);

ReducedFeature drop_channels(const ReducedFeature& z, const ActivityMap& map);

/// Re-inserts kept channels at their original indices and fills each
/// removed channel with the per-position mean of the kept channels.
ReducedFeature restore_channels(const ReducedFeature& kept, const ActivityMap& map);

}  // namespace fcm
