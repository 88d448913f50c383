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

enum class TemporalRatio : std::uint8_t { x1 = 1, x2 = 2 };

/// Which original indices survive downsampling. Under 2x the even
/// indices are kept, plus the last set when its index is odd; every
/// discarded index therefore has kept neighbors at distance one on
/// both sides.
struct TemporalPlan {
  TemporalRatio ratio = TemporalRatio::x1;
  std::uint32_t original_count = 0;
  std::vector<std::uint32_t> kept_indices;
};

TemporalPlan make_temporal_plan(TemporalRatio ratio, std::uint32_t original_count);

struct DownsampleResult {
  FeatureSequence kept;
  TemporalPlan plan;
};

DownsampleResult downsample(const FeatureSequence& seq, TemporalRatio ratio);

/// Rebuilds the full sequence: kept sets pass through bit-exactly,
/// each discarded set is the elementwise average of its two kept
/// neighbors.
FeatureSequence upsample(const FeatureSequence& kept, const TemporalPlan& plan);

}  // namespace fcm
