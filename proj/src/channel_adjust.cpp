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

#include "fcm/channel_adjust.hpp"

#include <algorithm>

namespace fcm {

std::size_t ActivityMap::kept_count() const {
  return static_cast<std::size_t>(
      std::count(removed.begin(), removed.end(), std::uint8_t{0}));
}

std::vector<float> channel_ranges(const ReducedFeature& z) {
  std::vector<float> ranges(z.channels());
  for (std::size_t c = 0; c < z.channels(); ++c) {
    const auto ch = z.channel(c);
    float lo = ch[0];
    float hi = ch[0];
    for (float v : ch) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ranges[c] = hi - lo;
  }
  return ranges;
}

ActivityMap activity_map(const std::vector<float>& ranges, float alpha) {
  if (ranges.empty()) raise(Errc::empty_tensor, "no channel ranges");
  if (!(alpha > 0.0f && alpha < 1.0f))
    raise(Errc::invalid_alpha, "alpha must lie in (0, 1)");

  double sum = 0.0;
  for (float r : ranges) sum += r;
  const float threshold = alpha * static_cast<float>(sum / ranges.size());

  ActivityMap map;
  map.threshold_used = threshold;
  map.removed.resize(ranges.size());
  std::size_t kept = 0;
  for (std::size_t c = 0; c < ranges.size(); ++c) {
    map.removed[c] = ranges[c] < threshold ? 1 : 0;
    kept += map.removed[c] == 0;
  }
  if (kept == 0) {
    const auto widest = std::max_element(ranges.begin(), ranges.end());
    map.removed[static_cast<std::size_t>(widest - ranges.begin())] = 0;
  }
  return map;
}

ActivityMap all_kept_map(std::size_t channel_count) {
  ActivityMap map;
  map.removed.assign(channel_count, 0);
  return map;
}

ReducedFeature drop_channels(const ReducedFeature& z, const ActivityMap& map) {
  if (map.removed.size() != z.channels())
    raise(Errc::length_mismatch, "activity map length does not match channels");

  const std::size_t plane = static_cast<std::size_t>(z.height()) * z.width();
  std::vector<float> data;
  data.reserve(map.kept_count() * plane);
  for (std::size_t c = 0; c < z.channels(); ++c) {
    if (map.removed[c]) continue;
    const auto ch = z.channel(c);
    data.insert(data.end(), ch.begin(), ch.end());
  }
  return ReducedFeature(static_cast<std::uint32_t>(map.kept_count()), z.height(),
                        z.width(), std::move(data));
}

ReducedFeature restore_channels(const ReducedFeature& kept, const ActivityMap& map) {
  if (kept.channels() != map.kept_count())
    raise(Errc::length_mismatch, "kept channel count does not match activity map");

  const std::size_t plane = static_cast<std::size_t>(kept.height()) * kept.width();

  // Per-position mean across the kept channels.
  std::vector<float> fill(plane, 0.0f);
  for (std::size_t c = 0; c < kept.channels(); ++c) {
    const auto ch = kept.channel(c);
    for (std::size_t i = 0; i < plane; ++i) fill[i] += ch[i];
  }
  for (float& v : fill) v /= static_cast<float>(kept.channels());

  std::vector<float> data(map.removed.size() * plane);
  std::size_t next_kept = 0;
  for (std::size_t c = 0; c < map.removed.size(); ++c) {
    if (map.removed[c]) {
      std::copy(fill.begin(), fill.end(), data.begin() + static_cast<std::ptrdiff_t>(c * plane));
    } else {
      const auto ch = kept.channel(next_kept++);
      std::copy(ch.begin(), ch.end(), data.begin() + static_cast<std::ptrdiff_t>(c * plane));
    }
  }
  return ReducedFeature(static_cast<std::uint32_t>(map.removed.size()), kept.height(),
                        kept.width(), std::move(data));
}

}  // namespace fcm
