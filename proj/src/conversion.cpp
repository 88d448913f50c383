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

#include "fcm/conversion.hpp"

#include <algorithm>
#include <cmath>

namespace fcm {

PackedFrame::PackedFrame(std::uint32_t height, std::uint32_t width,
                         std::vector<std::uint16_t> samples, std::uint8_t bitdepth)
    : height_(height), width_(width), samples_(std::move(samples)), bitdepth_(bitdepth) {
  if (bitdepth_ == 0 || bitdepth_ > 16)
    raise(Errc::invalid_config, "bitdepth must lie in [1, 16]");
  if (samples_.size() != static_cast<std::size_t>(height_) * width_)
    raise(Errc::shape_mismatch, "sample count does not match frame dims");
  const std::uint32_t limit = 1u << bitdepth_;
  for (std::uint16_t s : samples_)
    if (s >= limit) raise(Errc::sample_out_of_range, "sample exceeds bitdepth range");
}

PackResult pack(const ReducedFeature& z) {
  PackLayout layout;
  layout.channel_count = static_cast<std::uint16_t>(z.channels());
  layout.channel_h = static_cast<std::uint16_t>(z.height());
  layout.channel_w = static_cast<std::uint16_t>(z.width());
  layout.grid_cols = static_cast<std::uint16_t>(
      std::ceil(std::sqrt(static_cast<double>(z.channels()))));
  layout.grid_rows = static_cast<std::uint16_t>(
      (z.channels() + layout.grid_cols - 1) / layout.grid_cols);

  RawFrame frame;
  frame.height = layout.frame_height();
  frame.width = layout.frame_width();
  frame.samples.assign(static_cast<std::size_t>(frame.height) * frame.width, 0.0f);

  for (std::size_t c = 0; c < z.channels(); ++c) {
    const std::size_t tile_row = c / layout.grid_cols;
    const std::size_t tile_col = c % layout.grid_cols;
    const auto ch = z.channel(c);
    for (std::size_t y = 0; y < z.height(); ++y) {
      const std::size_t dst =
          (tile_row * z.height() + y) * frame.width + tile_col * z.width();
      std::copy_n(ch.data() + y * z.width(), z.width(), frame.samples.data() + dst);
    }
  }
  return {std::move(frame), layout};
}

ReducedFeature unpack(const RawFrame& frame, const PackLayout& layout) {
  if (frame.height != layout.frame_height() || frame.width != layout.frame_width())
    raise(Errc::layout_mismatch, "frame dims do not match layout");
  if (layout.channel_count >
      static_cast<std::uint32_t>(layout.grid_rows) * layout.grid_cols)
    raise(Errc::layout_mismatch, "layout grid too small for channel count");

  const std::size_t plane =
      static_cast<std::size_t>(layout.channel_h) * layout.channel_w;
  std::vector<float> data(layout.channel_count * plane);
  for (std::size_t c = 0; c < layout.channel_count; ++c) {
    const std::size_t tile_row = c / layout.grid_cols;
    const std::size_t tile_col = c % layout.grid_cols;
    for (std::size_t y = 0; y < layout.channel_h; ++y) {
      const std::size_t src =
          (tile_row * layout.channel_h + y) * frame.width + tile_col * layout.channel_w;
      std::copy_n(frame.samples.data() + src, layout.channel_w,
                  data.data() + c * plane + y * layout.channel_w);
    }
  }
  return ReducedFeature(layout.channel_count, layout.channel_h, layout.channel_w,
                        std::move(data));
}

NormalizeResult normalize(const RawFrame& frame) {
  NormalizeResult out;
  out.frame.height = frame.height;
  out.frame.width = frame.width;
  out.frame.samples.resize(frame.samples.size());
  if (frame.samples.empty()) return out;

  const auto [lo, hi] = std::minmax_element(frame.samples.begin(), frame.samples.end());
  out.params = {*lo, *hi};
  const float span = *hi - *lo;
  if (span == 0.0f) return out;  // constant frame maps to all zeros

  for (std::size_t i = 0; i < frame.samples.size(); ++i)
    out.frame.samples[i] =
        std::clamp((frame.samples[i] - *lo) / span, 0.0f, 1.0f);
  return out;
}

PackedFrame quantize(const RawFrame& frame, std::uint8_t bitdepth) {
  const std::int32_t levels = 1 << bitdepth;
  std::vector<std::uint16_t> q(frame.samples.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto v = static_cast<std::int32_t>(
        std::floor(frame.samples[i] * static_cast<float>(levels)));
    q[i] = static_cast<std::uint16_t>(std::clamp(v, 0, levels - 1));
  }
  return PackedFrame(frame.height, frame.width, std::move(q), bitdepth);
}

RawFrame dequantize(const PackedFrame& frame) {
  RawFrame out;
  out.height = frame.height();
  out.width = frame.width();
  out.samples.resize(frame.samples().size());
  const float divisor = static_cast<float>((1 << frame.bitdepth()) - 1);
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] = static_cast<float>(frame.samples()[i]) / divisor;
  return out;
}

ReducedFeature refine_reduced(const ReducedFeature& z_dq, const ReducedStats& stats) {
  const MeanStd own = mean_std(z_dq.data());
  std::vector<float> data(z_dq.size());
  if (own.sigma == 0.0) {
    std::fill(data.begin(), data.end(), stats.mu);
  } else {
    const double scale = static_cast<double>(stats.sigma) / own.sigma;
    for (std::size_t i = 0; i < data.size(); ++i)
      data[i] = static_cast<float>((z_dq.data()[i] - own.mu) * scale + stats.mu);
  }
  return ReducedFeature(z_dq.channels(), z_dq.height(), z_dq.width(), std::move(data));
}

}  // namespace fcm
