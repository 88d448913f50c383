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

#include "fcm/stats.hpp"
#include "fcm/tensor.hpp"

namespace fcm {

/// Real-valued single-channel frame (pack output, dequantize output).
struct RawFrame {
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::vector<float> samples;
};

/// Integer frame handed to the inner codec; samples < 2^bitdepth.
class PackedFrame {
 public:
  PackedFrame(std::uint32_t height, std::uint32_t width,
              std::vector<std::uint16_t> samples, std::uint8_t bitdepth);

  std::uint32_t height() const { return height_; }
  std::uint32_t width() const { return width_; }
  std::uint8_t bitdepth() const { return bitdepth_; }
  const std::vector<std::uint16_t>& samples() const { return samples_; }

  bool operator==(const PackedFrame&) const = default;

 private:
  std::uint32_t height_;
  std::uint32_t width_;
  std::vector<std::uint16_t> samples_;
  std::uint8_t bitdepth_;
};

/// How channels tile into the frame: channel c sits at tile
/// (c / grid_cols, c % grid_cols), unoccupied tiles are zero.
struct PackLayout {
  std::uint16_t grid_rows = 0;
  std::uint16_t grid_cols = 0;
  std::uint16_t channel_h = 0;
  std::uint16_t channel_w = 0;
  std::uint16_t channel_count = 0;

  std::uint32_t frame_height() const { return static_cast<std::uint32_t>(grid_rows) * channel_h; }
  std::uint32_t frame_width() const { return static_cast<std::uint32_t>(grid_cols) * channel_w; }
  bool operator==(const PackLayout&) const = default;
};

/// Min/max used for normalization. Encoder-internal: the decoder
/// recovers scale through reduced-feature refinement instead.
struct NormParams {
  float z_min = 0.0f;
  float z_max = 0.0f;
};

struct PackResult {
  RawFrame frame;
  PackLayout layout;
};

/// Tiles channels row-major into a near-square grid
/// (grid_cols = ceil(sqrt(C'))).
PackResult pack(const ReducedFeature& z);

struct NormalizeResult {
  RawFrame frame;
  NormParams params;
};

/// Min-max normalization into [0, 1]; a constant frame maps to zeros.
NormalizeResult normalize(const RawFrame& frame);

/// z_q = clamp(floor(z_norm * 2^bitdepth), 0, 2^bitdepth - 1).
PackedFrame quantize(const RawFrame& frame, std::uint8_t bitdepth);

/// z_dq = z_q / (2^bitdepth - 1). The divisor intentionally differs
/// from the quantizer's multiplier; the residual error is bounded by
/// 2^-bitdepth and absorbed by refinement.
RawFrame dequantize(const PackedFrame& frame);

/// Inverse of pack's tiling; padding tiles are discarded.
ReducedFeature unpack(const RawFrame& frame, const PackLayout& layout);

/// Standardizes z_dq by its own statistics and rescales to the
/// signaled ones, so the output has mean mu_z and deviation sigma_z.
/// Degenerate sigma(z_dq) == 0 yields the constant mu_z.
ReducedFeature refine_reduced(const ReducedFeature& z_dq, const ReducedStats& stats);

}  // namespace fcm
