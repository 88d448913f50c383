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

#include "fcm/channel_adjust.hpp"
#include "fcm/conversion.hpp"
#include "fcm/inner_codec.hpp"
#include "fcm/stats.hpp"
#include "fcm/temporal.hpp"
#include "fcm/transform.hpp"

namespace fcm {

/// FCMB container sequence header. Everything the decoder needs that
/// stays fixed for the whole stream.
struct SequenceHeader {
  std::vector<LayerShape> layer_shapes;
  TemporalRatio temporal_ratio = TemporalRatio::x1;
  std::uint32_t original_count = 0;
  TransformId transform_id = TransformId::identity;
  std::uint16_t target_channels = 0;
  std::uint8_t bitdepth = 10;
  std::uint32_t intra_period = 8;
  std::uint32_t refresh_period = 8;
  CodecId codec_id = CodecId::ref_lossless;
  std::uint8_t qshift = 0;

  std::uint32_t kept_frame_count() const;
  std::uint32_t period_count() const;
  std::size_t original_element_count() const;

  bool operator==(const SequenceHeader&) const = default;
};

/// Side information re-signaled once per refresh period.
struct PeriodSideInfo {
  Bfloat16 global_mu;
  Bfloat16 global_sigma;
  ReducedStats reduced_stats;
  ActivityMap activity;
  PackLayout layout;
  TransformSideInfo transform;

  bool operator==(const PeriodSideInfo&) const = default;
};

struct Container {
  SequenceHeader header;
  std::vector<PeriodSideInfo> side;
  std::vector<std::uint8_t> payload;
};

/// Container layout (little-endian): magic "FCMB", version u16, header
/// fields, u32 record count, length-prefixed side records, u64 payload
/// length, payload bytes.
std::vector<std::uint8_t> serialize(const SequenceHeader& header,
                                    const std::vector<PeriodSideInfo>& side,
                                    const std::vector<std::uint8_t>& payload);

Container parse(const std::vector<std::uint8_t>& bytes);

struct RateReport {
  std::uint64_t total_bits = 0;
  double bits_per_second = 0.0;
  double bits_per_element = 0.0;
};

/// Rate accounting over the whole container (header and side info
/// included). bits_per_element is relative to the original feature
/// element count recorded in the header.
RateReport measure_rate(const std::vector<std::uint8_t>& bytes,
                        std::uint32_t frame_count, double fps);

}  // namespace fcm
