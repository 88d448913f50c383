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
#include <string>
#include <vector>

#include "fcm/bitstream.hpp"

namespace fcm {

struct EncoderConfig {
  TransformConfig transform;
  CodecConfig codec;
  TemporalRatio temporal_ratio = TemporalRatio::x1;
  /// Channel-adjustment threshold scale in (0, 1); 0 disables the tool.
  float alpha = 0.0f;
  std::uint8_t bitdepth = 10;
  /// Side-info cadences in kept-frame units; 0 means "follow the inner
  /// codec intra period".
  std::uint32_t refresh_period = 0;
  std::uint32_t global_stats_period = 0;
};

void validate(const EncoderConfig& cfg);

/// Runs the encoder stages in order: per-period global stats
/// (bfloat16), temporal downsampling, reduction transform, channel
/// adjustment, reduced stats, packing, normalization, quantization,
/// inner encoding, container serialization.
std::vector<std::uint8_t> encode(const FeatureSequence& seq, const EncoderConfig& cfg);

/// Decoder-local settings that are not part of the stream.
struct DecodeOptions {
  /// Command template for streams encoded with the external codec.
  std::string external_cmd_decode;
};

/// Pure function of the container bytes: inner decoding,
/// dequantization, unpacking, reduced refinement, channel restoration,
/// inverse transform, temporal upsampling, restored refinement.
FeatureSequence decode(const std::vector<std::uint8_t>& bytes,
                       const DecodeOptions& opts = {});

/// Standardizes every layer by the summed per-layer statistics of y
/// and rescales to the signaled global stats. Degenerate zero
/// deviation falls back to a mean shift.
FeatureSet refine_restored(const FeatureSet& y, const GlobalStats& g);

}  // namespace fcm
