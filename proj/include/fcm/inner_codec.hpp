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

#include "fcm/conversion.hpp"

namespace fcm {

enum class CodecId : std::uint8_t { ref_lossless = 0, ref_lossy = 1, external = 2 };

struct CodecConfig {
  CodecId codec_id = CodecId::ref_lossless;
  /// Right-shift applied before the lossless path (ref_lossy), 0..8.
  std::uint8_t qshift = 0;
  std::uint32_t intra_period = 8;
  /// Command templates for the external bridge; placeholders
  /// {in} {out} {w} {h} {frames} {intra} are substituted.
  std::string external_cmd_encode;
  std::string external_cmd_decode;
};

void validate(const CodecConfig& cfg);

struct FrameMeta {
  std::uint32_t frame_count = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint8_t bitdepth = 10;
};

/// Reference codec: per frame, each sample is predicted from its left
/// neighbor (row starts from the sample above, the frame origin from
/// mid-range), residuals are zigzag-mapped and order-0 Exp-Golomb
/// coded. ref_lossy right-shifts samples by qshift first. external
/// writes raw YUV 4:0:0 and shells out to the configured command.
std::vector<std::uint8_t> encode_frames(const std::vector<PackedFrame>& frames,
                                        const CodecConfig& cfg);

std::vector<PackedFrame> decode_frames(const std::vector<std::uint8_t>& payload,
                                       const FrameMeta& meta, const CodecConfig& cfg);

/// Raw planar luma-only frames, one 16-bit little-endian word per
/// sample, valid range 0..1023, concatenated in temporal order.
std::vector<std::uint8_t> write_yuv400_10(const std::vector<PackedFrame>& frames);
std::vector<PackedFrame> read_yuv400_10(const std::vector<std::uint8_t>& bytes,
                                        const FrameMeta& meta);

}  // namespace fcm
