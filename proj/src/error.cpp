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

#include "fcm/error.hpp"

namespace fcm {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::bad_magic: return "BadMagic";
    case Errc::truncated_file: return "TruncatedFile";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::non_finite_value: return "NonFiniteValue";
    case Errc::io_failure: return "IoFailure";
    case Errc::empty_sequence: return "EmptySequence";
    case Errc::empty_layer: return "EmptyLayer";
    case Errc::empty_tensor: return "EmptyTensor";
    case Errc::non_finite: return "NonFinite";
    case Errc::plan_mismatch: return "PlanMismatch";
    case Errc::non_dyadic_pyramid: return "NonDyadicPyramid";
    case Errc::identity_with_multiple_layers: return "IdentityWithMultipleLayers";
    case Errc::target_channels_too_large: return "TargetChannelsTooLarge";
    case Errc::side_info_mismatch: return "SideInfoMismatch";
    case Errc::invalid_alpha: return "InvalidAlpha";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::layout_mismatch: return "LayoutMismatch";
    case Errc::external_codec_failure: return "ExternalCodecFailure";
    case Errc::empty_input: return "EmptyInput";
    case Errc::corrupt_payload: return "CorruptPayload";
    case Errc::odd_byte_length: return "OddByteLength";
    case Errc::sample_out_of_range: return "SampleOutOfRange";
    case Errc::inconsistent_record_count: return "InconsistentRecordCount";
    case Errc::unsupported_version: return "UnsupportedVersion";
    case Errc::truncated: return "Truncated";
    case Errc::overlong_length: return "OverlongLength";
    case Errc::no_quality_overlap: return "NoQualityOverlap";
    case Errc::too_few_points: return "TooFewPoints";
    case Errc::zero_timing: return "ZeroTiming";
    case Errc::invalid_curve: return "InvalidCurve";
    case Errc::invalid_config: return "InvalidConfig";
  }
  return "UnknownError";
}

}  // namespace fcm
