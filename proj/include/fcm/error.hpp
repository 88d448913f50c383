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

#include <stdexcept>
#include <string>

namespace fcm {

enum class Errc {
  // feature file I/O
  bad_magic,
  truncated_file,
  shape_mismatch,
  non_finite_value,
  io_failure,
  empty_sequence,
  // statistics
  empty_layer,
  empty_tensor,
  non_finite,
  // temporal resampling
  plan_mismatch,
  // reduction transform
  non_dyadic_pyramid,
  identity_with_multiple_layers,
  target_channels_too_large,
  side_info_mismatch,
  // channel adjustment
  invalid_alpha,
  length_mismatch,
  // conversion
  layout_mismatch,
  // inner codec
  external_codec_failure,
  empty_input,
  corrupt_payload,
  odd_byte_length,
  sample_out_of_range,
  // container
  inconsistent_record_count,
  unsupported_version,
  truncated,
  overlong_length,
  // evaluation
  no_quality_overlap,
  too_few_points,
  zero_timing,
  invalid_curve,
  // configuration
  invalid_config,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fcm
