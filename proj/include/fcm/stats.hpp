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
#include <span>

#include "fcm/tensor.hpp"

namespace fcm {

/// Global feature statistics signaled to the decoder.
/// mu is the SUM of per-layer means; sigma the square root of the sum
/// of per-layer population variances. Signaled as two bfloat16 values.
struct GlobalStats {
  float mu = 0.0f;
  float sigma = 0.0f;
};

/// Reduced-feature statistics, signaled at 32-bit precision.
struct ReducedStats {
  float mu = 0.0f;
  float sigma = 0.0f;
};

/// 16-bit brain floating point: 1 sign, 8 exponent, 7 mantissa bits.
struct Bfloat16 {
  std::uint16_t bits = 0;
  bool operator==(const Bfloat16&) const = default;
};

GlobalStats global_stats(const FeatureSet& x);
ReducedStats reduced_stats(const ReducedFeature& z);

/// Mean and population standard deviation of a flat span, accumulated
/// sequentially in index order (reproducible across platforms).
struct MeanStd {
  double mu = 0.0;
  double sigma = 0.0;
};
MeanStd mean_std(std::span<const float> values);

/// Round-to-nearest-even truncation of the top 16 bits of the IEEE-754
/// encoding; saturates to the largest finite bfloat16 instead of
/// overflowing to infinity. Rejects non-finite input.
Bfloat16 to_bfloat16(float v);
float from_bfloat16(Bfloat16 b);

}  // namespace fcm
