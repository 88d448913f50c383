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

#include "fcm/stats.hpp"

#include <bit>
#include <cmath>

namespace fcm {

MeanStd mean_std(std::span<const float> values) {
  double sum = 0.0;
  for (float v : values) sum += v;
  const double mu = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (float v : values) {
    const double d = static_cast<double>(v) - mu;
    sq += d * d;
  }
  return {mu, std::sqrt(sq / static_cast<double>(values.size()))};
}

GlobalStats global_stats(const FeatureSet& x) {
  double mu_sum = 0.0;
  double var_sum = 0.0;
  for (const auto& layer : x.layers()) {
    if (layer.size() == 0) raise(Errc::empty_layer, "layer has no elements");
    const MeanStd ms = mean_std(layer.data());
    mu_sum += ms.mu;
    var_sum += ms.sigma * ms.sigma;
  }
  return {static_cast<float>(mu_sum), static_cast<float>(std::sqrt(var_sum))};
}

ReducedStats reduced_stats(const ReducedFeature& z) {
  if (z.size() == 0) raise(Errc::empty_tensor, "reduced feature has no elements");
  const MeanStd ms = mean_std(z.data());
  return {static_cast<float>(ms.mu), static_cast<float>(ms.sigma)};
}

Bfloat16 to_bfloat16(float v) {
  if (!std::isfinite(v)) raise(Errc::non_finite, "bfloat16 input must be finite");
  const std::uint32_t bits = std::bit_cast<std::uint32_t>(v);
  const std::uint32_t lsb = (bits >> 16) & 1u;
  std::uint32_t rounded = (bits + 0x7FFFu + lsb) >> 16;
  // Rounding can carry into the exponent and produce an infinity; clamp
  // to the largest finite value of the same sign.
  if ((rounded & 0x7FFFu) == 0x7F80u) rounded = (rounded & 0x8000u) | 0x7F7Fu;
  return {static_cast<std::uint16_t>(rounded)};
}

float from_bfloat16(Bfloat16 b) {
  return std::bit_cast<float>(static_cast<std::uint32_t>(b.bits) << 16);
}

}  // namespace fcm
