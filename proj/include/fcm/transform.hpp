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

#include "fcm/tensor.hpp"

namespace fcm {

enum class TransformId : std::uint8_t { identity = 0, pyramid_fuse = 1 };
enum class ImportanceOrder : std::uint8_t { none = 0, variance_desc = 1 };

struct TransformConfig {
  TransformId transform_id = TransformId::identity;
  /// Per output channel multiplicative gain. Empty means all-ones;
  /// entries must be nonzero.
  std::vector<float> gain_vector;
  /// Channels kept after fusion; 0 keeps every fused channel.
  /// Ignored by the identity transform.
  std::uint32_t target_channels = 0;
  ImportanceOrder importance_order = ImportanceOrder::none;
};

/// Everything the decoder needs to invert a reduce(): the original
/// layer shapes, the channel-importance permutation (empty when
/// ordering is off) and the resolved gain vector.
struct TransformSideInfo {
  TransformId transform_id = TransformId::identity;
  std::vector<LayerShape> original_shapes;
  std::vector<std::uint16_t> permutation;
  std::vector<float> gain;

  bool operator==(const TransformSideInfo&) const = default;
};

struct ReduceResult {
  ReducedFeature reduced;
  TransformSideInfo side;
};

/// Fuses the multi-scale layers of x into one reduced tensor.
///
/// pyramid_fuse: every layer is average-pooled down to half the
/// smallest layer's resolution, channels are concatenated, optionally
/// permuted by descending per-channel variance, truncated to
/// target_channels and scaled by the gain vector. identity: the single
/// layer passes through (gain still applies).
ReduceResult reduce(const FeatureSet& x, const TransformConfig& cfg);

/// Same reduction but reusing previously computed side info (the
/// encoder holds the permutation fixed across a refresh period).
ReducedFeature reduce_with(const FeatureSet& x, const TransformConfig& cfg,
                           const TransformSideInfo& side);

/// Inverts reduce: inverse gain, truncated channels reconstituted as
/// zeros, permutation undone, channels regrouped per layer and
/// upsampled back to the recorded shapes by nearest-neighbor
/// replication.
FeatureSet restore(const ReducedFeature& z, const TransformSideInfo& side,
                   const TransformConfig& cfg);

/// Permutation sorting channels by descending per-channel variance;
/// ties keep the lower original index first. permutation[k] is the
/// source channel index of output position k.
std::vector<std::uint16_t> channel_importance(const ReducedFeature& z);

}  // namespace fcm
