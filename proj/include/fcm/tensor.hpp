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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fcm/error.hpp"

namespace fcm {

struct LayerShape {
  std::uint32_t channels = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;

  std::size_t element_count() const {
    return static_cast<std::size_t>(channels) * height * width;
  }
  bool operator==(const LayerShape&) const = default;
};

/// One feature layer: dense 32-bit reals in row-major C,H,W order.
/// Validated on construction: size matches the shape, all values finite.
class FeatureLayer {
 public:
  FeatureLayer(std::uint32_t channels, std::uint32_t height,
               std::uint32_t width, std::vector<float> data);

  std::uint32_t channels() const { return shape_.channels; }
  std::uint32_t height() const { return shape_.height; }
  std::uint32_t width() const { return shape_.width; }
  const LayerShape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  const std::vector<float>& data() const { return data_; }
  float at(std::size_t c, std::size_t y, std::size_t x) const {
    return data_[(c * shape_.height + y) * shape_.width + x];
  }
  std::span<const float> channel(std::size_t c) const {
    const std::size_t plane = static_cast<std::size_t>(shape_.height) * shape_.width;
    return {data_.data() + c * plane, plane};
  }

 private:
  LayerShape shape_;
  std::vector<float> data_;
};

/// One timestep: an ordered list of feature layers. Layer order is
/// significant and preserved through every operation.
class FeatureSet {
 public:
  explicit FeatureSet(std::vector<FeatureLayer> layers);

  std::size_t layer_count() const { return layers_.size(); }
  const FeatureLayer& layer(std::size_t n) const { return layers_[n]; }
  const std::vector<FeatureLayer>& layers() const { return layers_; }

  std::vector<LayerShape> shape_signature() const;
  std::size_t element_count() const;

 private:
  std::vector<FeatureLayer> layers_;
};

/// Time-series of feature sets, all shape-congruent.
class FeatureSequence {
 public:
  FeatureSequence() = default;
  explicit FeatureSequence(std::vector<FeatureSet> sets);

  void append(FeatureSet set);

  bool empty() const { return sets_.empty(); }
  std::size_t set_count() const { return sets_.size(); }
  const FeatureSet& set(std::size_t t) const { return sets_[t]; }
  const std::vector<FeatureSet>& sets() const { return sets_; }

 private:
  std::vector<FeatureSet> sets_;
};

/// Single 3-D tensor produced by the reduction transform.
class ReducedFeature {
 public:
  ReducedFeature(std::uint32_t channels, std::uint32_t height,
                 std::uint32_t width, std::vector<float> data);

  std::uint32_t channels() const { return shape_.channels; }
  std::uint32_t height() const { return shape_.height; }
  std::uint32_t width() const { return shape_.width; }
  const LayerShape& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  const std::vector<float>& data() const { return data_; }
  std::span<const float> channel(std::size_t c) const {
    const std::size_t plane = static_cast<std::size_t>(shape_.height) * shape_.width;
    return {data_.data() + c * plane, plane};
  }

 private:
  LayerShape shape_;
  std::vector<float> data_;
};

/// Per-layer dims of the first set; identical for every set by invariant.
std::vector<LayerShape> shape_signature(const FeatureSequence& seq);

/// FCFT feature file format (all integers little-endian):
///   magic "FCFT", version u16 (=1), T u32, N u16,
///   N x (C u32, H u32, W u32),
///   payload: T x N layers concatenated, row-major 32-bit IEEE-754 LE.
FeatureSequence load_feature_sequence(const std::string& path);
void save_feature_sequence(const FeatureSequence& seq, const std::string& path);

FeatureSequence decode_feature_sequence(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_feature_sequence(const FeatureSequence& seq);

}  // namespace fcm
