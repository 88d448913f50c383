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

#include "fcm/tensor.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fcm/wire.hpp"

namespace fcm {

namespace {

constexpr char kMagic[4] = {'F', 'C', 'F', 'T'};
constexpr std::uint16_t kVersion = 1;

void check_shape(const LayerShape& s, std::size_t data_size) {
  if (s.channels == 0 || s.height == 0 || s.width == 0)
    raise(Errc::shape_mismatch, "zero-sized layer dimension");
  if (s.element_count() != data_size)
    raise(Errc::shape_mismatch, "data length does not match declared shape");
}

void check_finite(const std::vector<float>& data) {
  for (float v : data) {
    if (!std::isfinite(v)) raise(Errc::non_finite_value, "tensor contains NaN or Inf");
  }
}

}  // namespace

FeatureLayer::FeatureLayer(std::uint32_t channels, std::uint32_t height,
                           std::uint32_t width, std::vector<float> data)
    : shape_{channels, height, width}, data_(std::move(data)) {
  check_shape(shape_, data_.size());
  check_finite(data_);
}

FeatureSet::FeatureSet(std::vector<FeatureLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) raise(Errc::shape_mismatch, "feature set needs at least one layer");
}

std::vector<LayerShape> FeatureSet::shape_signature() const {
  std::vector<LayerShape> sig;
  sig.reserve(layers_.size());
  for (const auto& l : layers_) sig.push_back(l.shape());
  return sig;
}

std::size_t FeatureSet::element_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.size();
  return n;
}

FeatureSequence::FeatureSequence(std::vector<FeatureSet> sets) {
  for (auto& s : sets) append(std::move(s));
}

void FeatureSequence::append(FeatureSet set) {
  if (!sets_.empty() && set.shape_signature() != sets_.front().shape_signature())
    raise(Errc::shape_mismatch, "feature sets differ in layer shapes");
  sets_.push_back(std::move(set));
}

std::vector<LayerShape> shape_signature(const FeatureSequence& seq) {
  if (seq.empty()) raise(Errc::empty_sequence, "sequence has no feature sets");
  return seq.set(0).shape_signature();
}

ReducedFeature::ReducedFeature(std::uint32_t channels, std::uint32_t height,
                               std::uint32_t width, std::vector<float> data)
    : shape_{channels, height, width}, data_(std::move(data)) {
  check_shape(shape_, data_.size());
  check_finite(data_);
}

std::vector<std::uint8_t> encode_feature_sequence(const FeatureSequence& seq) {
  if (seq.empty()) raise(Errc::empty_sequence, "cannot save an empty sequence");
  const auto sig = shape_signature(seq);

  ByteWriter w;
  w.bytes(reinterpret_cast<const std::uint8_t*>(kMagic), 4);
  w.u16(kVersion);
  w.u32(static_cast<std::uint32_t>(seq.set_count()));
  w.u16(static_cast<std::uint16_t>(sig.size()));
  for (const auto& s : sig) {
    w.u32(s.channels);
    w.u32(s.height);
    w.u32(s.width);
  }
  for (const auto& set : seq.sets())
    for (const auto& layer : set.layers())
      for (float v : layer.data()) w.f32(v);
  return w.take();
}

FeatureSequence decode_feature_sequence(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes, Errc::truncated_file);
  const std::uint8_t* magic = r.take(4);
  if (std::memcmp(magic, kMagic, 4) != 0) raise(Errc::bad_magic, "not an FCFT file");
  const std::uint16_t version = r.u16();
  if (version != kVersion)
    raise(Errc::bad_magic, "unsupported FCFT version " + std::to_string(version));

  const std::uint32_t set_count = r.u32();
  const std::uint16_t layer_count = r.u16();
  if (set_count == 0 || layer_count == 0)
    raise(Errc::shape_mismatch, "header declares an empty sequence");

  std::vector<LayerShape> sig(layer_count);
  std::size_t per_set = 0;
  for (auto& s : sig) {
    s.channels = r.u32();
    s.height = r.u32();
    s.width = r.u32();
    if (s.channels == 0 || s.height == 0 || s.width == 0)
      raise(Errc::shape_mismatch, "zero-sized layer dimension in header");
    per_set += s.element_count();
  }
  if (r.remaining() != static_cast<std::size_t>(set_count) * per_set * 4)
    raise(Errc::shape_mismatch, "payload length disagrees with declared shapes");

  FeatureSequence seq;
  for (std::uint32_t t = 0; t < set_count; ++t) {
    std::vector<FeatureLayer> layers;
    layers.reserve(layer_count);
    for (const auto& s : sig) {
      std::vector<float> data(s.element_count());
      for (float& v : data) v = r.f32();
      layers.emplace_back(s.channels, s.height, s.width, std::move(data));
    }
    seq.append(FeatureSet(std::move(layers)));
  }
  return seq;
}

FeatureSequence load_feature_sequence(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io_failure, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) raise(Errc::io_failure, "read error on " + path);
  return decode_feature_sequence(bytes);
}

void save_feature_sequence(const FeatureSequence& seq, const std::string& path) {
  const auto bytes = encode_feature_sequence(seq);
  // Write-to-temp then rename so readers never observe a torn file.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io_failure, "cannot open " + tmp + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) raise(Errc::io_failure, "write error on " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    raise(Errc::io_failure, "cannot move " + tmp + " to " + path);
  }
}

}  // namespace fcm
