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

#include "fcm/transform.hpp"

#include <algorithm>
#include <numeric>

#include "fcm/stats.hpp"

namespace fcm {

namespace {

void validate_pyramid(const std::vector<LayerShape>& shapes) {
  for (std::size_t i = 1; i < shapes.size(); ++i) {
    const auto& prev = shapes[i - 1];
    const auto& cur = shapes[i];
    if (prev.height != cur.height * 2 || prev.width != cur.width * 2)
      raise(Errc::non_dyadic_pyramid, "layer " + std::to_string(i) +
                                          " is not half the previous layer");
  }
  const auto& last = shapes.back();
  if (last.height % 2 != 0 || last.width % 2 != 0 || last.height < 2 || last.width < 2)
    raise(Errc::non_dyadic_pyramid, "smallest layer dims must be even and >= 2");
}

std::vector<float> resolve_gain(const TransformConfig& cfg, std::size_t out_channels) {
  std::vector<float> gain = cfg.gain_vector;
  if (gain.empty()) gain.assign(out_channels, 1.0f);
  if (gain.size() != out_channels)
    raise(Errc::invalid_config, "gain vector length " + std::to_string(gain.size()) +
                                    " does not match " + std::to_string(out_channels) +
                                    " output channels");
  for (float g : gain)
    if (g == 0.0f) raise(Errc::invalid_config, "gain vector entries must be nonzero");
  return gain;
}

// Non-overlapping k x k average pooling of one channel plane.
void average_pool(const float* in, std::size_t in_h, std::size_t in_w,
                  std::size_t factor, float* out) {
  const std::size_t out_h = in_h / factor;
  const std::size_t out_w = in_w / factor;
  for (std::size_t oy = 0; oy < out_h; ++oy) {
    for (std::size_t ox = 0; ox < out_w; ++ox) {
      double sum = 0.0;
      for (std::size_t ky = 0; ky < factor; ++ky)
        for (std::size_t kx = 0; kx < factor; ++kx)
          sum += in[(oy * factor + ky) * in_w + ox * factor + kx];
      out[oy * out_w + ox] =
          static_cast<float>(sum / static_cast<double>(factor * factor));
    }
  }
}

void replicate(const float* in, std::size_t out_h, std::size_t out_w,
               std::size_t factor, float* out) {
  const std::size_t in_w = out_w / factor;
  for (std::size_t y = 0; y < out_h; ++y)
    for (std::size_t x = 0; x < out_w; ++x)
      out[y * out_w + x] = in[(y / factor) * in_w + x / factor];
}

// Pool every layer to half the smallest layer's resolution and
// concatenate the channels, preserving layer order.
ReducedFeature fuse(const FeatureSet& x, std::uint32_t target_h, std::uint32_t target_w) {
  std::size_t total_channels = 0;
  for (const auto& layer : x.layers()) total_channels += layer.channels();

  const std::size_t plane = static_cast<std::size_t>(target_h) * target_w;
  std::vector<float> fused(total_channels * plane);
  std::size_t out_c = 0;
  for (const auto& layer : x.layers()) {
    const std::size_t factor = layer.height() / target_h;
    for (std::size_t c = 0; c < layer.channels(); ++c, ++out_c)
      average_pool(layer.channel(c).data(), layer.height(), layer.width(), factor,
                   fused.data() + out_c * plane);
  }
  return ReducedFeature(static_cast<std::uint32_t>(total_channels), target_h, target_w,
                        std::move(fused));
}

ReducedFeature apply_selection(const ReducedFeature& fused,
                               const std::vector<std::uint16_t>& permutation,
                               std::size_t out_channels,
                               const std::vector<float>& gain) {
  const std::size_t plane = static_cast<std::size_t>(fused.height()) * fused.width();
  std::vector<float> data(out_channels * plane);
  for (std::size_t k = 0; k < out_channels; ++k) {
    const std::size_t src = permutation.empty() ? k : permutation[k];
    const auto ch = fused.channel(src);
    for (std::size_t i = 0; i < plane; ++i) data[k * plane + i] = ch[i] * gain[k];
  }
  return ReducedFeature(static_cast<std::uint32_t>(out_channels), fused.height(),
                        fused.width(), std::move(data));
}

struct Plan {
  std::uint32_t target_h = 0;
  std::uint32_t target_w = 0;
  std::size_t total_channels = 0;
  std::size_t out_channels = 0;
};

Plan make_plan(const std::vector<LayerShape>& shapes, const TransformConfig& cfg) {
  Plan plan;
  if (cfg.transform_id == TransformId::identity) {
    if (shapes.size() != 1)
      raise(Errc::identity_with_multiple_layers,
            "identity transform requires a single layer");
    plan.target_h = shapes[0].height;
    plan.target_w = shapes[0].width;
    plan.total_channels = shapes[0].channels;
    plan.out_channels = shapes[0].channels;
    return plan;
  }
  validate_pyramid(shapes);
  plan.target_h = shapes.back().height / 2;
  plan.target_w = shapes.back().width / 2;
  for (const auto& s : shapes) plan.total_channels += s.channels;
  plan.out_channels = cfg.target_channels == 0 ? plan.total_channels : cfg.target_channels;
  if (plan.out_channels > plan.total_channels)
    raise(Errc::target_channels_too_large,
          "target_channels " + std::to_string(plan.out_channels) + " exceeds " +
              std::to_string(plan.total_channels) + " fused channels");
  return plan;
}

}  // namespace

std::vector<std::uint16_t> channel_importance(const ReducedFeature& z) {
  std::vector<double> variances(z.channels());
  for (std::size_t c = 0; c < z.channels(); ++c) {
    const MeanStd ms = mean_std(z.channel(c));
    variances[c] = ms.sigma * ms.sigma;
  }
  std::vector<std::uint16_t> perm(z.channels());
  std::iota(perm.begin(), perm.end(), static_cast<std::uint16_t>(0));
  std::stable_sort(perm.begin(), perm.end(), [&](std::uint16_t a, std::uint16_t b) {
    return variances[a] > variances[b];
  });
  return perm;
}

ReduceResult reduce(const FeatureSet& x, const TransformConfig& cfg) {
  const auto shapes = x.shape_signature();
  const Plan plan = make_plan(shapes, cfg);

  TransformSideInfo side;
  side.transform_id = cfg.transform_id;
  side.original_shapes = shapes;
  side.gain = resolve_gain(cfg, plan.out_channels);

  if (cfg.transform_id == TransformId::identity) {
    ReducedFeature fused(shapes[0].channels, shapes[0].height, shapes[0].width,
                         x.layer(0).data());
    return {apply_selection(fused, {}, plan.out_channels, side.gain), std::move(side)};
  }

  ReducedFeature fused = fuse(x, plan.target_h, plan.target_w);
  if (cfg.importance_order == ImportanceOrder::variance_desc)
    side.permutation = channel_importance(fused);
  return {apply_selection(fused, side.permutation, plan.out_channels, side.gain),
          std::move(side)};
}

ReducedFeature reduce_with(const FeatureSet& x, const TransformConfig& cfg,
                           const TransformSideInfo& side) {
  const auto shapes = x.shape_signature();
  if (side.transform_id != cfg.transform_id || side.original_shapes != shapes)
    raise(Errc::side_info_mismatch, "side info does not match input set");
  const Plan plan = make_plan(shapes, cfg);
  if (side.gain.size() != plan.out_channels)
    raise(Errc::side_info_mismatch, "side info gain length mismatch");

  if (cfg.transform_id == TransformId::identity) {
    ReducedFeature fused(shapes[0].channels, shapes[0].height, shapes[0].width,
                         x.layer(0).data());
    return apply_selection(fused, {}, plan.out_channels, side.gain);
  }
  ReducedFeature fused = fuse(x, plan.target_h, plan.target_w);
  if (!side.permutation.empty() && side.permutation.size() != plan.total_channels)
    raise(Errc::side_info_mismatch, "side info permutation length mismatch");
  return apply_selection(fused, side.permutation, plan.out_channels, side.gain);
}

FeatureSet restore(const ReducedFeature& z, const TransformSideInfo& side,
                   const TransformConfig& cfg) {
  if (side.transform_id != cfg.transform_id)
    raise(Errc::side_info_mismatch, "transform id differs between side info and config");
  if (side.original_shapes.empty())
    raise(Errc::side_info_mismatch, "side info carries no layer shapes");
  if (side.gain.size() != z.channels())
    raise(Errc::side_info_mismatch, "gain length does not match reduced channels");

  const std::size_t plane = static_cast<std::size_t>(z.height()) * z.width();
  std::vector<float> ungained(z.size());
  for (std::size_t c = 0; c < z.channels(); ++c) {
    const auto ch = z.channel(c);
    for (std::size_t i = 0; i < plane; ++i)
      ungained[c * plane + i] = ch[i] / side.gain[c];
  }

  if (side.transform_id == TransformId::identity) {
    const auto& s = side.original_shapes[0];
    if (s.channels != z.channels() || s.height != z.height() || s.width != z.width())
      raise(Errc::side_info_mismatch, "identity shape differs from reduced tensor");
    return FeatureSet({FeatureLayer(s.channels, s.height, s.width, std::move(ungained))});
  }

  validate_pyramid(side.original_shapes);
  const std::uint32_t target_h = side.original_shapes.back().height / 2;
  const std::uint32_t target_w = side.original_shapes.back().width / 2;
  if (z.height() != target_h || z.width() != target_w)
    raise(Errc::side_info_mismatch, "reduced dims disagree with recorded shapes");

  std::size_t total_channels = 0;
  for (const auto& s : side.original_shapes) total_channels += s.channels;
  if (z.channels() > total_channels)
    raise(Errc::side_info_mismatch, "reduced tensor has more channels than recorded");
  if (!side.permutation.empty() && side.permutation.size() != total_channels)
    raise(Errc::side_info_mismatch, "permutation length does not match channel count");

  // Truncated channels come back as zeros, then the importance
  // permutation is undone.
  std::vector<float> fused(total_channels * plane, 0.0f);
  for (std::size_t k = 0; k < z.channels(); ++k) {
    const std::size_t dst = side.permutation.empty() ? k : side.permutation[k];
    std::copy_n(ungained.data() + k * plane, plane, fused.data() + dst * plane);
  }

  std::vector<FeatureLayer> layers;
  layers.reserve(side.original_shapes.size());
  std::size_t c0 = 0;
  for (const auto& s : side.original_shapes) {
    const std::size_t factor = s.height / target_h;
    std::vector<float> data(s.element_count());
    const std::size_t out_plane = static_cast<std::size_t>(s.height) * s.width;
    for (std::size_t c = 0; c < s.channels; ++c)
      replicate(fused.data() + (c0 + c) * plane, s.height, s.width, factor,
                data.data() + c * out_plane);
    c0 += s.channels;
    layers.emplace_back(s.channels, s.height, s.width, std::move(data));
  }
  return FeatureSet(std::move(layers));
}

}  // namespace fcm
