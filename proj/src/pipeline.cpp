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

#include "fcm/pipeline.hpp"

#include <cmath>

#include "fcm/wire.hpp"

namespace fcm {

void validate(const EncoderConfig& cfg) {
  validate(cfg.codec);
  if (cfg.bitdepth == 0 || cfg.bitdepth > 10)
    raise(Errc::invalid_config, "bitdepth must lie in [1, 10]");
  if (cfg.alpha != 0.0f && !(cfg.alpha > 0.0f && cfg.alpha < 1.0f))
    raise(Errc::invalid_alpha, "alpha must lie in (0, 1), or 0 to disable");
  if (cfg.temporal_ratio != TemporalRatio::x1 && cfg.temporal_ratio != TemporalRatio::x2)
    raise(Errc::invalid_config, "temporal ratio must be 1x or 2x");
  if (cfg.transform.target_channels > 0xFFFF)
    raise(Errc::invalid_config, "target_channels exceeds signaling range");
}

namespace {

struct Cadence {
  std::uint32_t refresh = 1;
  std::uint32_t global = 1;
};

Cadence resolve_cadence(const EncoderConfig& cfg) {
  Cadence c;
  c.refresh = cfg.refresh_period ? cfg.refresh_period : cfg.codec.intra_period;
  c.global = cfg.global_stats_period ? cfg.global_stats_period : c.refresh;
  return c;
}

PackedFrame convert_frame(const ReducedFeature& z, std::uint8_t bitdepth,
                          PackLayout* layout_out) {
  auto packed = pack(z);
  if (layout_out) *layout_out = packed.layout;
  const auto norm = normalize(packed.frame);
  return quantize(norm.frame, bitdepth);
}

TransformConfig transform_config_from(const SequenceHeader& h) {
  TransformConfig cfg;
  cfg.transform_id = h.transform_id;
  cfg.target_channels = h.target_channels;
  return cfg;
}

}  // namespace

std::vector<std::uint8_t> encode(const FeatureSequence& seq, const EncoderConfig& cfg) {
  if (seq.empty()) raise(Errc::empty_input, "nothing to encode");
  validate(cfg);
  const Cadence cadence = resolve_cadence(cfg);

  auto [kept, plan] = downsample(seq, cfg.temporal_ratio);
  const std::uint32_t kept_count = static_cast<std::uint32_t>(kept.set_count());

  SequenceHeader header;
  header.layer_shapes = shape_signature(seq);
  header.temporal_ratio = cfg.temporal_ratio;
  header.original_count = plan.original_count;
  header.transform_id = cfg.transform.transform_id;
  header.target_channels = static_cast<std::uint16_t>(cfg.transform.target_channels);
  header.bitdepth = cfg.bitdepth;
  header.intra_period = cfg.codec.intra_period;
  header.refresh_period = cadence.refresh;
  header.codec_id = cfg.codec.codec_id;
  header.qshift = cfg.codec.qshift;

  std::vector<PeriodSideInfo> records;
  ByteWriter payload;
  GlobalStats current_global{};
  for (std::uint32_t start = 0; start < kept_count; start += cadence.refresh) {
    const std::uint32_t end = std::min(start + cadence.refresh, kept_count);
    if (start % cadence.global == 0) current_global = global_stats(kept.set(start));

    // Anchor frame of the period fixes the side info for the whole
    // period: transform permutation, activity map, reduced stats.
    auto [z_anchor, side] = reduce(kept.set(start), cfg.transform);
    if (z_anchor.channels() > 0xFFFF || z_anchor.height() > 0xFFFF ||
        z_anchor.width() > 0xFFFF)
      raise(Errc::invalid_config, "reduced tensor exceeds signaling range");
    const ActivityMap map =
        cfg.alpha > 0.0f ? activity_map(channel_ranges(z_anchor), cfg.alpha)
                         : all_kept_map(z_anchor.channels());
    const ReducedFeature z_anchor_kept = drop_channels(z_anchor, map);

    PeriodSideInfo rec;
    rec.global_mu = to_bfloat16(current_global.mu);
    rec.global_sigma = to_bfloat16(current_global.sigma);
    rec.reduced_stats = reduced_stats(z_anchor_kept);
    rec.activity = map;
    rec.transform = side;

    std::vector<PackedFrame> frames;
    frames.reserve(end - start);
    frames.push_back(convert_frame(z_anchor_kept, cfg.bitdepth, &rec.layout));
    for (std::uint32_t k = start + 1; k < end; ++k) {
      const ReducedFeature z = reduce_with(kept.set(k), cfg.transform, side);
      frames.push_back(convert_frame(drop_channels(z, map), cfg.bitdepth, nullptr));
    }
    records.push_back(std::move(rec));

    const auto segment = encode_frames(frames, cfg.codec);
    payload.u64(segment.size());
    payload.bytes(segment);
  }

  return serialize(header, records, payload.take());
}

FeatureSet refine_restored(const FeatureSet& y, const GlobalStats& g) {
  double mu_sum = 0.0;
  double var_sum = 0.0;
  for (const auto& layer : y.layers()) {
    if (layer.size() == 0) raise(Errc::empty_layer, "layer has no elements");
    const MeanStd ms = mean_std(layer.data());
    mu_sum += ms.mu;
    var_sum += ms.sigma * ms.sigma;
  }
  const double sigma_y = std::sqrt(var_sum);

  std::vector<FeatureLayer> layers;
  layers.reserve(y.layer_count());
  for (const auto& layer : y.layers()) {
    std::vector<float> data(layer.size());
    if (sigma_y > 0.0) {
      const double scale = static_cast<double>(g.sigma) / sigma_y;
      for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<float>((layer.data()[i] - mu_sum) * scale + g.mu);
    } else {
      for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<float>(layer.data()[i] - mu_sum + g.mu);
    }
    layers.emplace_back(layer.channels(), layer.height(), layer.width(), std::move(data));
  }
  return FeatureSet(std::move(layers));
}

FeatureSequence decode(const std::vector<std::uint8_t>& bytes, const DecodeOptions& opts) {
  const Container c = parse(bytes);
  const SequenceHeader& h = c.header;

  CodecConfig codec;
  codec.codec_id = h.codec_id;
  codec.qshift = h.qshift;
  codec.intra_period = h.intra_period;
  codec.external_cmd_decode = opts.external_cmd_decode;
  const TransformConfig transform_cfg = transform_config_from(h);

  const TemporalPlan plan = make_temporal_plan(h.temporal_ratio, h.original_count);
  const std::uint32_t kept_count = static_cast<std::uint32_t>(plan.kept_indices.size());

  ByteReader payload(c.payload, Errc::corrupt_payload);
  FeatureSequence kept;
  for (std::uint32_t period = 0; period < h.period_count(); ++period) {
    const std::uint32_t start = period * h.refresh_period;
    const std::uint32_t count = std::min(h.refresh_period, kept_count - start);
    const PeriodSideInfo& rec = c.side[period];

    const std::uint64_t segment_len = payload.u64();
    if (segment_len > payload.remaining())
      raise(Errc::corrupt_payload, "payload segment overruns payload");
    const std::uint8_t* seg = payload.take(static_cast<std::size_t>(segment_len));
    const std::vector<std::uint8_t> segment(seg, seg + segment_len);

    FrameMeta meta{count, rec.layout.frame_height(), rec.layout.frame_width(),
                   h.bitdepth};
    const auto frames = decode_frames(segment, meta, codec);
    for (const auto& frame : frames) {
      const RawFrame dq = dequantize(frame);
      const ReducedFeature z_kept = unpack(dq, rec.layout);
      const ReducedFeature z_refined = refine_reduced(z_kept, rec.reduced_stats);
      const ReducedFeature z_full = restore_channels(z_refined, rec.activity);
      kept.append(restore(z_full, rec.transform, transform_cfg));
    }
  }
  if (payload.remaining() != 0)
    raise(Errc::corrupt_payload, "payload has trailing bytes");

  FeatureSequence full = upsample(kept, plan);

  // Eq-12 refinement uses the side record of each set's period; a set
  // synthesized by interpolation borrows its past kept neighbor's.
  std::vector<std::uint32_t> record_of(plan.original_count, 0);
  for (std::uint32_t k = 0; k < kept_count; ++k)
    record_of[plan.kept_indices[k]] = k / h.refresh_period;
  std::uint32_t last = 0;
  std::vector<std::int64_t> kept_at(plan.original_count, -1);
  for (std::uint32_t k = 0; k < kept_count; ++k) kept_at[plan.kept_indices[k]] = k;
  for (std::uint32_t i = 0; i < plan.original_count; ++i) {
    if (kept_at[i] >= 0)
      last = record_of[i];
    else
      record_of[i] = last;
  }

  FeatureSequence refined;
  for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(full.set_count()); ++i) {
    const PeriodSideInfo& rec = c.side[record_of[i]];
    const GlobalStats g{from_bfloat16(rec.global_mu), from_bfloat16(rec.global_sigma)};
    refined.append(refine_restored(full.set(i), g));
  }

  if (shape_signature(refined) != h.layer_shapes)
    raise(Errc::shape_mismatch, "decoded shapes disagree with header");
  return refined;
}

}  // namespace fcm
