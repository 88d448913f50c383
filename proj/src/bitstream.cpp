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

#include "fcm/bitstream.hpp"

#include <cstring>

#include "fcm/wire.hpp"

namespace fcm {

namespace {

constexpr char kMagic[4] = {'F', 'C', 'M', 'B'};
constexpr std::uint16_t kVersion = 1;

void validate_header(const SequenceHeader& h) {
  if (h.layer_shapes.empty())
    raise(Errc::invalid_config, "header needs a non-empty shape table");
  if (h.temporal_ratio != TemporalRatio::x1 && h.temporal_ratio != TemporalRatio::x2)
    raise(Errc::invalid_config, "temporal ratio must be 1x or 2x");
  if (h.original_count == 0) raise(Errc::invalid_config, "original_count must be >= 1");
  if (h.bitdepth == 0 || h.bitdepth > 10)
    raise(Errc::invalid_config, "bitdepth must lie in [1, 10]");
  if (h.intra_period < 1 || h.refresh_period < 1)
    raise(Errc::invalid_config, "periods must be >= 1");
  if (h.qshift > 8) raise(Errc::invalid_config, "qshift must lie in [0, 8]");
}

void write_record(ByteWriter& w, const PeriodSideInfo& r) {
  w.u16(r.global_mu.bits);
  w.u16(r.global_sigma.bits);
  w.f32(r.reduced_stats.mu);
  w.f32(r.reduced_stats.sigma);

  // Activity map: packed bitfield, MSB-first, zero-padded to a byte.
  w.u16(static_cast<std::uint16_t>(r.activity.removed.size()));
  std::uint8_t acc = 0;
  int nbits = 0;
  for (std::uint8_t flag : r.activity.removed) {
    acc = static_cast<std::uint8_t>((acc << 1) | (flag & 1));
    if (++nbits == 8) {
      w.u8(acc);
      acc = 0;
      nbits = 0;
    }
  }
  if (nbits > 0) w.u8(static_cast<std::uint8_t>(acc << (8 - nbits)));

  w.u16(r.layout.grid_rows);
  w.u16(r.layout.grid_cols);
  w.u16(r.layout.channel_h);
  w.u16(r.layout.channel_w);
  w.u16(r.layout.channel_count);

  w.u8(static_cast<std::uint8_t>(r.transform.transform_id));
  w.u16(static_cast<std::uint16_t>(r.transform.original_shapes.size()));
  for (const auto& s : r.transform.original_shapes) {
    w.u32(s.channels);
    w.u32(s.height);
    w.u32(s.width);
  }
  w.u16(static_cast<std::uint16_t>(r.transform.permutation.size()));
  for (std::uint16_t p : r.transform.permutation) w.u16(p);
  w.u16(static_cast<std::uint16_t>(r.transform.gain.size()));
  for (float g : r.transform.gain) w.f32(g);
}

PeriodSideInfo read_record(ByteReader& r) {
  PeriodSideInfo rec;
  rec.global_mu.bits = r.u16();
  rec.global_sigma.bits = r.u16();
  rec.reduced_stats.mu = r.f32();
  rec.reduced_stats.sigma = r.f32();

  const std::uint16_t map_len = r.u16();
  rec.activity.removed.resize(map_len);
  const std::size_t map_bytes = (map_len + 7) / 8;
  const std::uint8_t* bits = r.take(map_bytes);
  for (std::uint16_t i = 0; i < map_len; ++i)
    rec.activity.removed[i] = (bits[i / 8] >> (7 - i % 8)) & 1;

  rec.layout.grid_rows = r.u16();
  rec.layout.grid_cols = r.u16();
  rec.layout.channel_h = r.u16();
  rec.layout.channel_w = r.u16();
  rec.layout.channel_count = r.u16();

  rec.transform.transform_id = static_cast<TransformId>(r.u8());
  const std::uint16_t shape_count = r.u16();
  rec.transform.original_shapes.resize(shape_count);
  for (auto& s : rec.transform.original_shapes) {
    s.channels = r.u32();
    s.height = r.u32();
    s.width = r.u32();
  }
  const std::uint16_t perm_len = r.u16();
  rec.transform.permutation.resize(perm_len);
  for (auto& p : rec.transform.permutation) p = r.u16();
  const std::uint16_t gain_len = r.u16();
  rec.transform.gain.resize(gain_len);
  for (auto& g : rec.transform.gain) g = r.f32();
  return rec;
}

}  // namespace

std::uint32_t SequenceHeader::kept_frame_count() const {
  return static_cast<std::uint32_t>(
      make_temporal_plan(temporal_ratio, original_count).kept_indices.size());
}

std::uint32_t SequenceHeader::period_count() const {
  return (kept_frame_count() + refresh_period - 1) / refresh_period;
}

std::size_t SequenceHeader::original_element_count() const {
  std::size_t per_set = 0;
  for (const auto& s : layer_shapes) per_set += s.element_count();
  return per_set * original_count;
}

std::vector<std::uint8_t> serialize(const SequenceHeader& header,
                                    const std::vector<PeriodSideInfo>& side,
                                    const std::vector<std::uint8_t>& payload) {
  validate_header(header);
  if (side.size() != header.period_count())
    raise(Errc::inconsistent_record_count,
          "expected " + std::to_string(header.period_count()) + " side records, got " +
              std::to_string(side.size()));

  ByteWriter w;
  w.bytes(reinterpret_cast<const std::uint8_t*>(kMagic), 4);
  w.u16(kVersion);
  w.u16(static_cast<std::uint16_t>(header.layer_shapes.size()));
  for (const auto& s : header.layer_shapes) {
    w.u32(s.channels);
    w.u32(s.height);
    w.u32(s.width);
  }
  w.u8(static_cast<std::uint8_t>(header.temporal_ratio));
  w.u32(header.original_count);
  w.u8(static_cast<std::uint8_t>(header.transform_id));
  w.u16(header.target_channels);
  w.u8(header.bitdepth);
  w.u32(header.intra_period);
  w.u32(header.refresh_period);
  w.u8(static_cast<std::uint8_t>(header.codec_id));
  w.u8(header.qshift);

  w.u32(static_cast<std::uint32_t>(side.size()));
  for (const auto& rec : side) {
    ByteWriter rw;
    write_record(rw, rec);
    w.u32(static_cast<std::uint32_t>(rw.size()));
    w.bytes(rw.data());
  }
  w.u64(payload.size());
  w.bytes(payload);
  return w.take();
}

Container parse(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes, Errc::truncated);
  const std::uint8_t* magic = r.take(4);
  if (std::memcmp(magic, kMagic, 4) != 0) raise(Errc::bad_magic, "not an FCMB container");
  const std::uint16_t version = r.u16();
  if (version != kVersion)
    raise(Errc::unsupported_version, "container version " + std::to_string(version));

  Container c;
  const std::uint16_t shape_count = r.u16();
  if (shape_count == 0) raise(Errc::truncated, "empty shape table");
  c.header.layer_shapes.resize(shape_count);
  for (auto& s : c.header.layer_shapes) {
    s.channels = r.u32();
    s.height = r.u32();
    s.width = r.u32();
    if (s.channels == 0 || s.height == 0 || s.width == 0)
      raise(Errc::truncated, "zero-sized layer dimension");
  }
  const std::uint8_t ratio = r.u8();
  if (ratio != 1 && ratio != 2) raise(Errc::truncated, "invalid temporal ratio");
  c.header.temporal_ratio = static_cast<TemporalRatio>(ratio);
  c.header.original_count = r.u32();
  if (c.header.original_count == 0) raise(Errc::truncated, "original_count is zero");
  const std::uint8_t transform_id = r.u8();
  if (transform_id > static_cast<std::uint8_t>(TransformId::pyramid_fuse))
    raise(Errc::truncated, "invalid transform id");
  c.header.transform_id = static_cast<TransformId>(transform_id);
  c.header.target_channels = r.u16();
  c.header.bitdepth = r.u8();
  if (c.header.bitdepth == 0 || c.header.bitdepth > 10)
    raise(Errc::truncated, "invalid bitdepth");
  c.header.intra_period = r.u32();
  c.header.refresh_period = r.u32();
  if (c.header.intra_period < 1 || c.header.refresh_period < 1)
    raise(Errc::truncated, "invalid periods");
  const std::uint8_t codec_id = r.u8();
  if (codec_id > static_cast<std::uint8_t>(CodecId::external))
    raise(Errc::truncated, "invalid codec id");
  c.header.codec_id = static_cast<CodecId>(codec_id);
  c.header.qshift = r.u8();
  if (c.header.qshift > 8) raise(Errc::truncated, "invalid qshift");

  const std::uint32_t record_count = r.u32();
  if (record_count != c.header.period_count())
    raise(Errc::inconsistent_record_count,
          "record count disagrees with header periods");
  if (static_cast<std::uint64_t>(record_count) * 4 > r.remaining())
    raise(Errc::truncated, "record table exceeds container size");
  c.side.reserve(record_count);
  for (std::uint32_t i = 0; i < record_count; ++i) {
    const std::uint32_t len = r.u32();
    if (len > r.remaining()) raise(Errc::overlong_length, "side record overruns container");
    ByteReader rr(r.take(len), len, Errc::truncated);
    c.side.push_back(read_record(rr));
    if (rr.remaining() != 0)
      raise(Errc::overlong_length, "side record has trailing bytes");
  }

  const std::uint64_t payload_len = r.u64();
  if (payload_len > r.remaining())
    raise(Errc::overlong_length, "payload length overruns container");
  const std::uint8_t* p = r.take(static_cast<std::size_t>(payload_len));
  c.payload.assign(p, p + payload_len);
  if (r.remaining() != 0) raise(Errc::overlong_length, "container has trailing bytes");
  return c;
}

RateReport measure_rate(const std::vector<std::uint8_t>& bytes,
                        std::uint32_t frame_count, double fps) {
  if (frame_count == 0) raise(Errc::invalid_config, "frame_count must be >= 1");
  const Container c = parse(bytes);
  RateReport report;
  report.total_bits = static_cast<std::uint64_t>(bytes.size()) * 8;
  report.bits_per_second =
      static_cast<double>(report.total_bits) * fps / static_cast<double>(frame_count);
  report.bits_per_element = static_cast<double>(report.total_bits) /
                            static_cast<double>(c.header.original_element_count());
  return report;
}

}  // namespace fcm
