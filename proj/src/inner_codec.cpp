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

#include "fcm/inner_codec.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fcm/bitio.hpp"

namespace fcm {

void validate(const CodecConfig& cfg) {
  if (cfg.qshift > 8) raise(Errc::invalid_config, "qshift must lie in [0, 8]");
  if (cfg.intra_period < 1) raise(Errc::invalid_config, "intra_period must be >= 1");
  if (cfg.codec_id == CodecId::external && cfg.external_cmd_encode.empty() &&
      cfg.external_cmd_decode.empty())
    raise(Errc::invalid_config, "external codec needs command templates");
}

namespace {

void check_congruent(const std::vector<PackedFrame>& frames) {
  if (frames.empty()) raise(Errc::empty_input, "no frames to encode");
  for (const auto& f : frames) {
    if (f.height() != frames[0].height() || f.width() != frames[0].width() ||
        f.bitdepth() != frames[0].bitdepth())
      raise(Errc::shape_mismatch, "frames are not shape-congruent");
  }
}

// Prediction: left neighbor within a row, sample above at row starts,
// mid-range at the frame origin.
std::int32_t predict(const std::vector<std::int32_t>& plane, std::size_t y,
                     std::size_t x, std::size_t width, std::int32_t origin) {
  if (x > 0) return plane[y * width + x - 1];
  if (y > 0) return plane[(y - 1) * width];
  return origin;
}

std::vector<std::uint8_t> encode_reference(const std::vector<PackedFrame>& frames,
                                           std::uint8_t qshift) {
  const std::uint8_t bitdepth = frames[0].bitdepth();
  const std::int32_t origin = (1 << (bitdepth - 1)) >> qshift;
  const std::size_t h = frames[0].height();
  const std::size_t w = frames[0].width();

  BitWriter bw;
  std::vector<std::int32_t> plane(h * w);
  for (const auto& frame : frames) {
    for (std::size_t i = 0; i < plane.size(); ++i)
      plane[i] = frame.samples()[i] >> qshift;
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t x = 0; x < w; ++x) {
        const std::int32_t residual =
            plane[y * w + x] - predict(plane, y, x, w, origin);
        bw.put_ue(zigzag(residual));
      }
  }
  return bw.take();
}

std::vector<PackedFrame> decode_reference(const std::vector<std::uint8_t>& payload,
                                          const FrameMeta& meta, std::uint8_t qshift) {
  const std::int32_t origin = (1 << (meta.bitdepth - 1)) >> qshift;
  const std::int32_t limit = (1 << meta.bitdepth) >> qshift;
  const std::int32_t offset = qshift >= 1 ? 1 << (qshift - 1) : 0;
  const std::size_t h = meta.height;
  const std::size_t w = meta.width;

  BitReader br(payload, Errc::corrupt_payload);
  std::vector<PackedFrame> frames;
  frames.reserve(meta.frame_count);
  std::vector<std::int32_t> plane(h * w);
  for (std::uint32_t f = 0; f < meta.frame_count; ++f) {
    std::vector<std::uint16_t> samples(h * w);
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t x = 0; x < w; ++x) {
        const std::int32_t v = predict(plane, y, x, w, origin) +
                               unzigzag(br.read_ue());
        if (v < 0 || v >= limit)
          raise(Errc::corrupt_payload, "decoded sample out of range");
        plane[y * w + x] = v;
        samples[y * w + x] = static_cast<std::uint16_t>((v << qshift) + offset);
      }
    frames.emplace_back(meta.height, meta.width, std::move(samples), meta.bitdepth);
  }
  return frames;
}

std::string substitute(std::string tmpl, const std::string& in, const std::string& out,
                       const FrameMeta& meta, std::uint32_t intra) {
  const std::pair<std::string, std::string> subs[] = {
      {"{in}", in},
      {"{out}", out},
      {"{w}", std::to_string(meta.width)},
      {"{h}", std::to_string(meta.height)},
      {"{frames}", std::to_string(meta.frame_count)},
      {"{intra}", std::to_string(intra)},
  };
  for (const auto& [key, value] : subs) {
    std::size_t pos = 0;
    while ((pos = tmpl.find(key, pos)) != std::string::npos) {
      tmpl.replace(pos, key.size(), value);
      pos += value.size();
    }
  }
  return tmpl;
}

std::filesystem::path temp_path(const char* suffix) {
  static std::atomic<unsigned> counter{0};
  return std::filesystem::temp_directory_path() /
         ("fcm_bridge_" + std::to_string(::getpid()) + "_" +
          std::to_string(counter.fetch_add(1)) + suffix);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::external_codec_failure, "missing output file " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::io_failure, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

struct TempFile {
  std::filesystem::path path;
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

std::vector<std::uint8_t> run_bridge(const std::string& tmpl,
                                     const std::vector<std::uint8_t>& input,
                                     const FrameMeta& meta, std::uint32_t intra,
                                     const char* in_suffix, const char* out_suffix) {
  if (tmpl.empty())
    raise(Errc::invalid_config, "external codec command template not configured");
  TempFile in{temp_path(in_suffix)};
  TempFile out{temp_path(out_suffix)};
  write_file(in.path, input);

  const std::string cmd = substitute(tmpl, in.path.string(), out.path.string(), meta, intra);
  const int status = std::system(cmd.c_str());
  if (status != 0)
    raise(Errc::external_codec_failure,
          "command exited with status " + std::to_string(status) + ": " + cmd);
  auto bytes = read_file(out.path);
  if (bytes.empty())
    raise(Errc::external_codec_failure, "command produced empty output: " + cmd);
  return bytes;
}

}  // namespace

std::vector<std::uint8_t> write_yuv400_10(const std::vector<PackedFrame>& frames) {
  std::vector<std::uint8_t> bytes;
  for (const auto& frame : frames) {
    bytes.reserve(bytes.size() + frame.samples().size() * 2);
    for (std::uint16_t s : frame.samples()) {
      if (s > 1023) raise(Errc::sample_out_of_range, "YUV 4:0:0 10-bit sample > 1023");
      bytes.push_back(static_cast<std::uint8_t>(s));
      bytes.push_back(static_cast<std::uint8_t>(s >> 8));
    }
  }
  return bytes;
}

std::vector<PackedFrame> read_yuv400_10(const std::vector<std::uint8_t>& bytes,
                                        const FrameMeta& meta) {
  if (bytes.size() % 2 != 0)
    raise(Errc::odd_byte_length, "YUV 4:0:0 10-bit data must be an even byte count");
  const std::size_t per_frame = static_cast<std::size_t>(meta.height) * meta.width;
  if (bytes.size() != per_frame * 2 * meta.frame_count)
    raise(Errc::shape_mismatch, "YUV length does not match frame meta");

  std::vector<PackedFrame> frames;
  frames.reserve(meta.frame_count);
  std::size_t pos = 0;
  for (std::uint32_t f = 0; f < meta.frame_count; ++f) {
    std::vector<std::uint16_t> samples(per_frame);
    for (auto& s : samples) {
      s = static_cast<std::uint16_t>(bytes[pos] | (bytes[pos + 1] << 8));
      pos += 2;
      if (s > 1023) raise(Errc::sample_out_of_range, "YUV 4:0:0 10-bit sample > 1023");
    }
    frames.emplace_back(meta.height, meta.width, std::move(samples), meta.bitdepth);
  }
  return frames;
}

std::vector<std::uint8_t> encode_frames(const std::vector<PackedFrame>& frames,
                                        const CodecConfig& cfg) {
  validate(cfg);
  check_congruent(frames);
  switch (cfg.codec_id) {
    case CodecId::ref_lossless:
      return encode_reference(frames, 0);
    case CodecId::ref_lossy:
      return encode_reference(frames, cfg.qshift);
    case CodecId::external: {
      const FrameMeta meta{static_cast<std::uint32_t>(frames.size()),
                           frames[0].height(), frames[0].width(), frames[0].bitdepth()};
      return run_bridge(cfg.external_cmd_encode, write_yuv400_10(frames), meta,
                        cfg.intra_period, ".yuv", ".bin");
    }
  }
  raise(Errc::invalid_config, "unknown codec id");
}

std::vector<PackedFrame> decode_frames(const std::vector<std::uint8_t>& payload,
                                       const FrameMeta& meta, const CodecConfig& cfg) {
  validate(cfg);
  if (meta.frame_count == 0 || meta.height == 0 || meta.width == 0)
    raise(Errc::empty_input, "frame meta describes no frames");
  switch (cfg.codec_id) {
    case CodecId::ref_lossless:
      return decode_reference(payload, meta, 0);
    case CodecId::ref_lossy:
      return decode_reference(payload, meta, cfg.qshift);
    case CodecId::external:
      return read_yuv400_10(
          run_bridge(cfg.external_cmd_decode, payload, meta, cfg.intra_period, ".bin", ".yuv"),
          meta);
  }
  raise(Errc::invalid_config, "unknown codec id");
}

}  // namespace fcm
