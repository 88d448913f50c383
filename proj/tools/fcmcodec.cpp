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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fcm/eval.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitCodec = 3;
constexpr int kExitNoOverlap = 4;

int exit_code_for(const fcm::Error& e) {
  switch (e.code()) {
    case fcm::Errc::no_quality_overlap:
      return kExitNoOverlap;
    case fcm::Errc::invalid_config:
    case fcm::Errc::invalid_alpha:
    case fcm::Errc::too_few_points:
    case fcm::Errc::empty_input:
    case fcm::Errc::identity_with_multiple_layers:
    case fcm::Errc::non_dyadic_pyramid:
    case fcm::Errc::target_channels_too_large:
      return kExitUsage;
    case fcm::Errc::io_failure:
    case fcm::Errc::bad_magic:
    case fcm::Errc::truncated_file:
    case fcm::Errc::shape_mismatch:
    case fcm::Errc::non_finite_value:
    case fcm::Errc::empty_sequence:
    case fcm::Errc::invalid_curve:
      return kExitIo;
    default:
      return kExitCodec;
  }
}

std::vector<std::uint8_t> read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fcm::raise(fcm::Errc::io_failure, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary_atomic(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fcm::raise(fcm::Errc::io_failure, "cannot open " + tmp + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) fcm::raise(fcm::Errc::io_failure, "write error on " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fcm::raise(fcm::Errc::io_failure, "cannot move " + tmp + " to " + path);
  }
}

struct EncoderFlags {
  fcm::EncoderConfig cfg;
  int ratio = 1;
  std::string transform = "identity";
  std::string order = "none";
  std::string codec = "ref_lossless";

  fcm::EncoderConfig resolve() const {
    fcm::EncoderConfig out = cfg;
    out.transform.transform_id = transform == "pyramid_fuse"
                                     ? fcm::TransformId::pyramid_fuse
                                     : fcm::TransformId::identity;
    out.transform.importance_order = order == "variance_desc"
                                         ? fcm::ImportanceOrder::variance_desc
                                         : fcm::ImportanceOrder::none;
    out.codec.codec_id = codec == "ref_lossy"    ? fcm::CodecId::ref_lossy
                         : codec == "external"   ? fcm::CodecId::external
                                                 : fcm::CodecId::ref_lossless;
    out.temporal_ratio =
        ratio == 2 ? fcm::TemporalRatio::x2 : fcm::TemporalRatio::x1;
    return out;
  }
};

void add_encoder_flags(CLI::App* cmd, EncoderFlags& f) {
  cmd->add_option("--transform", f.transform, "Reduction transform")
      ->check(CLI::IsMember({"identity", "pyramid_fuse"}))
      ->capture_default_str();
  cmd->add_option("--target-channels", f.cfg.transform.target_channels,
                  "Channels kept after fusion (0 = all)")
      ->check(CLI::Range(0u, 65535u))
      ->capture_default_str();
  cmd->add_option("--order", f.order, "Channel importance ordering")
      ->check(CLI::IsMember({"none", "variance_desc"}))
      ->capture_default_str();
  cmd->add_option("--gain", f.cfg.transform.gain_vector,
                  "Per-channel gain vector (comma separated)")
      ->delimiter(',');
  cmd->add_option("--ratio", f.ratio, "Temporal sampling ratio")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  cmd->add_option("--alpha", f.cfg.alpha,
                  "Channel adjustment threshold scale in (0,1); 0 disables")
      ->check(CLI::Range(0.0f, 1.0f))
      ->capture_default_str();
  cmd->add_option("--bitdepth", f.cfg.bitdepth, "Quantizer bit depth")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  cmd->add_option("--codec", f.codec, "Inner codec")
      ->check(CLI::IsMember({"ref_lossless", "ref_lossy", "external"}))
      ->capture_default_str();
  cmd->add_option("--qshift", f.cfg.codec.qshift, "ref_lossy quantization shift")
      ->check(CLI::Range(0, 8))
      ->capture_default_str();
  cmd->add_option("--intra-period", f.cfg.codec.intra_period, "Inner codec intra period")
      ->check(CLI::Range(1u, 1u << 20))
      ->capture_default_str();
  cmd->add_option("--refresh-period", f.cfg.refresh_period,
                  "Side info refresh period (0 = intra period)");
  cmd->add_option("--global-stats-period", f.cfg.global_stats_period,
                  "Global stats period (0 = refresh period)");
  cmd->add_option("--external-encode", f.cfg.codec.external_cmd_encode,
                  "External encoder command template");
  cmd->add_option("--external-decode", f.cfg.codec.external_cmd_decode,
                  "External decoder command template");
  cmd->set_config("--config", "", "key = value config file; flags override it");
  cmd->allow_config_extras(false);
}

void print_rate(const std::vector<std::uint8_t>& bytes, std::uint32_t frames, double fps) {
  const auto rate = fcm::measure_rate(bytes, frames, fps);
  std::printf("container_bytes=%zu\n", bytes.size());
  std::printf("bits_per_element=%.6f\n", rate.bits_per_element);
  std::printf("bits_per_second=%.3f\n", rate.bits_per_second);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FCM feature codec: compresses time-series of multi-scale "
               "feature tensors into FCMB containers"};
  app.require_subcommand(1);

  // encode
  auto* enc = app.add_subcommand("encode", "Encode an FCFT feature file");
  std::string enc_in, enc_out;
  EncoderFlags enc_flags;
  double enc_fps = 30.0;
  enc->add_option("input", enc_in, "Input .fcft")->required();
  enc->add_option("output", enc_out, "Output .fcmb")->required();
  enc->add_option("--fps", enc_fps, "Frame rate for bitrate reporting")
      ->capture_default_str();
  add_encoder_flags(enc, enc_flags);

  // decode
  auto* dec = app.add_subcommand("decode", "Decode an FCMB container");
  std::string dec_in, dec_out, dec_external;
  dec->add_option("input", dec_in, "Input .fcmb")->required();
  dec->add_option("output", dec_out, "Output .fcft")->required();
  dec->add_option("--external-decode", dec_external,
                  "External decoder command template");

  // roundtrip
  auto* rt = app.add_subcommand("roundtrip", "Encode+decode and report fidelity");
  std::string rt_in, rt_decoded;
  EncoderFlags rt_flags;
  rt->add_option("input", rt_in, "Input .fcft")->required();
  rt->add_option("--out-decoded", rt_decoded, "Optionally save the decoded .fcft");
  add_encoder_flags(rt, rt_flags);

  // eval
  auto* ev = app.add_subcommand("eval", "Sweep qshifts and write a rate curve CSV");
  std::string ev_in, ev_curve = "curve.csv";
  std::vector<int> ev_qshifts = {0, 2, 4, 6, 8};
  EncoderFlags ev_flags;
  ev->add_option("input", ev_in, "Input .fcft")->required();
  ev->add_option("--curve", ev_curve, "Output CSV path")->capture_default_str();
  ev->add_option("--qshifts", ev_qshifts, "qshift ladder (comma separated)")
      ->delimiter(',')
      ->check(CLI::Range(0, 8));
  add_encoder_flags(ev, ev_flags);

  // bdrate
  auto* bd = app.add_subcommand("bdrate", "BD-rate between two curve CSVs");
  std::string bd_ref, bd_test;
  bd->add_option("reference", bd_ref, "Reference curve CSV")->required();
  bd->add_option("test", bd_test, "Test curve CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*enc) {
      const auto seq = fcm::load_feature_sequence(enc_in);
      const auto bytes = fcm::encode(seq, enc_flags.resolve());
      write_binary_atomic(enc_out, bytes);
      print_rate(bytes, static_cast<std::uint32_t>(seq.set_count()), enc_fps);
    } else if (*dec) {
      const auto bytes = read_binary(dec_in);
      fcm::DecodeOptions opts;
      opts.external_cmd_decode = dec_external;
      const auto seq = fcm::decode(bytes, opts);
      fcm::save_feature_sequence(seq, dec_out);
      std::printf("sets=%zu\n", seq.set_count());
      std::string sig;
      for (const auto& s : fcm::shape_signature(seq)) {
        if (!sig.empty()) sig += ",";
        sig += std::to_string(s.channels) + "x" + std::to_string(s.height) + "x" +
               std::to_string(s.width);
      }
      std::printf("shape_signature=%s\n", sig.c_str());
    } else if (*rt) {
      const auto seq = fcm::load_feature_sequence(rt_in);
      const auto bytes = fcm::encode(seq, rt_flags.resolve());
      fcm::DecodeOptions opts;
      opts.external_cmd_decode = rt_flags.cfg.codec.external_cmd_decode;
      const auto decoded = fcm::decode(bytes, opts);
      if (!rt_decoded.empty()) fcm::save_feature_sequence(decoded, rt_decoded);
      const auto fid = fcm::fidelity(seq, decoded);
      std::printf("container_bytes=%zu\n", bytes.size());
      std::printf("bits_per_element=%.6f\n",
                  fcm::measure_rate(bytes, static_cast<std::uint32_t>(seq.set_count()), 1.0)
                      .bits_per_element);
      std::printf("mse=%.9g\n", fid.mse);
      std::printf("psnr=%.6g\n", fid.psnr);
      std::printf("cosine=%.9f\n", fid.cosine);
    } else if (*ev) {
      const auto seq = fcm::load_feature_sequence(ev_in);
      std::vector<std::uint8_t> qs(ev_qshifts.begin(), ev_qshifts.end());
      const auto curve = fcm::sweep(seq, ev_flags.resolve(), qs);
      fcm::save_rate_curve_csv(curve, ev_curve);
      std::printf("points=%zu\n", curve.points().size());
      std::printf("curve=%s\n", ev_curve.c_str());
    } else if (*bd) {
      const auto ref = fcm::load_rate_curve_csv(bd_ref);
      const auto test = fcm::load_rate_curve_csv(bd_test);
      std::printf("bd_rate_percent=%.3f\n", fcm::bd_rate(ref, test));
    }
  } catch (const fcm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCodec;
  }
  return 0;
}
