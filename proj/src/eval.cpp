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

#include "fcm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace fcm {

RateCurve::RateCurve(std::vector<RatePoint> points) : points_(std::move(points)) {
  if (points_.size() < 2)
    raise(Errc::too_few_points, "a rate curve needs at least two points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].rate) || !std::isfinite(points_[i].quality))
      raise(Errc::invalid_curve, "curve points must be finite");
    if (points_[i].rate <= 0.0)
      raise(Errc::invalid_curve, "rates must be positive");
    if (i > 0 && points_[i].rate <= points_[i - 1].rate)
      raise(Errc::invalid_curve, "rates must be strictly increasing");
  }
}

FidelityReport fidelity(const FeatureSequence& x, const FeatureSequence& x_hat) {
  if (x.empty() || x.set_count() != x_hat.set_count() ||
      shape_signature(x) != shape_signature(x_hat))
    raise(Errc::shape_mismatch, "sequences are not shape-congruent");

  const std::size_t layer_count = x.set(0).layer_count();
  std::vector<double> sq_err(layer_count, 0.0);
  std::vector<double> counts(layer_count, 0.0);
  double dot = 0.0, norm_x = 0.0, norm_y = 0.0;
  double ref_min = std::numeric_limits<double>::infinity();
  double ref_max = -std::numeric_limits<double>::infinity();

  for (std::size_t t = 0; t < x.set_count(); ++t) {
    for (std::size_t n = 0; n < layer_count; ++n) {
      const auto& a = x.set(t).layer(n).data();
      const auto& b = x_hat.set(t).layer(n).data();
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - b[i];
        sq_err[n] += d * d;
        dot += static_cast<double>(a[i]) * b[i];
        norm_x += static_cast<double>(a[i]) * a[i];
        norm_y += static_cast<double>(b[i]) * b[i];
        ref_min = std::min(ref_min, static_cast<double>(a[i]));
        ref_max = std::max(ref_max, static_cast<double>(a[i]));
      }
      counts[n] += static_cast<double>(a.size());
    }
  }

  FidelityReport report;
  report.layer_mse.resize(layer_count);
  double total_sq = 0.0, total_n = 0.0;
  for (std::size_t n = 0; n < layer_count; ++n) {
    report.layer_mse[n] = sq_err[n] / counts[n];
    total_sq += sq_err[n];
    total_n += counts[n];
  }
  report.mse = total_sq / total_n;

  if (norm_x == 0.0 || norm_y == 0.0)
    report.cosine = (norm_x == 0.0 && norm_y == 0.0) ? 1.0 : 0.0;
  else
    report.cosine = dot / (std::sqrt(norm_x) * std::sqrt(norm_y));

  const double range = ref_max - ref_min;
  if (report.mse == 0.0)
    report.psnr = std::numeric_limits<double>::infinity();
  else if (range == 0.0)
    report.psnr = -std::numeric_limits<double>::infinity();
  else
    report.psnr = 10.0 * std::log10(range * range / report.mse);
  return report;
}

namespace {

// Shape-preserving piecewise-cubic (Fritsch-Carlson) interpolant of
// log10(rate) over quality, with analytic segment integration.
struct Pchip {
  std::vector<double> x;  // quality, strictly increasing
  std::vector<double> y;  // log10(rate)
  std::vector<double> m;  // endpoint slopes per knot

  double x_front() const { return x.front(); }
  double x_back() const { return x.back(); }
};

Pchip build_pchip(const RateCurve& curve) {
  std::vector<RatePoint> pts = curve.points();
  std::sort(pts.begin(), pts.end(),
            [](const RatePoint& a, const RatePoint& b) { return a.quality < b.quality; });
  Pchip p;
  p.x.reserve(pts.size());
  p.y.reserve(pts.size());
  for (const auto& pt : pts) {
    if (!p.x.empty() && pt.quality <= p.x.back())
      raise(Errc::invalid_curve, "qualities must be distinct for interpolation");
    p.x.push_back(pt.quality);
    p.y.push_back(std::log10(pt.rate));
  }

  const std::size_t n = p.x.size();
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = p.x[i + 1] - p.x[i];
    d[i] = (p.y[i + 1] - p.y[i]) / h[i];
  }

  p.m.assign(n, 0.0);
  if (n == 2) {
    p.m[0] = p.m[1] = d[0];
    return p;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0) != (d[i] > 0)) {
      p.m[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      p.m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0)
      m = 0.0;
    else if ((d0 > 0) != (d1 > 0) && std::abs(m) > 3.0 * std::abs(d0))
      m = 3.0 * d0;
    return m;
  };
  p.m[0] = endpoint(h[0], h[1], d[0], d[1]);
  p.m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return p;
}

// Integral of the Hermite segment over [a, b] in knot coordinates.
double segment_integral(double y0, double y1, double m0, double m1, double h,
                        double ta, double tb) {
  auto antiderivative = [&](double t) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const double i00 = 0.5 * t4 - t3 + t;
    const double i10 = 0.25 * t4 - (2.0 / 3.0) * t3 + 0.5 * t2;
    const double i01 = -0.5 * t4 + t3;
    const double i11 = 0.25 * t4 - t3 / 3.0;
    return y0 * i00 + h * m0 * i10 + y1 * i01 + h * m1 * i11;
  };
  return h * (antiderivative(tb) - antiderivative(ta));
}

double integrate(const Pchip& p, double lo, double hi) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.x.size(); ++i) {
    const double seg_lo = std::max(lo, p.x[i]);
    const double seg_hi = std::min(hi, p.x[i + 1]);
    if (seg_lo >= seg_hi) continue;
    const double h = p.x[i + 1] - p.x[i];
    total += segment_integral(p.y[i], p.y[i + 1], p.m[i], p.m[i + 1], h,
                              (seg_lo - p.x[i]) / h, (seg_hi - p.x[i]) / h);
  }
  return total;
}

}  // namespace

double bd_rate(const RateCurve& reference, const RateCurve& test) {
  if (reference.points().size() < 2 || test.points().size() < 2)
    raise(Errc::too_few_points, "BD-rate needs at least two points per curve");
  const Pchip ref = build_pchip(reference);
  const Pchip tst = build_pchip(test);

  const double lo = std::max(ref.x_front(), tst.x_front());
  const double hi = std::min(ref.x_back(), tst.x_back());
  if (!(lo < hi))
    raise(Errc::no_quality_overlap, "quality ranges do not overlap");

  const double avg_diff = (integrate(tst, lo, hi) - integrate(ref, lo, hi)) / (hi - lo);
  return (std::pow(10.0, avg_diff) - 1.0) * 100.0;
}

ComplexityRatios complexity_ratios(const ComplexityReport& report) {
  if (report.encoder_seconds <= 0.0 || report.decoder_seconds <= 0.0 ||
      report.nn_part1_seconds <= 0.0 || report.nn_part2_seconds <= 0.0)
    raise(Errc::zero_timing, "all timings must be positive");
  ComplexityRatios r;
  r.encoder_ratio = report.encoder_seconds / report.nn_part2_seconds;
  r.decoder_ratio = report.decoder_seconds / report.nn_part1_seconds;
  r.encoder_flagged = r.encoder_ratio >= 1.0;
  r.decoder_flagged = r.decoder_ratio >= 1.0;
  return r;
}

double aggregate_ratio(std::span<const double> ratios, std::span<const double> weights) {
  if (ratios.empty() || ratios.size() != weights.size())
    raise(Errc::length_mismatch, "ratios and weights must have equal nonzero length");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (weights[i] < 0.0) raise(Errc::invalid_config, "weights must be nonnegative");
    num += ratios[i] * weights[i];
    den += weights[i];
  }
  if (den == 0.0) raise(Errc::invalid_config, "weights sum to zero");
  return num / den;
}

RateCurve sweep(const FeatureSequence& seq, const EncoderConfig& base,
                std::vector<std::uint8_t> qshifts) {
  std::sort(qshifts.begin(), qshifts.end());
  qshifts.erase(std::unique(qshifts.begin(), qshifts.end()), qshifts.end());

  std::vector<RatePoint> points;
  points.reserve(qshifts.size());
  for (std::uint8_t q : qshifts) {
    EncoderConfig cfg = base;
    cfg.codec.codec_id = CodecId::ref_lossy;
    cfg.codec.qshift = q;
    const auto bytes = encode(seq, cfg);
    const auto rate =
        measure_rate(bytes, static_cast<std::uint32_t>(seq.set_count()), 1.0);
    const auto decoded = decode(bytes);
    points.push_back({rate.bits_per_element, fidelity(seq, decoded).cosine});
  }

  std::sort(points.begin(), points.end(),
            [](const RatePoint& a, const RatePoint& b) { return a.rate < b.rate; });
  // Equal-rate points collapse to the better quality.
  std::vector<RatePoint> unique_points;
  for (const auto& pt : points) {
    if (!unique_points.empty() && pt.rate == unique_points.back().rate)
      unique_points.back().quality = std::max(unique_points.back().quality, pt.quality);
    else
      unique_points.push_back(pt);
  }
  return RateCurve(std::move(unique_points));
}

void save_rate_curve_csv(const RateCurve& curve, const std::string& path) {
  std::ostringstream out;
  out << "rate,quality\n";
  char line[80];
  for (const auto& pt : curve.points()) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", pt.rate, pt.quality);
    out << line;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) raise(Errc::io_failure, "cannot open " + tmp + " for writing");
    f << out.str();
    if (!f) raise(Errc::io_failure, "write error on " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    raise(Errc::io_failure, "cannot move " + tmp + " to " + path);
  }
}

RateCurve load_rate_curve_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) raise(Errc::io_failure, "cannot open " + path);
  std::string line;
  if (!std::getline(f, line) || line != "rate,quality")
    raise(Errc::invalid_curve, "expected header 'rate,quality' in " + path);

  std::vector<RatePoint> points;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    RatePoint pt;
    char extra;
    if (std::sscanf(line.c_str(), "%lf,%lf %c", &pt.rate, &pt.quality, &extra) != 2)
      raise(Errc::invalid_curve, "malformed curve line: " + line);
    points.push_back(pt);
  }
  return RateCurve(std::move(points));
}

std::string render_report_csv(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << "task,dataset,bd_rate_percent,encoder_ratio,decoder_ratio\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%s,%s,%.2f,%.2f,%.2f\n", r.task.c_str(),
                  r.dataset.c_str(), r.bd_rate_percent, r.encoder_ratio,
                  r.decoder_ratio);
    out << line;
  }
  return out.str();
}

std::string render_report_text(std::span<const ReportRow> rows) {
  std::vector<double> bd, enc, dec, w;
  for (const auto& r : rows) {
    bd.push_back(r.bd_rate_percent);
    enc.push_back(r.encoder_ratio);
    dec.push_back(r.decoder_ratio);
    w.push_back(r.weight);
  }

  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-16s %10s %10s %10s\n", "Task", "Dataset",
                "BD-Rate", "Enc ratio", "Dec ratio");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-22s %-16s %9.2f%% %10.2f %10.2f\n",
                  r.task.c_str(), r.dataset.c_str(), r.bd_rate_percent,
                  r.encoder_ratio, r.decoder_ratio);
    out << line;
  }
  if (!rows.empty()) {
    std::snprintf(line, sizeof line, "%-22s %-16s %9.2f%% %10.2f %10.2f\n", "Overall",
                  "", aggregate_ratio(bd, w), aggregate_ratio(enc, w),
                  aggregate_ratio(dec, w));
    out << line;
  }
  return out.str();
}

}  // namespace fcm
