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
#include <span>
#include <string>
#include <vector>

#include "fcm/pipeline.hpp"

namespace fcm {

struct RatePoint {
  double rate = 0.0;     // bits per second or bits per element
  double quality = 0.0;  // higher is better
};

/// Rate-quality curve with strictly increasing rates, at least two
/// points.
class RateCurve {
 public:
  explicit RateCurve(std::vector<RatePoint> points);

  const std::vector<RatePoint>& points() const { return points_; }

 private:
  std::vector<RatePoint> points_;
};

struct FidelityReport {
  std::vector<double> layer_mse;
  double mse = 0.0;     // element-weighted aggregate
  double psnr = 0.0;    // 10*log10(range^2 / mse) over the reference range
  double cosine = 0.0;  // over all elements, flattened
};

FidelityReport fidelity(const FeatureSequence& x, const FeatureSequence& x_hat);

/// Bjontegaard delta rate in percent (negative = test saves bits).
/// log10(rate) is interpolated as a shape-preserving monotone cubic of
/// quality and the difference is averaged over the overlapping quality
/// interval.
double bd_rate(const RateCurve& reference, const RateCurve& test);

struct ComplexityReport {
  double encoder_seconds = 0.0;
  double decoder_seconds = 0.0;
  double nn_part1_seconds = 0.0;
  double nn_part2_seconds = 0.0;
};

struct ComplexityRatios {
  double encoder_ratio = 0.0;  // encoder / NN part 2
  double decoder_ratio = 0.0;  // decoder / NN part 1
  bool encoder_flagged = false;
  bool decoder_flagged = false;
};

/// Flags a ratio when it reaches 1 (no net saving on that side).
ComplexityRatios complexity_ratios(const ComplexityReport& report);

/// Weighted mean used to aggregate per-row ratios into an overall one.
double aggregate_ratio(std::span<const double> ratios, std::span<const double> weights);

/// Encodes/decodes the sequence once per qshift with the ref_lossy
/// codec and collects (bits per element, cosine similarity) points,
/// sorted by rate. Duplicate qshifts are ignored.
RateCurve sweep(const FeatureSequence& seq, const EncoderConfig& base,
                std::vector<std::uint8_t> qshifts);

/// Curve CSV: header line "rate,quality", one point per line.
void save_rate_curve_csv(const RateCurve& curve, const std::string& path);
RateCurve load_rate_curve_csv(const std::string& path);

struct ReportRow {
  std::string task;
  std::string dataset;
  double bd_rate_percent = 0.0;
  double encoder_ratio = 0.0;
  double decoder_ratio = 0.0;
  double weight = 1.0;
};

std::string render_report_text(std::span<const ReportRow> rows);
std::string render_report_csv(std::span<const ReportRow> rows);

}  // namespace fcm
