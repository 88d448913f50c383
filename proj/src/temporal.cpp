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

#include "fcm/temporal.hpp"

namespace fcm {

TemporalPlan make_temporal_plan(TemporalRatio ratio, std::uint32_t original_count) {
  TemporalPlan plan;
  plan.ratio = ratio;
  plan.original_count = original_count;
  if (ratio == TemporalRatio::x1) {
    plan.kept_indices.resize(original_count);
    for (std::uint32_t i = 0; i < original_count; ++i) plan.kept_indices[i] = i;
    return plan;
  }
  for (std::uint32_t i = 0; i < original_count; i += 2) plan.kept_indices.push_back(i);
  // The last set must always be preserved.
  if (original_count > 0 && (original_count - 1) % 2 != 0)
    plan.kept_indices.push_back(original_count - 1);
  return plan;
}

DownsampleResult downsample(const FeatureSequence& seq, TemporalRatio ratio) {
  if (seq.empty()) raise(Errc::empty_sequence, "cannot downsample an empty sequence");
  TemporalPlan plan = make_temporal_plan(ratio, static_cast<std::uint32_t>(seq.set_count()));
  FeatureSequence kept;
  for (std::uint32_t idx : plan.kept_indices) kept.append(seq.set(idx));
  return {std::move(kept), std::move(plan)};
}

namespace {

FeatureSet average_sets(const FeatureSet& past, const FeatureSet& future) {
  std::vector<FeatureLayer> layers;
  layers.reserve(past.layer_count());
  for (std::size_t n = 0; n < past.layer_count(); ++n) {
    const auto& a = past.layer(n);
    const auto& b = future.layer(n);
    std::vector<float> data(a.size());
    for (std::size_t i = 0; i < data.size(); ++i)
      data[i] = (a.data()[i] + b.data()[i]) / 2.0f;
    layers.emplace_back(a.channels(), a.height(), a.width(), std::move(data));
  }
  return FeatureSet(std::move(layers));
}

}  // namespace

FeatureSequence upsample(const FeatureSequence& kept, const TemporalPlan& plan) {
  if (kept.set_count() != plan.kept_indices.size())
    raise(Errc::plan_mismatch, "kept sequence length does not match plan");
  for (std::uint32_t idx : plan.kept_indices)
    if (idx >= plan.original_count)
      raise(Errc::plan_mismatch, "kept index outside original range");

  if (plan.ratio == TemporalRatio::x1) return kept;

  std::vector<std::int64_t> kept_at(plan.original_count, -1);
  for (std::size_t k = 0; k < plan.kept_indices.size(); ++k)
    kept_at[plan.kept_indices[k]] = static_cast<std::int64_t>(k);

  FeatureSequence out;
  for (std::uint32_t i = 0; i < plan.original_count; ++i) {
    if (kept_at[i] >= 0) {
      out.append(kept.set(static_cast<std::size_t>(kept_at[i])));
      continue;
    }
    // Discarded indices always have kept neighbors at distance one.
    if (i == 0 || i + 1 >= plan.original_count || kept_at[i - 1] < 0 || kept_at[i + 1] < 0)
      raise(Errc::plan_mismatch, "discarded set lacks kept neighbors");
    out.append(average_sets(kept.set(static_cast<std::size_t>(kept_at[i - 1])),
                            kept.set(static_cast<std::size_t>(kept_at[i + 1]))));
  }
  return out;
}

}  // namespace fcm
