// Copyright 2026 The kfpue Authors
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
#include "kfpue/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kfpue/errors.hpp"

namespace kfpue
{

void DetectorConfig::validate() const
{
  if (!std::isfinite(tau) || tau < 0.0) {
    throw InvalidInput("DetectorConfig: tau must be finite and >= 0");
  }
}

double anchor_distance(const FilterEstimate & estimate, const AnchorNode & anchor)
{
  return std::hypot(estimate.state.x - anchor.x, estimate.state.y - anchor.y);
}

Verdict decide(double d_kf, double d_rss, const DetectorConfig & config)
{
  Verdict v;
  v.d_kf = d_kf;
  v.d_rss = d_rss;
  v.residual = std::abs(d_kf - d_rss);
  v.label = v.residual >= config.tau ? Label::kAttacker : Label::kLegitimate;
  return v;
}

Verdict detect_step(
  const FilterEstimate & estimate, std::span<const RssSample> rss,
  std::span<const AnchorNode> anchors, const LinkModel & link, const DetectorConfig & config)
{
  if (anchors.empty() || rss.empty()) {
    throw InvalidInput("detect_step: at least one (anchor, rss) pair is required");
  }
  if (anchors.size() != rss.size()) {
    throw InvalidInput("detect_step: one RSS sample per anchor is required");
  }
  const std::size_t used = config.fusion == Fusion::kSingleAnchor ? 1 : anchors.size();

  Verdict best;
  bool any_attack = false;
  for (std::size_t i = 0; i < used; ++i) {
    Verdict v = decide(
      anchor_distance(estimate, anchors[i]), distance_from_rss(link, rss[i].pr_db), config);
    v.anchor_id = anchors[i].id;
    any_attack = any_attack || v.label == Label::kAttacker;
    if (i == 0 || v.residual > best.residual) {
      best = v;
    }
  }
  best.label = any_attack ? Label::kAttacker : Label::kLegitimate;
  return best;
}

Verdict rss_baseline_decide(
  const Vector2 & reference_pos, const AnchorNode & anchor, const RssSample & rss,
  const LinkModel & link, const DetectorConfig & config)
{
  const double d_ref = (reference_pos - anchor.position()).norm();
  Verdict v = decide(d_ref, distance_from_rss(link, rss.pr_db), config);
  v.anchor_id = anchor.id;
  return v;
}

TauCalibration calibrate_tau(
  std::span<const double> legitimate_residuals, double target_pfa, Fusion fusion)
{
  if (legitimate_residuals.empty()) {
    throw InvalidInput("calibrate_tau: empty residual sample");
  }
  if (!(target_pfa > 0.0 && target_pfa < 1.0)) {
    throw InvalidInput("calibrate_tau: target_pfa must lie in (0, 1)");
  }
  std::vector<double> sorted(legitimate_residuals.begin(), legitimate_residuals.end());
  for (double r : sorted) {
    if (!std::isfinite(r) || r < 0.0) {
      throw InvalidInput("calibrate_tau: residuals must be finite and >= 0");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  TauCalibration out;
  out.config.fusion = fusion;
  if (sorted.front() == sorted.back()) {
    out.config.tau = sorted.front();
    out.sample_pfa = 1.0;
    out.degenerate = true;
    return out;
  }

  // Largest false-alarm count allowed on the sample.
  const auto allowed = static_cast<std::size_t>(
    std::floor(target_pfa * static_cast<double>(n) + 1e-9));
  auto idx = static_cast<std::size_t>(
    std::ceil((1.0 - target_pfa) * static_cast<double>(n - 1) - 1e-12));
  idx = std::min(idx, n - 1);
  // Count of residuals >= sorted[idx] is n - (first index holding that value).
  auto first = static_cast<std::size_t>(
    std::lower_bound(sorted.begin(), sorted.end(), sorted[idx]) - sorted.begin());
  while (n - first > allowed) {
    const auto next = std::upper_bound(sorted.begin(), sorted.end(), sorted[first]);
    if (next == sorted.end()) {
      first = n;
      break;
    }
    first = static_cast<std::size_t>(next - sorted.begin());
  }
  out.config.tau = first < n ?
    sorted[first] :
    std::nextafter(sorted.back(), std::numeric_limits<double>::infinity());
  out.sample_pfa = static_cast<double>(n - first) / static_cast<double>(n);
  return out;
}

}  // namespace kfpue
