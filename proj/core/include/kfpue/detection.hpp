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
#ifndef KFPUE__DETECTION_HPP_
#define KFPUE__DETECTION_HPP_

#include <span>

#include "kfpue/propagation.hpp"
#include "kfpue/scenario.hpp"
#include "kfpue/tracking.hpp"

namespace kfpue
{

enum class Fusion
{
  kSingleAnchor,    ///< only the first (designated) anchor votes
  kOrAcrossAnchors, ///< attacker if any anchor says so
};

struct DetectorConfig
{
  double tau{20.0};  ///< residual threshold (m)
  Fusion fusion{Fusion::kSingleAnchor};

  void validate() const;

  friend bool operator==(const DetectorConfig &, const DetectorConfig &) = default;
};

enum class Label
{
  kLegitimate,
  kAttacker,
};

struct Verdict
{
  Label label{Label::kLegitimate};
  double d_kf{0.0};      ///< reference distance: tracked (or fixed) PU to anchor
  double d_rss{0.0};     ///< RSS-ranged transmitter to anchor
  double residual{0.0};  ///< |d_kf - d_rss|
  int anchor_id{0};
};

/// Euclidean distance from the estimated PU position to `anchor`.
double anchor_distance(const FilterEstimate & estimate, const AnchorNode & anchor);

/// Attacker iff |d_kf - d_rss| >= tau. Equality is an attack.
Verdict decide(double d_kf, double d_rss, const DetectorConfig & config);

/// One detection event. `rss[i]` was measured at `anchors[i]`. Under OR fusion the label
/// is Attacker if any anchor flags; the returned verdict is the largest-residual one.
Verdict detect_step(
  const FilterEstimate & estimate, std::span<const RssSample> rss,
  std::span<const AnchorNode> anchors, const LinkModel & link, const DetectorConfig & config);

/// Baseline that assumes the PU never leaves `reference_pos` (its initial position).
Verdict rss_baseline_decide(
  const Vector2 & reference_pos, const AnchorNode & anchor, const RssSample & rss,
  const LinkModel & link, const DetectorConfig & config);

struct TauCalibration
{
  DetectorConfig config;
  double sample_pfa{0.0};   ///< false-alarm rate of config.tau on the calibration sample
  bool degenerate{false};   ///< sample had a single distinct value; sample_pfa is 1
};

/// tau = empirical (1 - target_pfa) quantile of legitimate residuals, taking the higher
/// order statistic and stepping past ties so that sample_pfa <= target_pfa. If even the
/// maximum flags too many, tau moves just above the maximum. A constant sample is
/// reported as degenerate with tau equal to that constant.
TauCalibration calibrate_tau(
  std::span<const double> legitimate_residuals, double target_pfa,
  Fusion fusion = Fusion::kSingleAnchor);

}  // namespace kfpue

#endif  // KFPUE__DETECTION_HPP_
