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
#ifndef KFPUE__EXPERIMENTS_HPP_
#define KFPUE__EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kfpue/detection.hpp"
#include "kfpue/scenario.hpp"

namespace kfpue
{

/// Filter tuning used inside every trial. R comes from the scenario's meas_noise_std.
struct FilterSettings
{
  double sigma_wx2{0.01};
  double sigma_wy2{0.01};
  double v_max{10.0};
  bool use_control_input{true};

  friend bool operator==(const FilterSettings &, const FilterSettings &) = default;
};

enum class Bucket
{
  kDetection,
  kMiss,
  kFalseAlarm,
  kCorrectRejection,
};

struct TrialOutcome
{
  Transmitter scheduled{Transmitter::kPrimaryUser};
  Label verdict{Label::kLegitimate};
  double residual{0.0};
  std::uint64_t seed{0};

  Bucket bucket() const;

  friend bool operator==(const TrialOutcome &, const TrialOutcome &) = default;
};

/// Proposed and baseline verdicts for the same trial, from the same RSS draw.
struct PairedOutcome
{
  TrialOutcome proposed;
  TrialOutcome baseline;
};

struct SweepCoords
{
  double d_pu_pue{0.0};
  double snr_db{0.0};
  double tau{0.0};
};

struct MetricsReport
{
  std::optional<double> pd;   ///< detections / attack trials
  std::optional<double> pfa;  ///< false alarms / legitimate trials
  std::optional<double> pm;   ///< misses / attack trials
  std::size_t n_attack_trials{0};
  std::size_t n_legit_trials{0};
  std::size_t detections{0};
  std::size_t false_alarms{0};
  SweepCoords coords;
};

struct TrialPlan
{
  std::size_t n_trials{1};
  double schedule_mix{0.5};  ///< probability that a trial's transmitter is the emulator
  std::uint64_t master_seed{1};
  std::optional<std::size_t> eval_step;  ///< final step when unset
  /// When set, trial i puts the attacker this far from the PU truth at the evaluation
  /// step, at bearings[i % bearings.size()] measured from the anchor-to-PU ray.
  /// Otherwise the scenario's attacker_pos is used.
  std::optional<double> attacker_offset;
  std::vector<double> bearings{0.0};
  unsigned threads{0};  ///< 0 = hardware concurrency; never changes results
};

/// Seeded Monte Carlo trials. Trial i draws from substreams of derive_seed(master_seed, i),
/// so outcomes do not depend on execution order or thread count.
std::vector<TrialOutcome> run_trials(
  const Scenario & scenario_template, const FilterSettings & filter,
  const DetectorConfig & config, const TrialPlan & plan);

/// run_trials plus the fixed-reference baseline evaluated on each trial's RSS sample.
/// The baseline reference is the PU truth at step 0.
std::vector<PairedOutcome> run_paired_trials(
  const Scenario & scenario_template, const FilterSettings & filter,
  const DetectorConfig & config, const TrialPlan & plan);

/// Tallies outcomes. Throws InvalidInput on an empty list.
MetricsReport metrics(std::span<const TrialOutcome> outcomes);

/// Re-labels outcomes under a new threshold using their stored residuals.
std::vector<TrialOutcome> reclassify(std::span<const TrialOutcome> outcomes, double tau);

struct SweepSettings
{
  FilterSettings filter;
  DetectorConfig detector;
  /// When set, sweep_distance calibrates tau per SNR row on fresh legitimate trials.
  std::optional<double> target_pfa;
  double snr_calibration_db{10.0};
  std::vector<double> bearings{0.0};
  std::size_t n_trials{10000};
  std::uint64_t seed{1};
  unsigned threads{0};
  std::optional<std::size_t> eval_step;
};

/// One report per (distance, snr) cell, distance-major.
std::vector<MetricsReport> sweep_distance(
  const Scenario & base, std::span<const double> distances, std::span<const double> snr_db,
  const SweepSettings & settings);

/// One report per (snr, target) cell, snr-major. tau comes from calibrate_tau on a
/// calibration set; pd and pfa are measured on held-out trials.
std::vector<MetricsReport> sweep_roc(
  const Scenario & base, double d_pu_pue, std::span<const double> snr_db,
  std::span<const double> pfa_targets, const SweepSettings & settings);

struct BaselineComparisonRow
{
  double distance{0.0};         ///< requested bin
  std::size_t eval_step{0};     ///< first step whose PU-attacker distance reaches the bin
  double actual_distance{0.0};  ///< PU-attacker distance at eval_step
  MetricsReport proposed;
  MetricsReport baseline;
};

/// Moving PU against the scenario's fixed attacker, fixed tau. Both detectors see the
/// identical trials.
std::vector<BaselineComparisonRow> compare_baseline(
  const Scenario & base, std::span<const double> distances, double snr_db,
  const SweepSettings & settings);

/// Seed domains separating attack, legitimate and calibration trial sets.
namespace seed_domain
{
inline constexpr std::uint64_t kAttack = 0x41545441434bULL;
inline constexpr std::uint64_t kLegitimate = 0x4c45474954ULL;
inline constexpr std::uint64_t kCalibration = 0x43414c4942ULL;
}  // namespace seed_domain

}  // namespace kfpue

#endif  // KFPUE__EXPERIMENTS_HPP_
