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
#ifndef KFPUE__SCENARIO_HPP_
#define KFPUE__SCENARIO_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kfpue/propagation.hpp"
#include "kfpue/random.hpp"
#include "kfpue/tracking.hpp"

namespace kfpue
{

struct AnchorNode
{
  int id{0};
  double x{0.0};
  double y{0.0};

  Vector2 position() const { return {x, y}; }
};

struct Waypoint
{
  double t{0.0};
  Vector2 position{Vector2::Zero()};
};

/// Constant acceleration held for `duration` seconds.
struct TrajectorySegment
{
  double duration{0.0};
  Vector2 accel{Vector2::Zero()};
};

/// Piecewise-constant-acceleration path. Positions and velocities are evaluated in
/// closed form per segment, so there is no integration drift.
class Trajectory
{
public:
  /// `accel_profile[k]` acts between waypoints k and k+1. Throws InvalidInput unless the
  /// waypoints agree with kinematic integration from `initial_velocity` within 1e-6 m.
  Trajectory(
    std::vector<Waypoint> waypoints, std::vector<Vector2> accel_profile,
    const Vector2 & initial_velocity);

  static Trajectory from_segments(
    const TargetState & start, std::span<const TrajectorySegment> segments, double t0 = 0.0);

  double start_time() const { return waypoints_.front().t; }
  double end_time() const { return waypoints_.back().t; }

  /// Throws InvalidInput outside [start_time, end_time].
  TargetState state_at(double t) const;

  /// Average acceleration over [t0, t1]: (v(t1) - v(t0)) / (t1 - t0).
  Vector2 mean_accel(double t0, double t1) const;

  const std::vector<Waypoint> & waypoints() const { return waypoints_; }
  const std::vector<Vector2> & accel_profile() const { return accels_; }

private:
  std::size_t segment_index(double t) const;

  std::vector<Waypoint> waypoints_;
  std::vector<Vector2> accels_;
  std::vector<Vector2> velocities_;  // at each waypoint
};

enum class Transmitter
{
  kPrimaryUser,
  kEmulator,
};

struct Scenario
{
  explicit Scenario(Trajectory path)
  : trajectory(std::move(path)) {}

  Trajectory trajectory;
  Vector2 attacker_pos{Vector2::Zero()};
  std::vector<AnchorNode> anchors;
  double dt{1.0};
  double meas_noise_std{5.0};
  LinkModel link;
  NoiseModel rss_noise;
  /// One label per step; empty means the primary user transmits at every step.
  std::vector<Transmitter> transmitter_schedule;

  /// Number of sampled steps t = start + k dt, k = 0 .. step_count() - 1.
  std::size_t step_count() const;
  double time_at(std::size_t step) const;
  Transmitter transmitter_at(std::size_t step) const;

  void validate() const;
};

/// 1000 m x 1000 m field, PU from (100, 100) at (5, 3) m/s through four 50 s turns,
/// anchor at (500, 0), attacker at the PU start, dt = 1 s, sigma_z = 5 m.
Scenario default_scenario();

TargetState truth_at(const Scenario & scenario, std::size_t step);

/// Truth position plus independent N(0, meas_noise_std^2) per axis.
Vector2 emit_position_measurement(
  const Scenario & scenario, std::size_t step, RandomStream & rng);

/// Known control input for the interval ending at `step` (zero at step 0).
Vector2 control_input(const Scenario & scenario, std::size_t step);

/// RSS at `anchor` from whichever transmitter the schedule names for `step`.
RssSample emit_rss(
  const Scenario & scenario, std::size_t step, const AnchorNode & anchor, RandomStream & rng);

/// As emit_rss, with the transmitter given explicitly instead of read from the schedule.
RssSample emit_rss_from(
  const Scenario & scenario, std::size_t step, const AnchorNode & anchor,
  Transmitter transmitter, RandomStream & rng);

/// PU truth at `reference_step` plus d_pu_pue (cos bearing, sin bearing).
Vector2 place_attacker_at_offset(
  const Trajectory & trajectory, double dt, std::size_t reference_step, double d_pu_pue,
  double bearing);

}  // namespace kfpue

#endif  // KFPUE__SCENARIO_HPP_
