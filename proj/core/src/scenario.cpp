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
#include "kfpue/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "kfpue/errors.hpp"

namespace kfpue
{

Trajectory::Trajectory(
  std::vector<Waypoint> waypoints, std::vector<Vector2> accel_profile,
  const Vector2 & initial_velocity)
: waypoints_(std::move(waypoints)), accels_(std::move(accel_profile))
{
  if (waypoints_.empty()) {
    throw InvalidInput("Trajectory: at least one waypoint is required");
  }
  if (accels_.size() + 1 != waypoints_.size()) {
    throw InvalidInput("Trajectory: need exactly one acceleration per waypoint gap");
  }
  if (!initial_velocity.allFinite()) {
    throw InvalidInput("Trajectory: initial velocity is non-finite");
  }
  velocities_.reserve(waypoints_.size());
  velocities_.push_back(initial_velocity);
  for (std::size_t k = 0; k < waypoints_.size(); ++k) {
    const Waypoint & w = waypoints_[k];
    if (!std::isfinite(w.t) || !w.position.allFinite()) {
      throw InvalidInput("Trajectory: waypoint " + std::to_string(k) + " is non-finite");
    }
    if (k == 0) {
      continue;
    }
    const Waypoint & prev = waypoints_[k - 1];
    if (!(w.t > prev.t)) {
      throw InvalidInput("Trajectory: waypoint times must be strictly increasing");
    }
    const Vector2 & a = accels_[k - 1];
    if (!a.allFinite()) {
      throw InvalidInput("Trajectory: acceleration " + std::to_string(k - 1) + " is non-finite");
    }
    const double tau = w.t - prev.t;
    const Vector2 & v = velocities_.back();
    const Vector2 expected = prev.position + v * tau + 0.5 * a * tau * tau;
    if ((expected - w.position).norm() > 1e-6) {
      throw InvalidInput(
              "Trajectory: waypoint " + std::to_string(k) +
              " disagrees with the acceleration profile");
    }
    velocities_.push_back(v + a * tau);
  }
}

Trajectory Trajectory::from_segments(
  const TargetState & start, std::span<const TrajectorySegment> segments, double t0)
{
  if (!start.is_finite() || !std::isfinite(t0)) {
    throw InvalidInput("Trajectory: start state is non-finite");
  }
  std::vector<Waypoint> waypoints{Waypoint{t0, start.position()}};
  std::vector<Vector2> accels;
  Vector2 v = start.velocity();
  for (const TrajectorySegment & seg : segments) {
    if (!std::isfinite(seg.duration) || seg.duration <= 0.0 || !seg.accel.allFinite()) {
      throw InvalidInput("Trajectory: segments need a finite positive duration");
    }
    const Waypoint & prev = waypoints.back();
    const double tau = seg.duration;
    waypoints.push_back(
      Waypoint{prev.t + tau, prev.position + v * tau + 0.5 * seg.accel * tau * tau});
    v += seg.accel * tau;
    accels.push_back(seg.accel);
  }
  return Trajectory(std::move(waypoints), std::move(accels), start.velocity());
}

std::size_t Trajectory::segment_index(double t) const
{
  if (!std::isfinite(t) || t < start_time() || t > end_time()) {
    throw InvalidInput("Trajectory: time " + std::to_string(t) + " outside the trajectory span");
  }
  if (accels_.empty()) {
    return 0;
  }
  const auto it = std::upper_bound(
    waypoints_.begin(), waypoints_.end(), t,
    [](double value, const Waypoint & w) {return value < w.t;});
  const auto idx = static_cast<std::size_t>(std::distance(waypoints_.begin(), it));
  return std::min(idx == 0 ? 0 : idx - 1, accels_.size() - 1);
}

TargetState Trajectory::state_at(double t) const
{
  const std::size_t k = segment_index(t);
  if (accels_.empty()) {
    const Vector2 & p = waypoints_.front().position;
    const Vector2 & v = velocities_.front();
    return TargetState{p(0), p(1), v(0), v(1)};
  }
  const double tau = t - waypoints_[k].t;
  const Vector2 & a = accels_[k];
  const Vector2 p = waypoints_[k].position + velocities_[k] * tau + 0.5 * a * tau * tau;
  const Vector2 v = velocities_[k] + a * tau;
  return TargetState{p(0), p(1), v(0), v(1)};
}

Vector2 Trajectory::mean_accel(double t0, double t1) const
{
  if (!(t1 > t0)) {
    throw InvalidInput("Trajectory: mean_accel needs t1 > t0");
  }
  return (state_at(t1).velocity() - state_at(t0).velocity()) / (t1 - t0);
}

std::size_t Scenario::step_count() const
{
  const double span = trajectory.end_time() - trajectory.start_time();
  return static_cast<std::size_t>(std::floor(span / dt + 1e-9)) + 1;
}

double Scenario::time_at(std::size_t step) const
{
  if (step >= step_count()) {
    throw InvalidInput(
            "Scenario: step " + std::to_string(step) + " outside [0, " +
            std::to_string(step_count()) + ")");
  }
  return std::min(
    trajectory.start_time() + static_cast<double>(step) * dt, trajectory.end_time());
}

Transmitter Scenario::transmitter_at(std::size_t step) const
{
  if (transmitter_schedule.empty()) {
    return Transmitter::kPrimaryUser;
  }
  if (step >= transmitter_schedule.size()) {
    throw InvalidInput("Scenario: step outside the transmitter schedule");
  }
  return transmitter_schedule[step];
}

void Scenario::validate() const
{
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw InvalidInput("Scenario: dt must be finite and > 0");
  }
  if (anchors.empty()) {
    throw InvalidInput("Scenario: at least one anchor is required");
  }
  for (const AnchorNode & a : anchors) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
      throw InvalidInput("Scenario: anchor " + std::to_string(a.id) + " is non-finite");
    }
  }
  if (!attacker_pos.allFinite()) {
    throw InvalidInput("Scenario: attacker position is non-finite");
  }
  if (!std::isfinite(meas_noise_std) || meas_noise_std < 0.0) {
    throw InvalidInput("Scenario: meas_noise_std must be finite and >= 0");
  }
  if (!std::isfinite(rss_noise.sigma_db) || rss_noise.sigma_db < 0.0) {
    throw InvalidInput("Scenario: rss sigma must be finite and >= 0");
  }
  link.validate();
  if (!transmitter_schedule.empty() && transmitter_schedule.size() != step_count()) {
    throw InvalidInput("Scenario: transmitter schedule must have one label per step");
  }
  for (Transmitter label : transmitter_schedule) {
    if (label != Transmitter::kPrimaryUser && label != Transmitter::kEmulator) {
      throw InvalidInput("Scenario: invalid schedule label");
    }
  }
}

Scenario default_scenario()
{
  const std::array<TrajectorySegment, 4> segments{{
    {50.0, Vector2(0.0, 0.0)},
    {50.0, Vector2(0.0, -0.12)},
    {50.0, Vector2(-0.2, 0.0)},
    {50.0, Vector2(0.1, 0.12)},
  }};
  const TargetState start{100.0, 100.0, 5.0, 3.0};
  Scenario s(Trajectory::from_segments(start, segments));
  s.attacker_pos = start.position();
  s.anchors = {AnchorNode{0, 500.0, 0.0}};
  s.dt = 1.0;
  s.meas_noise_std = 5.0;
  return s;
}

TargetState truth_at(const Scenario & scenario, std::size_t step)
{
  return scenario.trajectory.state_at(scenario.time_at(step));
}

Vector2 emit_position_measurement(
  const Scenario & scenario, std::size_t step, RandomStream & rng)
{
  const Vector2 truth = truth_at(scenario, step).position();
  const double ex = rng.gaussian(scenario.meas_noise_std);
  const double ey = rng.gaussian(scenario.meas_noise_std);
  return truth + Vector2(ex, ey);
}

Vector2 control_input(const Scenario & scenario, std::size_t step)
{
  if (step == 0) {
    return Vector2::Zero();
  }
  return scenario.trajectory.mean_accel(scenario.time_at(step - 1), scenario.time_at(step));
}

RssSample emit_rss(
  const Scenario & scenario, std::size_t step, const AnchorNode & anchor, RandomStream & rng)
{
  return emit_rss_from(scenario, step, anchor, scenario.transmitter_at(step), rng);
}

RssSample emit_rss_from(
  const Scenario & scenario, std::size_t step, const AnchorNode & anchor,
  Transmitter transmitter, RandomStream & rng)
{
  const Vector2 tx = transmitter == Transmitter::kPrimaryUser ?
    truth_at(scenario, step).position() :
    scenario.attacker_pos;
  const double distance = (tx - anchor.position()).norm();
  if (!(distance > 0.0)) {
    throw InvalidInput(
            "emit_rss: transmitter coincides with anchor " + std::to_string(anchor.id));
  }
  return sample_rss(
    scenario.link, distance, scenario.rss_noise, rng, anchor.id, scenario.time_at(step));
}

Vector2 place_attacker_at_offset(
  const Trajectory & trajectory, double dt, std::size_t reference_step, double d_pu_pue,
  double bearing)
{
  if (!std::isfinite(d_pu_pue) || d_pu_pue < 0.0 || !std::isfinite(bearing)) {
    throw InvalidInput("place_attacker_at_offset: d_pu_pue must be finite and >= 0");
  }
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw InvalidInput("place_attacker_at_offset: dt must be > 0");
  }
  const double t = trajectory.start_time() + static_cast<double>(reference_step) * dt;
  const Vector2 pu = trajectory.state_at(t).position();
  return pu + d_pu_pue * Vector2(std::cos(bearing), std::sin(bearing));
}

}  // namespace kfpue
