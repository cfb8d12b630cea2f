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
#ifndef KFPUE__TRACKING_HPP_
#define KFPUE__TRACKING_HPP_

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace kfpue
{

using Vector2 = Eigen::Vector2d;
using Vector4 = Eigen::Vector4d;
using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;
using Matrix42 = Eigen::Matrix<double, 4, 2>;
using Matrix24 = Eigen::Matrix<double, 2, 4>;

/// Error covariance of a TargetState, ordered (x, y, vx, vy).
using CovarianceMatrix4 = Matrix4;

/// Kinematic state of the primary user: position (m) and velocity (m/s).
struct TargetState
{
  double x{0.0};
  double y{0.0};
  double vx{0.0};
  double vy{0.0};

  Vector4 as_vector() const { return {x, y, vx, vy}; }
  Vector2 position() const { return {x, y}; }
  Vector2 velocity() const { return {vx, vy}; }
  bool is_finite() const;

  static TargetState from_vector(const Vector4 & v) { return {v(0), v(1), v(2), v(3)}; }

  friend bool operator==(const TargetState &, const TargetState &) = default;
};

/// Constant-velocity motion with a known acceleration input and white acceleration noise.
struct MotionModel
{
  double dt{1.0};         ///< sampling interval (s)
  double sigma_wx2{0.0};  ///< acceleration noise variance along X ((m/s^2)^2)
  double sigma_wy2{0.0};  ///< acceleration noise variance along Y ((m/s^2)^2)

  Matrix4 transition() const;
  /// Maps (ax, ay) onto (x, y, vx, vy) increments.
  Matrix42 control() const;
  /// Acceleration noise lifted to state space: B diag(sigma_wx2, sigma_wy2) B^T.
  Matrix4 process_noise() const;

  void validate() const;
};

/// Direct position observation z = C x + v, v ~ N(0, r).
struct MeasurementModel
{
  Matrix2 r{Matrix2::Identity()};

  static Matrix24 selector();
  static MeasurementModel isotropic(double sigma_m);

  void validate() const;
};

struct FilterEstimate
{
  TargetState state;
  CovarianceMatrix4 covariance{CovarianceMatrix4::Identity()};
};

/// A position fix with its time stamp (s).
struct TimedPosition
{
  double t{0.0};
  Vector2 z{Vector2::Zero()};
};

/// Symmetry and PSD checks with the tolerances the filter guarantees after every step.
bool is_symmetric(const CovarianceMatrix4 & p);
bool is_positive_semidefinite(const CovarianceMatrix4 & p);
inline bool is_valid_covariance(const CovarianceMatrix4 & p)
{
  return is_symmetric(p) && is_positive_semidefinite(p);
}

/// Time update. Throws InvalidInput on non-finite input.
FilterEstimate predict(
  const FilterEstimate & est, const MotionModel & model, const Vector2 & accel);

/// Kalman gain P C^T (C P C^T + R)^-1, with a closed-form 2x2 inverse.
/// Throws NumericalDegeneracy when the innovation covariance is singular.
Matrix42 kalman_gain(const CovarianceMatrix4 & p, const Matrix2 & r);

/// Measurement update with position fix `z`. Covariance uses (I - G C) P, symmetrized.
FilterEstimate update(
  const FilterEstimate & est, const MeasurementModel & meas_model, const Vector2 & z);

/// Prior built from a first fix: position = z0, zero velocity, P0 = diag(R11, R22, v_max^2, v_max^2).
FilterEstimate initial_estimate(
  const Vector2 & z0, const MeasurementModel & meas_model, double v_max = 10.0);

/// Runs predict/update over `measurements`. `accels[i]` is the control input over the
/// interval ending at measurement i (an empty span means zero input). `init` is the
/// estimate at `init_time`, which defaults to the first measurement time, in which
/// case the first predict is the identity. `model.dt` is ignored; each step uses the
/// gap between consecutive time stamps.
std::vector<FilterEstimate> track(
  std::span<const TimedPosition> measurements, const MotionModel & model,
  const MeasurementModel & meas_model, const FilterEstimate & init,
  std::span<const Vector2> accels, std::optional<double> init_time = std::nullopt);

}  // namespace kfpue

#endif  // KFPUE__TRACKING_HPP_
