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
#include "kfpue/tracking.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "kfpue/errors.hpp"

namespace kfpue
{

namespace
{

void require_finite(const FilterEstimate & est, const char * what)
{
  if (!est.state.is_finite() || !est.covariance.allFinite()) {
    throw InvalidInput(std::string(what) + ": estimate has non-finite components");
  }
}

Matrix4 symmetrized(const Matrix4 & p) { return 0.5 * (p + p.transpose()); }

}  // namespace

bool TargetState::is_finite() const
{
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(vx) && std::isfinite(vy);
}

Matrix4 MotionModel::transition() const
{
  Matrix4 a = Matrix4::Identity();
  a(0, 2) = dt;
  a(1, 3) = dt;
  return a;
}

Matrix42 MotionModel::control() const
{
  const double half_dt2 = 0.5 * dt * dt;
  Matrix42 b = Matrix42::Zero();
  b(0, 0) = half_dt2;
  b(1, 1) = half_dt2;
  b(2, 0) = dt;
  b(3, 1) = dt;
  return b;
}

Matrix4 MotionModel::process_noise() const
{
  const Matrix42 b = control();
  return b * Eigen::Vector2d(sigma_wx2, sigma_wy2).asDiagonal() * b.transpose();
}

void MotionModel::validate() const
{
  if (!std::isfinite(dt) || dt < 0.0) {
    throw InvalidInput("MotionModel: dt must be finite and >= 0");
  }
  if (!std::isfinite(sigma_wx2) || sigma_wx2 < 0.0 || !std::isfinite(sigma_wy2) ||
    sigma_wy2 < 0.0)
  {
    throw InvalidInput("MotionModel: acceleration noise variances must be finite and >= 0");
  }
}

Matrix24 MeasurementModel::selector()
{
  Matrix24 c = Matrix24::Zero();
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  return c;
}

MeasurementModel MeasurementModel::isotropic(double sigma_m)
{
  return MeasurementModel{Matrix2::Identity() * (sigma_m * sigma_m)};
}

void MeasurementModel::validate() const
{
  if (!r.allFinite()) {
    throw InvalidInput("MeasurementModel: R has non-finite entries");
  }
  const double tol = 1e-9 * std::max(1.0, r.cwiseAbs().maxCoeff());
  if (std::abs(r(0, 1) - r(1, 0)) > tol) {
    throw InvalidInput("MeasurementModel: R must be symmetric");
  }
  // 2x2 symmetric PSD: non-negative diagonal and determinant.
  if (r(0, 0) < 0.0 || r(1, 1) < 0.0 || r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0) < -tol * tol) {
    throw InvalidInput("MeasurementModel: R must be positive semidefinite");
  }
}

bool is_symmetric(const CovarianceMatrix4 & p)
{
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double tol = 1e-9 * std::max(1.0, std::abs(p(i, j)));
      if (std::abs(p(i, j) - p(j, i)) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool is_positive_semidefinite(const CovarianceMatrix4 & p)
{
  const Eigen::SelfAdjointEigenSolver<Matrix4> solver(symmetrized(p), Eigen::EigenvaluesOnly);
  const double floor = -1e-9 * std::abs(p.trace());
  return solver.eigenvalues().minCoeff() >= floor;
}

FilterEstimate predict(
  const FilterEstimate & est, const MotionModel & model, const Vector2 & accel)
{
  require_finite(est, "predict");
  if (!accel.allFinite()) {
    throw InvalidInput("predict: acceleration input is non-finite");
  }
  model.validate();

  const Matrix4 a = model.transition();
  FilterEstimate out;
  out.state = TargetState::from_vector(a * est.state.as_vector() + model.control() * accel);
  out.covariance = symmetrized(a * est.covariance * a.transpose() + model.process_noise());
  return out;
}

Matrix42 kalman_gain(const CovarianceMatrix4 & p, const Matrix2 & r)
{
  const Matrix24 c = MeasurementModel::selector();
  const Matrix2 s = c * p * c.transpose() + r;
  const double det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
  const double trace = s.trace();
  if (!std::isfinite(det) || std::abs(det) < 1e-12 * trace * trace || det == 0.0) {
    throw NumericalDegeneracy(
            "update: innovation covariance C P C^T + R is singular (det = " +
            std::to_string(det) + ")");
  }
  Matrix2 s_inv;
  s_inv << s(1, 1), -s(0, 1), -s(1, 0), s(0, 0);
  s_inv /= det;
  return p * c.transpose() * s_inv;
}

FilterEstimate update(
  const FilterEstimate & est, const MeasurementModel & meas_model, const Vector2 & z)
{
  require_finite(est, "update");
  if (!z.allFinite()) {
    throw InvalidInput("update: measurement is non-finite");
  }
  if (!meas_model.r.allFinite()) {
    throw InvalidInput("update: R has non-finite entries");
  }

  const Matrix24 c = MeasurementModel::selector();
  const Matrix42 gain = kalman_gain(est.covariance, meas_model.r);
  const Vector4 x = est.state.as_vector();

  FilterEstimate out;
  out.state = TargetState::from_vector(x + gain * (z - c * x));
  out.covariance = symmetrized((Matrix4::Identity() - gain * c) * est.covariance);
  return out;
}

FilterEstimate initial_estimate(
  const Vector2 & z0, const MeasurementModel & meas_model, double v_max)
{
  if (!z0.allFinite() || !std::isfinite(v_max) || v_max < 0.0) {
    throw InvalidInput("initial_estimate: non-finite fix or negative v_max");
  }
  FilterEstimate est;
  est.state = TargetState{z0(0), z0(1), 0.0, 0.0};
  est.covariance = Vector4(
    meas_model.r(0, 0), meas_model.r(1, 1), v_max * v_max, v_max * v_max).asDiagonal();
  return est;
}

std::vector<FilterEstimate> track(
  std::span<const TimedPosition> measurements, const MotionModel & model,
  const MeasurementModel & meas_model, const FilterEstimate & init,
  std::span<const Vector2> accels, std::optional<double> init_time)
{
  if (measurements.empty()) {
    throw InvalidInput("track: no measurements");
  }
  if (!accels.empty() && accels.size() != measurements.size()) {
    throw InvalidInput("track: accels must be empty or match the measurement count");
  }
  double t_prev = init_time.value_or(measurements.front().t);
  if (measurements.front().t < t_prev) {
    throw InvalidInput("track: first measurement precedes the initial estimate");
  }
  for (std::size_t i = 1; i < measurements.size(); ++i) {
    if (!(measurements[i].t > measurements[i - 1].t)) {
      throw InvalidInput(
              "track: time stamps must be strictly increasing (index " + std::to_string(i) +
              ")");
    }
  }

  std::vector<FilterEstimate> out;
  out.reserve(measurements.size());
  FilterEstimate est = init;
  MotionModel step_model = model;
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    step_model.dt = measurements[i].t - t_prev;
    const Vector2 u = accels.empty() ? Vector2::Zero() : accels[i];
    est = update(predict(est, step_model, u), meas_model, measurements[i].z);
    out.push_back(est);
    t_prev = measurements[i].t;
  }
  return out;
}

}  // namespace kfpue
