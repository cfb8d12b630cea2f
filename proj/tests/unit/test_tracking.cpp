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
#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "kfpue/errors.hpp"
#include "kfpue/random.hpp"
#include "kfpue/tracking.hpp"

using kfpue::FilterEstimate;
using kfpue::Matrix2;
using kfpue::Matrix4;
using kfpue::MeasurementModel;
using kfpue::MotionModel;
using kfpue::TargetState;
using kfpue::TimedPosition;
using kfpue::Vector2;
using kfpue::Vector4;

namespace
{

using Mat4 = std::array<std::array<double, 4>, 4>;

// Plain-array reference for A P A^T + B Q B^T, independent of Eigen.
Mat4 reference_predict_covariance(const Mat4 & p, double dt, double qx, double qy)
{
  Mat4 a{};
  for (int i = 0; i < 4; ++i) {
    a[i][i] = 1.0;
  }
  a[0][2] = dt;
  a[1][3] = dt;
  double b[4][2] = {{dt * dt / 2, 0}, {0, dt * dt / 2}, {dt, 0}, {0, dt}};
  double q[2] = {qx, qy};
  Mat4 ap{}, out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        ap[i][j] += a[i][k] * p[k][j];
      }
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        out[i][j] += ap[i][k] * a[j][k];
      }
      for (int k = 0; k < 2; ++k) {
        out[i][j] += b[i][k] * q[k] * b[j][k];
      }
    }
  }
  return out;
}

FilterEstimate make_estimate(const TargetState & s, const Matrix4 & p)
{
  return FilterEstimate{s, p};
}

Matrix4 random_spd(std::mt19937_64 & gen, double scale)
{
  std::normal_distribution<double> n(0.0, scale);
  Matrix4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m(i, j) = n(gen);
    }
  }
  return m * m.transpose() + 1e-3 * Matrix4::Identity();
}

}  // namespace

TEST(MotionModel, MatricesMatchConstantVelocityLayout)
{
  const MotionModel m{0.5, 0.0, 0.0};
  const Matrix4 a = m.transition();
  EXPECT_EQ(a(0, 2), 0.5);
  EXPECT_EQ(a(1, 3), 0.5);
  EXPECT_EQ((a - Matrix4::Identity()).cwiseAbs().sum(), 1.0);
  const auto b = m.control();
  EXPECT_EQ(b(0, 0), 0.125);
  EXPECT_EQ(b(1, 1), 0.125);
  EXPECT_EQ(b(2, 0), 0.5);
  EXPECT_EQ(b(3, 1), 0.5);
  EXPECT_EQ(b(0, 1), 0.0);
  EXPECT_EQ(b(2, 1), 0.0);
}

TEST(Predict, ExactLinearMotion)
{
  const auto out = kfpue::predict(
    make_estimate({0, 0, 1, 2}, Matrix4::Identity()), MotionModel{1.0, 0.0, 0.0},
    Vector2::Zero());
  EXPECT_EQ(out.state, (TargetState{1, 2, 1, 2}));
}

TEST(Predict, ZeroIntervalIsIdentity)
{
  std::mt19937_64 gen(3);
  const Matrix4 p = random_spd(gen, 2.0);
  const FilterEstimate est = make_estimate({3, -4, 0.5, 7}, p);
  const auto out = kfpue::predict(est, MotionModel{0.0, 0.0, 0.0}, Vector2(4.0, -9.0));
  EXPECT_EQ(out.state, est.state);
  EXPECT_LE((out.covariance - p).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Predict, AccelerationFromRest)
{
  const auto out = kfpue::predict(
    make_estimate({0, 0, 0, 0}, Matrix4::Zero()), MotionModel{1.0, 0.0, 0.0}, Vector2(2.0, 0.0));
  EXPECT_EQ(out.state, (TargetState{1, 0, 2, 0}));
}

TEST(Predict, CovarianceMatchesIndependentOracle)
{
  // Frozen from the plain-array oracle and an independent hand expansion.
  const Mat4 expected{{
    {1.250625, 0.0, 0.5025, 0.0},
    {0.0, 1.250625, 0.0, 0.5025},
    {0.5025, 0.0, 1.01, 0.0},
    {0.0, 0.5025, 0.0, 1.01},
  }};
  Mat4 identity{};
  for (int i = 0; i < 4; ++i) {
    identity[i][i] = 1.0;
  }
  const Mat4 oracle = reference_predict_covariance(identity, 0.5, 0.04, 0.04);
  const auto out = kfpue::predict(
    make_estimate({1, 1, 0.5, -0.5}, Matrix4::Identity()), MotionModel{0.5, 0.04, 0.04},
    Vector2::Zero());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(oracle[i][j], expected[i][j], 1e-12);
      EXPECT_NEAR(out.covariance(i, j), expected[i][j], 1e-9) << i << "," << j;
    }
  }
  EXPECT_NEAR(out.state.x, 1.25, 1e-12);
  EXPECT_NEAR(out.state.y, 0.75, 1e-12);
}

TEST(Predict, RandomCovariancesAgreeWithOracle)
{
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix4 p = random_spd(gen, 3.0);
    const double dt = u(gen), qx = u(gen), qy = u(gen);
    Mat4 pa{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        pa[i][j] = p(i, j);
      }
    }
    const Mat4 oracle = reference_predict_covariance(pa, dt, qx, qy);
    const auto out = kfpue::predict(
      make_estimate({}, p), MotionModel{dt, qx, qy}, Vector2::Zero());
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        ASSERT_NEAR(out.covariance(i, j), oracle[i][j], 1e-9 * std::max(1.0, std::abs(oracle[i][j])));
      }
    }
    const Matrix4 a = MotionModel{dt, 0, 0}.transition();
    EXPECT_GE(out.covariance.trace(), (a * p * a.transpose()).trace() - 1e-12);
  }
}

TEST(Predict, RejectsNonFiniteInput)
{
  FilterEstimate est;
  est.state.x = std::nan("");
  EXPECT_THROW(kfpue::predict(est, MotionModel{}, Vector2::Zero()), kfpue::InvalidInput);
  EXPECT_THROW(
    kfpue::predict(FilterEstimate{}, MotionModel{}, Vector2(INFINITY, 0)), kfpue::InvalidInput);
  EXPECT_THROW(
    kfpue::predict(FilterEstimate{}, MotionModel{-1.0, 0, 0}, Vector2::Zero()),
    kfpue::InvalidInput);
}

TEST(Update, UninformativeMeasurementLeavesStateAlone)
{
  const FilterEstimate est = make_estimate({10, -20, 1, 2}, Matrix4::Identity());
  const MeasurementModel huge{Matrix2::Identity() * 1e12};
  const auto gain = kfpue::kalman_gain(est.covariance, huge.r);
  EXPECT_LE(gain.cwiseAbs().maxCoeff(), 1e-10);
  const auto out = kfpue::update(est, huge, Vector2(500.0, 500.0));
  EXPECT_LE(
    (out.state.as_vector() - est.state.as_vector()).norm(), 1e-6 * est.state.as_vector().norm());
}

TEST(Update, ExactMeasurementPinsPosition)
{
  const FilterEstimate est = make_estimate({1, 2, 3, 4}, Matrix4::Identity());
  const auto out = kfpue::update(est, MeasurementModel{Matrix2::Zero()}, Vector2(7.0, -5.0));
  EXPECT_DOUBLE_EQ(out.state.x, 7.0);
  EXPECT_DOUBLE_EQ(out.state.y, -5.0);
  // P = I has no position-velocity correlation, so velocity gain is zero.
  EXPECT_DOUBLE_EQ(out.state.vx, 3.0);
  EXPECT_DOUBLE_EQ(out.state.vy, 4.0);
}

TEST(Update, ExactMeasurementPropagatesThroughCorrelation)
{
  Matrix4 p = Matrix4::Identity() * 2.0;
  p(0, 2) = p(2, 0) = 1.0;
  const auto out = kfpue::update(
    make_estimate({0, 0, 0, 0}, p), MeasurementModel{Matrix2::Zero()}, Vector2(4.0, 0.0));
  // Velocity gain = P_vx / P_xx = 1 / 2.
  EXPECT_DOUBLE_EQ(out.state.x, 4.0);
  EXPECT_DOUBLE_EQ(out.state.vx, 2.0);
  EXPECT_DOUBLE_EQ(out.state.vy, 0.0);
}

TEST(Update, DecoupledAxesMatchScalarGain)
{
  Matrix4 p = Vector4(4, 4, 1, 1).asDiagonal();
  const auto out = kfpue::update(
    make_estimate({0, 0, 0, 0}, p), MeasurementModel{Matrix2::Identity()}, Vector2(2.0, -2.0));
  const double g = 4.0 / (4.0 + 1.0);  // scalar oracle p / (p + r)
  EXPECT_NEAR(out.state.x, g * 2.0, 1e-12);
  EXPECT_NEAR(out.state.y, g * -2.0, 1e-12);
  EXPECT_NEAR(out.state.x, 1.6, 1e-12);
  EXPECT_EQ(out.state.vx, 0.0);
  EXPECT_NEAR(out.covariance(0, 0), (1.0 - g) * 4.0, 1e-12);
  EXPECT_NEAR(out.covariance(2, 2), 1.0, 1e-12);
}

TEST(Update, SingularInnovationCovarianceIsReported)
{
  const FilterEstimate est = make_estimate({}, Matrix4::Zero());
  try {
    kfpue::update(est, MeasurementModel{Matrix2::Zero()}, Vector2::Zero());
    FAIL() << "expected NumericalDegeneracy";
  } catch (const kfpue::NumericalDegeneracy & e) {
    EXPECT_NE(std::string(e.what()).find("innovation covariance"), std::string::npos);
  }
}

TEST(Update, ExactMeasurementTwiceIsIdempotent)
{
  std::mt19937_64 gen(5);
  const FilterEstimate est = make_estimate({1, 1, 1, 1}, random_spd(gen, 1.0));
  const MeasurementModel exact{Matrix2::Zero()};
  const Vector2 z(3.0, 4.0);
  const auto once = kfpue::update(est, exact, z);
  // After an exact fix the position block of P is zero; add a tiny floor so S stays invertible.
  FilterEstimate again = once;
  again.covariance += 1e-9 * Matrix4::Identity();
  const auto twice = kfpue::update(again, exact, z);
  EXPECT_NEAR(twice.state.x, once.state.x, 1e-9);
  EXPECT_NEAR(twice.state.y, once.state.y, 1e-9);
}

TEST(Update, GainShrinksAsMeasurementNoiseGrows)
{
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.01, 100.0);
  for (int i = 0; i < 500; ++i) {
    const Matrix4 p = Vector4(u(gen), u(gen), u(gen), u(gen)).asDiagonal();
    const double r_small = u(gen);
    const double r_large = r_small * (1.0 + u(gen));
    const auto g_small = kfpue::kalman_gain(p, Matrix2::Identity() * r_small);
    const auto g_large = kfpue::kalman_gain(p, Matrix2::Identity() * r_large);
    EXPECT_LT(g_large(0, 0), g_small(0, 0));
    EXPECT_LT(g_large(1, 1), g_small(1, 1));
  }
}

TEST(Covariance, InvariantsHoldAcrossRandomSteps)
{
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FilterEstimate est = make_estimate({}, random_spd(gen, 2.0));
  for (int i = 0; i < 20000; ++i) {
    const MotionModel m{2.0 * u(gen), u(gen), u(gen)};
    est = kfpue::predict(est, m, Vector2(u(gen) - 0.5, u(gen) - 0.5));
    ASSERT_TRUE(kfpue::is_valid_covariance(est.covariance)) << "predict " << i;
    const double trace_before = est.covariance.trace();
    const MeasurementModel mm{Matrix2::Identity() * (0.01 + 10.0 * u(gen))};
    est = kfpue::update(est, mm, Vector2(u(gen), u(gen)));
    ASSERT_TRUE(kfpue::is_valid_covariance(est.covariance)) << "update " << i;
    ASSERT_LE(est.covariance.trace(), trace_before + 1e-9);
  }
}

TEST(CovarianceChecks, DetectAsymmetryAndNegativeEigenvalues)
{
  Matrix4 p = Matrix4::Identity();
  p(0, 1) = 0.5;
  EXPECT_FALSE(kfpue::is_symmetric(p));
  Matrix4 q = Matrix4::Identity();
  q(3, 3) = -1.0;
  EXPECT_FALSE(kfpue::is_positive_semidefinite(q));
  EXPECT_TRUE(kfpue::is_valid_covariance(Matrix4::Identity()));
}

TEST(Track, SingleMeasurementAtTruth)
{
  const TargetState truth{5, 6, 1, -1};
  const std::vector<TimedPosition> z{{0.0, truth.position()}};
  const auto out = kfpue::track(
    z, MotionModel{}, MeasurementModel{Matrix2::Zero()},
    make_estimate(truth, Matrix4::Identity()), {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.front().state, truth);
}

TEST(Track, NoiselessConstantVelocityIsExact)
{
  const TargetState start{100, -50, 3.5, -1.25};
  std::vector<TimedPosition> z;
  for (int k = 1; k <= 200; ++k) {
    const double t = 0.5 * k;
    z.push_back({t, Vector2(start.x + start.vx * t, start.y + start.vy * t)});
  }
  const auto out = kfpue::track(
    z, MotionModel{0.0, 0.0, 0.0}, MeasurementModel{Matrix2::Identity() * 4.0},
    make_estimate(start, Matrix4::Identity()), {}, 0.0);
  ASSERT_EQ(out.size(), z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    EXPECT_LE((out[k].state.position() - z[k].z).norm(), 1e-9) << k;
    EXPECT_TRUE(kfpue::is_valid_covariance(out[k].covariance));
  }
}

TEST(Track, RejectsBadTimeStamps)
{
  const std::vector<TimedPosition> z{{0.0, Vector2::Zero()}, {0.0, Vector2::Zero()}};
  EXPECT_THROW(
    kfpue::track(z, MotionModel{}, MeasurementModel{}, FilterEstimate{}, {}),
    kfpue::InvalidInput);
  EXPECT_THROW(
    kfpue::track({}, MotionModel{}, MeasurementModel{}, FilterEstimate{}, {}),
    kfpue::InvalidInput);
  const std::vector<TimedPosition> one{{1.0, Vector2::Zero()}};
  const std::vector<Vector2> two_accels(2, Vector2::Zero());
  EXPECT_THROW(
    kfpue::track(one, MotionModel{}, MeasurementModel{}, FilterEstimate{}, two_accels),
    kfpue::InvalidInput);
}

TEST(Track, FilterBeatsRawMeasurementsOnNoisyLine)
{
  // Monte Carlo oracle: compare empirical RMSE of the filter with the raw fixes.
  constexpr int kRuns = 200;
  constexpr int kSteps = 50;
  constexpr double kSigma = 5.0;
  const MeasurementModel mm = MeasurementModel::isotropic(kSigma);
  const MotionModel motion{1.0, 0.01, 0.01};
  double filter_sq = 0.0, raw_sq = 0.0;
  for (int run = 0; run < kRuns; ++run) {
    kfpue::RandomStream rng(kfpue::derive_seed(99, static_cast<std::uint64_t>(run)));
    std::vector<TimedPosition> z;
    std::vector<Vector2> truth;
    for (int k = 0; k < kSteps; ++k) {
      const Vector2 p(10.0 + 4.0 * k, -3.0 + 2.0 * k);
      truth.push_back(p);
      z.push_back({static_cast<double>(k), p + Vector2(rng.gaussian(kSigma), rng.gaussian(kSigma))});
    }
    const auto init = kfpue::initial_estimate(z.front().z, mm, 10.0);
    const auto est = kfpue::track(
      std::span(z).subspan(1), motion, mm, init, {}, z.front().t);
    raw_sq += (z.front().z - truth.front()).squaredNorm();
    filter_sq += (init.state.position() - truth.front()).squaredNorm();
    for (int k = 1; k < kSteps; ++k) {
      raw_sq += (z[k].z - truth[k]).squaredNorm();
      filter_sq += (est[k - 1].state.position() - truth[k]).squaredNorm();
    }
  }
  const double n = kRuns * kSteps;
  EXPECT_LT(std::sqrt(filter_sq / n), std::sqrt(raw_sq / n));
}

TEST(InitialEstimate, UsesFixAndConservativeCovariance)
{
  const auto est = kfpue::initial_estimate(Vector2(3, 4), MeasurementModel::isotropic(2.0), 10.0);
  EXPECT_EQ(est.state, (TargetState{3, 4, 0, 0}));
  EXPECT_EQ(est.covariance.diagonal(), Vector4(4, 4, 100, 100));
  EXPECT_THROW(kfpue::initial_estimate(Vector2(3, 4), MeasurementModel{}, -1.0), kfpue::InvalidInput);
}
