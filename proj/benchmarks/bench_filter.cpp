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
#include <benchmark/benchmark.h>

#include <vector>

#include "kfpue/random.hpp"
#include "kfpue/scenario.hpp"
#include "kfpue/tracking.hpp"

namespace
{

void BM_Predict(benchmark::State & state)
{
  kfpue::FilterEstimate est{kfpue::TargetState{1, 2, 3, 4}, kfpue::Matrix4::Identity()};
  const kfpue::MotionModel m{1.0, 0.01, 0.01};
  const kfpue::Vector2 a(0.1, -0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(est = kfpue::predict(est, m, a));
    est.covariance = kfpue::Matrix4::Identity();
  }
}
BENCHMARK(BM_Predict);

void BM_Update(benchmark::State & state)
{
  const kfpue::FilterEstimate est{kfpue::TargetState{1, 2, 3, 4}, kfpue::Matrix4::Identity() * 4};
  const auto meas = kfpue::MeasurementModel::isotropic(5.0);
  const kfpue::Vector2 z(2.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kfpue::update(est, meas, z));
  }
}
BENCHMARK(BM_Update);

// Full default-scenario track: 201 fixes.
void BM_TrackDefaultScenario(benchmark::State & state)
{
  const kfpue::Scenario s = kfpue::default_scenario();
  const auto meas = kfpue::MeasurementModel::isotropic(s.meas_noise_std);
  kfpue::RandomStream rng(7);
  std::vector<kfpue::TimedPosition> fixes(s.step_count());
  std::vector<kfpue::Vector2> accels(s.step_count());
  for (std::size_t k = 0; k < fixes.size(); ++k) {
    fixes[k] = {s.time_at(k), kfpue::emit_position_measurement(s, k, rng)};
    accels[k] = kfpue::control_input(s, k);
  }
  const auto init = kfpue::initial_estimate(fixes[0].z, meas, 10.0);
  const kfpue::MotionModel motion{s.dt, 0.01, 0.01};
  for (auto _ : state) {
    auto out = kfpue::track(std::span(fixes).subspan(1), motion, meas, init,
      std::span(accels).subspan(1), fixes[0].t);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(fixes.size()));
}
BENCHMARK(BM_TrackDefaultScenario);

}  // namespace
