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

#include "kfpue/experiments.hpp"

namespace
{

void BM_RunTrials(benchmark::State & state)
{
  kfpue::Scenario s = kfpue::default_scenario();
  s.rss_noise = kfpue::sigma_from_snr(0.0, 3.0);
  kfpue::TrialPlan plan;
  plan.n_trials = static_cast<std::size_t>(state.range(0));
  plan.attacker_offset = 50.0;
  plan.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    auto out = kfpue::run_trials(s, {}, kfpue::DetectorConfig{50.0}, plan);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunTrials)->Args({1000, 1})->Args({1000, 0})->Unit(benchmark::kMillisecond);

void BM_CalibrateTau(benchmark::State & state)
{
  std::vector<double> r(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = static_cast<double>((i * 2654435761u) % 100003) / 7.0;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(kfpue::calibrate_tau(r, 0.05));
  }
}
BENCHMARK(BM_CalibrateTau)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
