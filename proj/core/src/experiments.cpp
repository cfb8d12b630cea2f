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
#include "kfpue/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <utility>

#include "kfpue/errors.hpp"
#include "kfpue/random.hpp"

namespace kfpue
{

namespace
{

template<typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn && fn)
{
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  // Static striping; each index is written by exactly one worker.
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(
      [&fn, w, workers, n] {
        for (std::size_t i = w; i < n; i += workers) {
          fn(i);
        }
      });
  }
}

struct TrialResult
{
  Transmitter scheduled{Transmitter::kPrimaryUser};
  Verdict proposed;
  Verdict baseline;
  std::uint64_t seed{0};
};

class TrialRunner
{
public:
  TrialRunner(
    const Scenario & scenario, const FilterSettings & filter, const DetectorConfig & config,
    const TrialPlan & plan)
  : filter_(filter), config_(config), plan_(plan)
  {
    scenario.validate();
    config.validate();
    if (plan.n_trials < 1) {
      throw InvalidInput("run_trials: n_trials must be >= 1");
    }
    if (!(plan.schedule_mix >= 0.0 && plan.schedule_mix <= 1.0)) {
      throw InvalidInput("run_trials: schedule_mix must lie in [0, 1]");
    }
    eval_step_ = plan.eval_step.value_or(scenario.step_count() - 1);
    if (eval_step_ >= scenario.step_count()) {
      throw InvalidInput("run_trials: eval_step outside the scenario");
    }
    used_anchors_ = config.fusion == Fusion::kSingleAnchor ? 1 : scenario.anchors.size();

    if (plan.attacker_offset) {
      if (plan.bearings.empty()) {
        throw InvalidInput("run_trials: attacker_offset needs at least one bearing");
      }
      const Vector2 pu = truth_at(scenario, eval_step_).position();
      const Vector2 ray = pu - scenario.anchors.front().position();
      const double base_bearing = std::atan2(ray(1), ray(0));
      for (double rel : plan.bearings) {
        Scenario s = scenario;
        s.attacker_pos = place_attacker_at_offset(
          scenario.trajectory, scenario.dt, eval_step_, *plan.attacker_offset,
          base_bearing + rel);
        variants_.push_back(std::move(s));
      }
    } else {
      variants_.push_back(scenario);
    }

    const Scenario & s = variants_.front();
    motion_ = MotionModel{s.dt, filter.sigma_wx2, filter.sigma_wy2};
    motion_.validate();
    meas_model_ = MeasurementModel::isotropic(s.meas_noise_std);
    reference_pos_ = truth_at(s, 0).position();
    accels_.assign(eval_step_ + 1, Vector2::Zero());
    times_.resize(eval_step_ + 1);
    for (std::size_t k = 0; k <= eval_step_; ++k) {
      times_[k] = s.time_at(k);
      if (filter.use_control_input) {
        accels_[k] = control_input(s, k);
      }
    }
  }

  TrialResult run(std::size_t i) const
  {
    const Scenario & s = variants_[i % variants_.size()];
    TrialResult out;
    out.seed = derive_seed(plan_.master_seed, i);

    RandomStream schedule_rng(derive_seed(out.seed, 0, StreamPurpose::kSchedule));
    out.scheduled = schedule_rng.uniform() < plan_.schedule_mix ?
      Transmitter::kEmulator :
      Transmitter::kPrimaryUser;

    const FilterEstimate estimate = track_to_eval(s, out.seed);

    RandomStream rss_rng(derive_seed(out.seed, 0, StreamPurpose::kRss));
    std::vector<RssSample> rss;
    rss.reserve(used_anchors_);
    for (std::size_t a = 0; a < used_anchors_; ++a) {
      rss.push_back(emit_rss_from(s, eval_step_, s.anchors[a], out.scheduled, rss_rng));
    }
    const std::span<const AnchorNode> anchors(s.anchors.data(), used_anchors_);
    out.proposed = detect_step(estimate, rss, anchors, s.link, config_);

    for (std::size_t a = 0; a < used_anchors_; ++a) {
      const Verdict v = rss_baseline_decide(reference_pos_, anchors[a], rss[a], s.link, config_);
      if (a == 0 || v.residual > out.baseline.residual) {
        out.baseline = v;
      }
    }
    return out;
  }

private:
  FilterEstimate track_to_eval(const Scenario & s, std::uint64_t trial_seed) const
  {
    RandomStream meas_rng(derive_seed(trial_seed, 0, StreamPurpose::kMeasurement));
    std::vector<TimedPosition> fixes(eval_step_ + 1);
    for (std::size_t k = 0; k <= eval_step_; ++k) {
      fixes[k] = TimedPosition{times_[k], emit_position_measurement(s, k, meas_rng)};
    }
    const FilterEstimate init = initial_estimate(fixes.front().z, meas_model_, filter_.v_max);
    if (eval_step_ == 0) {
      return init;
    }
    const auto estimates = track(
      std::span(fixes).subspan(1), motion_, meas_model_, init, std::span(accels_).subspan(1),
      times_.front());
    return estimates.back();
  }

  FilterSettings filter_;
  DetectorConfig config_;
  TrialPlan plan_;
  std::size_t eval_step_{0};
  std::size_t used_anchors_{1};
  std::vector<Scenario> variants_;
  MotionModel motion_;
  MeasurementModel meas_model_;
  Vector2 reference_pos_{Vector2::Zero()};
  std::vector<Vector2> accels_;
  std::vector<double> times_;
};

TrialOutcome to_outcome(Transmitter scheduled, const Verdict & v, std::uint64_t seed)
{
  return TrialOutcome{scheduled, v.label, v.residual, seed};
}

std::vector<TrialResult> run_all(
  const Scenario & scenario, const FilterSettings & filter, const DetectorConfig & config,
  const TrialPlan & plan)
{
  const TrialRunner runner(scenario, filter, config, plan);
  std::vector<TrialResult> results(plan.n_trials);
  parallel_for(plan.n_trials, plan.threads, [&](std::size_t i) {results[i] = runner.run(i);});
  return results;
}

Scenario with_snr(const Scenario & base, double snr_db, double calibration_db)
{
  Scenario s = base;
  s.rss_noise = sigma_from_snr(snr_db, calibration_db);
  return s;
}

TrialPlan plan_for(
  const SweepSettings & settings, std::uint64_t domain, double schedule_mix)
{
  TrialPlan plan;
  plan.n_trials = settings.n_trials;
  plan.schedule_mix = schedule_mix;
  plan.master_seed = derive_seed(settings.seed, domain);
  plan.eval_step = settings.eval_step;
  plan.bearings = settings.bearings;
  plan.threads = settings.threads;
  return plan;
}

std::vector<double> residuals_of(std::span<const TrialOutcome> outcomes)
{
  std::vector<double> r;
  r.reserve(outcomes.size());
  for (const TrialOutcome & o : outcomes) {
    r.push_back(o.residual);
  }
  return r;
}

MetricsReport combined_metrics(
  std::span<const TrialOutcome> attack, std::span<const TrialOutcome> legit,
  const SweepCoords & coords)
{
  std::vector<TrialOutcome> all(attack.begin(), attack.end());
  all.insert(all.end(), legit.begin(), legit.end());
  MetricsReport report = metrics(all);
  report.coords = coords;
  return report;
}

void require_non_empty(std::span<const double> values, const char * what)
{
  if (values.empty()) {
    throw InvalidInput(std::string(what) + ": list must not be empty");
  }
}

}  // namespace

Bucket TrialOutcome::bucket() const
{
  if (scheduled == Transmitter::kEmulator) {
    return verdict == Label::kAttacker ? Bucket::kDetection : Bucket::kMiss;
  }
  return verdict == Label::kAttacker ? Bucket::kFalseAlarm : Bucket::kCorrectRejection;
}

std::vector<TrialOutcome> run_trials(
  const Scenario & scenario_template, const FilterSettings & filter,
  const DetectorConfig & config, const TrialPlan & plan)
{
  const auto results = run_all(scenario_template, filter, config, plan);
  std::vector<TrialOutcome> out;
  out.reserve(results.size());
  for (const TrialResult & r : results) {
    out.push_back(to_outcome(r.scheduled, r.proposed, r.seed));
  }
  return out;
}

std::vector<PairedOutcome> run_paired_trials(
  const Scenario & scenario_template, const FilterSettings & filter,
  const DetectorConfig & config, const TrialPlan & plan)
{
  const auto results = run_all(scenario_template, filter, config, plan);
  std::vector<PairedOutcome> out;
  out.reserve(results.size());
  for (const TrialResult & r : results) {
    out.push_back(
      PairedOutcome{
        to_outcome(r.scheduled, r.proposed, r.seed),
        to_outcome(r.scheduled, r.baseline, r.seed)});
  }
  return out;
}

MetricsReport metrics(std::span<const TrialOutcome> outcomes)
{
  if (outcomes.empty()) {
    throw InvalidInput("metrics: no outcomes");
  }
  MetricsReport report;
  for (const TrialOutcome & o : outcomes) {
    switch (o.bucket()) {
      case Bucket::kDetection: ++report.detections; ++report.n_attack_trials; break;
      case Bucket::kMiss: ++report.n_attack_trials; break;
      case Bucket::kFalseAlarm: ++report.false_alarms; ++report.n_legit_trials; break;
      case Bucket::kCorrectRejection: ++report.n_legit_trials; break;
    }
  }
  if (report.n_attack_trials > 0) {
    const auto n = static_cast<double>(report.n_attack_trials);
    report.pd = static_cast<double>(report.detections) / n;
    // misses / n can sit one ulp away from 1 - pd; the complement keeps both
    // pm == 1 - pd and pd + pm == 1 exact.
    report.pm = 1.0 - *report.pd;
  }
  if (report.n_legit_trials > 0) {
    report.pfa = static_cast<double>(report.false_alarms) /
      static_cast<double>(report.n_legit_trials);
  }
  return report;
}

std::vector<TrialOutcome> reclassify(std::span<const TrialOutcome> outcomes, double tau)
{
  const DetectorConfig config{tau};
  config.validate();
  std::vector<TrialOutcome> out(outcomes.begin(), outcomes.end());
  for (TrialOutcome & o : out) {
    o.verdict = decide(o.residual, 0.0, config).label;
  }
  return out;
}

std::vector<MetricsReport> sweep_distance(
  const Scenario & base, std::span<const double> distances, std::span<const double> snr_db,
  const SweepSettings & settings)
{
  require_non_empty(distances, "sweep_distance: distances");
  require_non_empty(snr_db, "sweep_distance: snr list");

  // Legitimate trials do not depend on the attacker, so each SNR row shares one set.
  struct Row
  {
    Scenario scenario;
    DetectorConfig config;
    std::vector<TrialOutcome> legit;
  };
  std::vector<Row> rows;
  rows.reserve(snr_db.size());
  for (double snr : snr_db) {
    Row row{with_snr(base, snr, settings.snr_calibration_db), settings.detector, {}};
    if (settings.target_pfa) {
      const auto calibration = run_trials(
        row.scenario, settings.filter, settings.detector,
        plan_for(settings, seed_domain::kCalibration, 0.0));
      row.config = calibrate_tau(
        residuals_of(calibration), *settings.target_pfa, settings.detector.fusion).config;
    }
    row.legit = run_trials(
      row.scenario, settings.filter, row.config,
      plan_for(settings, seed_domain::kLegitimate, 0.0));
    rows.push_back(std::move(row));
  }

  std::vector<MetricsReport> out;
  out.reserve(distances.size() * snr_db.size());
  for (double d : distances) {
    for (std::size_t j = 0; j < snr_db.size(); ++j) {
      const Row & row = rows[j];
      TrialPlan plan = plan_for(settings, seed_domain::kAttack, 1.0);
      plan.attacker_offset = d;
      const auto attack = run_trials(row.scenario, settings.filter, row.config, plan);
      out.push_back(combined_metrics(attack, row.legit, SweepCoords{d, snr_db[j], row.config.tau}));
    }
  }
  return out;
}

std::vector<MetricsReport> sweep_roc(
  const Scenario & base, double d_pu_pue, std::span<const double> snr_db,
  std::span<const double> pfa_targets, const SweepSettings & settings)
{
  require_non_empty(snr_db, "sweep_roc: snr list");
  require_non_empty(pfa_targets, "sweep_roc: pfa targets");
  for (double p : pfa_targets) {
    if (!(p > 0.0 && p < 1.0)) {
      throw InvalidInput("sweep_roc: pfa targets must lie in (0, 1)");
    }
  }

  std::vector<MetricsReport> out;
  out.reserve(snr_db.size() * pfa_targets.size());
  for (double snr : snr_db) {
    const Scenario scenario = with_snr(base, snr, settings.snr_calibration_db);
    const auto calibration = run_trials(
      scenario, settings.filter, settings.detector,
      plan_for(settings, seed_domain::kCalibration, 0.0));
    const auto cal_residuals = residuals_of(calibration);
    const auto legit = run_trials(
      scenario, settings.filter, settings.detector,
      plan_for(settings, seed_domain::kLegitimate, 0.0));
    TrialPlan attack_plan = plan_for(settings, seed_domain::kAttack, 1.0);
    attack_plan.attacker_offset = d_pu_pue;
    const auto attack = run_trials(scenario, settings.filter, settings.detector, attack_plan);

    for (double target : pfa_targets) {
      const double tau = calibrate_tau(cal_residuals, target, settings.detector.fusion).config.tau;
      out.push_back(
        combined_metrics(
          reclassify(attack, tau), reclassify(legit, tau), SweepCoords{d_pu_pue, snr, tau}));
    }
  }
  return out;
}

std::vector<BaselineComparisonRow> compare_baseline(
  const Scenario & base, std::span<const double> distances, double snr_db,
  const SweepSettings & settings)
{
  require_non_empty(distances, "compare_baseline: distances");
  const Scenario scenario = with_snr(base, snr_db, settings.snr_calibration_db);
  scenario.validate();
  const std::size_t steps = scenario.step_count();

  std::vector<BaselineComparisonRow> out;
  out.reserve(distances.size());
  for (double d : distances) {
    BaselineComparisonRow row;
    row.distance = d;
    std::size_t k = 0;
    while (k < steps && (truth_at(scenario, k).position() - scenario.attacker_pos).norm() < d) {
      ++k;
    }
    if (k == steps) {
      throw InvalidInput(
              "compare_baseline: PU never reaches distance " + std::to_string(d) +
              " m from the attacker");
    }
    row.eval_step = k;
    row.actual_distance = (truth_at(scenario, k).position() - scenario.attacker_pos).norm();

    SweepSettings at_step = settings;
    at_step.eval_step = k;
    const auto attack = run_paired_trials(
      scenario, settings.filter, settings.detector,
      plan_for(at_step, seed_domain::kAttack, 1.0));
    const auto legit = run_paired_trials(
      scenario, settings.filter, settings.detector,
      plan_for(at_step, seed_domain::kLegitimate, 0.0));

    std::vector<TrialOutcome> prop_attack, prop_legit, base_attack, base_legit;
    for (const PairedOutcome & p : attack) {
      prop_attack.push_back(p.proposed);
      base_attack.push_back(p.baseline);
    }
    for (const PairedOutcome & p : legit) {
      prop_legit.push_back(p.proposed);
      base_legit.push_back(p.baseline);
    }
    const SweepCoords coords{row.actual_distance, snr_db, settings.detector.tau};
    row.proposed = combined_metrics(prop_attack, prop_legit, coords);
    row.baseline = combined_metrics(base_attack, base_legit, coords);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace kfpue
