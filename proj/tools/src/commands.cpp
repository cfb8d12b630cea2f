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
#include "kfpue/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "kfpue/random.hpp"
#include "kfpue/tracking.hpp"

namespace kfpue::cli
{

namespace
{

namespace fs = std::filesystem;

std::string prob(const std::optional<double> & p) { return p ? format_fixed(*p, 6) : ""; }

std::string snr_label(double snr) { return "SNR " + format_shortest(snr) + " dB"; }

void write_manifest(const fs::path & dir, Command command, const ExperimentConfig & config)
{
  std::ofstream out(dir / "manifest.ini", std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write manifest in '" + dir.string() + "'");
  }
  out << "# kfpue " << command_name(command) << "\n"
      << "# reproduce with: kfpue " << command_name(command) << " --config manifest.ini\n"
      << serialize_config(config);
}

// Series keyed by SNR, in first-seen order.
std::vector<PlotSeries> series_by_snr(
  const std::vector<MetricsReport> & reports, double (*x_of)(const MetricsReport &),
  double (*y_of)(const MetricsReport &))
{
  std::vector<PlotSeries> series;
  std::map<double, std::size_t> index;
  for (const MetricsReport & r : reports) {
    const auto [it, inserted] = index.emplace(r.coords.snr_db, series.size());
    if (inserted) {
      series.push_back(PlotSeries{snr_label(r.coords.snr_db), {}});
    }
    series[it->second].points.emplace_back(x_of(r), y_of(r));
  }
  return series;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name)
{
  if (name == "track") {
    return Command::kTrack;
  }
  if (name == "sweep-distance") {
    return Command::kSweepDistance;
  }
  if (name == "sweep-roc") {
    return Command::kSweepRoc;
  }
  if (name == "compare-baseline") {
    return Command::kCompareBaseline;
  }
  return std::nullopt;
}

std::string_view command_name(Command command)
{
  switch (command) {
    case Command::kTrack: return "track";
    case Command::kSweepDistance: return "sweep-distance";
    case Command::kSweepRoc: return "sweep-roc";
    case Command::kCompareBaseline: return "compare-baseline";
  }
  return "unknown";
}

TrackRun run_track(const ExperimentConfig & config)
{
  const Scenario scenario = make_scenario(config);
  const FilterSettings filter = make_filter_settings(config);
  const MeasurementModel meas_model = MeasurementModel::isotropic(scenario.meas_noise_std);
  const MotionModel motion{scenario.dt, filter.sigma_wx2, filter.sigma_wy2};
  const std::size_t steps = scenario.step_count();

  RandomStream rng(derive_seed(config.seed, 0, StreamPurpose::kMeasurement));
  std::vector<TimedPosition> fixes(steps);
  std::vector<Vector2> accels(steps, Vector2::Zero());
  for (std::size_t k = 0; k < steps; ++k) {
    fixes[k] = TimedPosition{scenario.time_at(k), emit_position_measurement(scenario, k, rng)};
    if (filter.use_control_input) {
      accels[k] = control_input(scenario, k);
    }
  }
  std::vector<FilterEstimate> estimates{
    initial_estimate(fixes.front().z, meas_model, filter.v_max)};
  if (steps > 1) {
    const auto rest = track(
      std::span(fixes).subspan(1), motion, meas_model, estimates.front(),
      std::span(accels).subspan(1), fixes.front().t);
    estimates.insert(estimates.end(), rest.begin(), rest.end());
  }

  TrackRun run{
    CsvTable({"step", "t_s", "true_x_m", "true_y_m", "true_vx_mps", "true_vy_mps", "meas_x_m",
        "meas_y_m", "est_x_m", "est_y_m", "est_vx_mps", "est_vy_mps"}),
    LinePlot("Primary user track", "x (m)", "y (m)"), 0.0, 0.0};
  PlotSeries truth{"true trajectory", {}};
  PlotSeries measured{"position fixes", {}};
  PlotSeries estimated{"Kalman estimate", {}};
  double filter_sq = 0.0;
  double raw_sq = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const TargetState t = truth_at(scenario, k);
    const TargetState & e = estimates[k].state;
    const Vector2 & z = fixes[k].z;
    run.table.add_row(
      {std::to_string(k), format_fixed(fixes[k].t), format_fixed(t.x), format_fixed(t.y),
        format_fixed(t.vx), format_fixed(t.vy), format_fixed(z(0)), format_fixed(z(1)),
        format_fixed(e.x), format_fixed(e.y), format_fixed(e.vx), format_fixed(e.vy)});
    truth.points.emplace_back(t.x, t.y);
    measured.points.emplace_back(z(0), z(1));
    estimated.points.emplace_back(e.x, e.y);
    filter_sq += (e.position() - t.position()).squaredNorm();
    raw_sq += (z - t.position()).squaredNorm();
  }
  run.filter_rmse = std::sqrt(filter_sq / static_cast<double>(steps));
  run.raw_rmse = std::sqrt(raw_sq / static_cast<double>(steps));
  run.plot.add_series(std::move(truth));
  run.plot.add_series(std::move(measured));
  run.plot.add_series(std::move(estimated));
  return run;
}

CsvTable sweep_distance_table(const std::vector<MetricsReport> & reports)
{
  CsvTable table({"d_pu_pue_m", "snr_db", "tau_m", "pd", "pm", "pfa", "n_attack", "n_legit"});
  for (const MetricsReport & r : reports) {
    table.add_row(
      {format_fixed(r.coords.d_pu_pue), format_fixed(r.coords.snr_db), format_fixed(r.coords.tau),
        prob(r.pd), prob(r.pm), prob(r.pfa), std::to_string(r.n_attack_trials),
        std::to_string(r.n_legit_trials)});
  }
  return table;
}

CsvTable sweep_roc_table(const std::vector<MetricsReport> & reports)
{
  CsvTable table({"d_pu_pue_m", "snr_db", "tau_m", "pfa", "pd", "pm", "n_attack", "n_legit"});
  for (const MetricsReport & r : reports) {
    table.add_row(
      {format_fixed(r.coords.d_pu_pue), format_fixed(r.coords.snr_db), format_fixed(r.coords.tau),
        prob(r.pfa), prob(r.pd), prob(r.pm), std::to_string(r.n_attack_trials),
        std::to_string(r.n_legit_trials)});
  }
  return table;
}

CsvTable compare_baseline_table(const std::vector<BaselineComparisonRow> & rows)
{
  CsvTable table({"distance_bin_m", "eval_step", "d_pu_pue_m", "snr_db", "tau_m", "proposed_pd",
      "baseline_pd", "proposed_pm", "baseline_pm", "proposed_pfa", "baseline_pfa", "n_attack",
      "n_legit"});
  for (const BaselineComparisonRow & r : rows) {
    table.add_row(
      {format_fixed(r.distance), std::to_string(r.eval_step), format_fixed(r.actual_distance),
        format_fixed(r.proposed.coords.snr_db), format_fixed(r.proposed.coords.tau),
        prob(r.proposed.pd), prob(r.baseline.pd), prob(r.proposed.pm), prob(r.baseline.pm),
        prob(r.proposed.pfa), prob(r.baseline.pfa), std::to_string(r.proposed.n_attack_trials),
        std::to_string(r.proposed.n_legit_trials)});
  }
  return table;
}

std::vector<fs::path> run(Command command, const ExperimentConfig & config, std::ostream & log)
{
  validate(config);
  const fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir.string() + "': " +
            ec.message());
  }

  std::vector<fs::path> written;
  const auto emit_csv = [&](const CsvTable & table, const char * name) {
      table.write(dir / name);
      written.push_back(dir / name);
    };
  const auto emit_svg = [&](const LinePlot & plot, const char * name) {
      plot.write(dir / name);
      written.push_back(dir / name);
    };

  const Scenario scenario = make_scenario(config);
  const SweepSettings settings = make_sweep_settings(config);

  switch (command) {
    case Command::kTrack: {
        const TrackRun track_run = run_track(config);
        emit_csv(track_run.table, "track.csv");
        emit_svg(track_run.plot, "track.svg");
        log << "track: " << track_run.table.rows().size() << " steps, filter RMSE "
            << format_fixed(track_run.filter_rmse, 3) << " m, raw RMSE "
            << format_fixed(track_run.raw_rmse, 3) << " m\n";
        break;
      }
    case Command::kSweepDistance: {
        const auto reports = sweep_distance(scenario, config.distances, config.snr_db, settings);
        emit_csv(sweep_distance_table(reports), "sweep_distance.csv");
        LinePlot pd_plot("Detection probability vs PU-PUE distance", "d_pu_pue (m)", "P_d");
        LinePlot pm_plot("Miss probability vs PU-PUE distance", "d_pu_pue (m)", "P_m");
        for (auto & s : series_by_snr(
            reports, [](const MetricsReport & r) {return r.coords.d_pu_pue;},
            [](const MetricsReport & r) {return *r.pd;}))
        {
          pd_plot.add_series(std::move(s));
        }
        for (auto & s : series_by_snr(
            reports, [](const MetricsReport & r) {return r.coords.d_pu_pue;},
            [](const MetricsReport & r) {return *r.pm;}))
        {
          pm_plot.add_series(std::move(s));
        }
        pd_plot.set_y_range(0.0, 1.0);
        pm_plot.set_y_range(0.0, 1.0);
        emit_svg(pd_plot, "pd_vs_distance.svg");
        emit_svg(pm_plot, "pm_vs_distance.svg");
        log << "sweep-distance: " << reports.size() << " cells\n";
        break;
      }
    case Command::kSweepRoc: {
        const auto reports = sweep_roc(
          scenario, config.roc_distance, config.roc_snr_db, config.pfa_targets, settings);
        emit_csv(sweep_roc_table(reports), "sweep_roc.csv");
        LinePlot roc(
          "P_d vs P_fa at d_pu_pue = " + format_shortest(config.roc_distance) + " m", "P_fa",
          "P_d");
        for (auto & s : series_by_snr(
            reports, [](const MetricsReport & r) {return *r.pfa;},
            [](const MetricsReport & r) {return *r.pd;}))
        {
          roc.add_series(std::move(s));
        }
        roc.set_y_range(0.0, 1.0);
        emit_svg(roc, "roc.svg");
        log << "sweep-roc: " << reports.size() << " cells\n";
        break;
      }
    case Command::kCompareBaseline: {
        const auto rows = compare_baseline(
          scenario, config.compare_distances, config.compare_snr_db, settings);
        emit_csv(compare_baseline_table(rows), "compare_baseline.csv");
        LinePlot pd_plot("Detection probability: proposed vs RSS baseline", "d_pu_pue (m)", "P_d");
        LinePlot pm_plot("Miss probability: proposed vs RSS baseline", "d_pu_pue (m)", "P_m");
        PlotSeries prop_pd{"Kalman + RSS", {}}, base_pd{"RSS, fixed PU", {}};
        PlotSeries prop_pm{"Kalman + RSS", {}}, base_pm{"RSS, fixed PU", {}};
        for (const BaselineComparisonRow & r : rows) {
          prop_pd.points.emplace_back(r.actual_distance, *r.proposed.pd);
          base_pd.points.emplace_back(r.actual_distance, *r.baseline.pd);
          prop_pm.points.emplace_back(r.actual_distance, *r.proposed.pm);
          base_pm.points.emplace_back(r.actual_distance, *r.baseline.pm);
        }
        pd_plot.add_series(std::move(prop_pd));
        pd_plot.add_series(std::move(base_pd));
        pm_plot.add_series(std::move(prop_pm));
        pm_plot.add_series(std::move(base_pm));
        pd_plot.set_y_range(0.0, 1.0);
        pm_plot.set_y_range(0.0, 1.0);
        emit_svg(pd_plot, "compare_pd.svg");
        emit_svg(pm_plot, "compare_pm.svg");
        log << "compare-baseline: " << rows.size() << " distance bins\n";
        break;
      }
  }
  write_manifest(dir, command, config);
  written.push_back(dir / "manifest.ini");
  return written;
}

}  // namespace kfpue::cli
