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
#ifndef KFPUE__CLI__COMMANDS_HPP_
#define KFPUE__CLI__COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "kfpue/cli/config.hpp"
#include "kfpue/cli/csv.hpp"
#include "kfpue/cli/svg_plot.hpp"
#include "kfpue/experiments.hpp"

namespace kfpue::cli
{

enum class Command
{
  kTrack,
  kSweepDistance,
  kSweepRoc,
  kCompareBaseline,
};

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

struct TrackRun
{
  CsvTable table;
  LinePlot plot;
  double filter_rmse{0.0};
  double raw_rmse{0.0};
};

/// One seeded tracking run over the whole scenario.
TrackRun run_track(const ExperimentConfig & config);

CsvTable sweep_distance_table(const std::vector<MetricsReport> & reports);
CsvTable sweep_roc_table(const std::vector<MetricsReport> & reports);
CsvTable compare_baseline_table(const std::vector<BaselineComparisonRow> & rows);

/// Runs `command` and writes its CSV, SVG and manifest.ini into config.out.
/// Returns the files written. Progress and summaries go to `log`.
std::vector<std::filesystem::path> run(
  Command command, const ExperimentConfig & config, std::ostream & log);

}  // namespace kfpue::cli

#endif  // KFPUE__CLI__COMMANDS_HPP_
