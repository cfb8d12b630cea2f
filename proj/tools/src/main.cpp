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
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "kfpue/cli/commands.hpp"
#include "kfpue/cli/config.hpp"

namespace
{

struct Overrides
{
  std::string config_path;
  std::uint64_t seed{0};
  std::string out;
  std::size_t trials{0};
  unsigned threads{0};
};

}  // namespace

int main(int argc, char ** argv)
{
  using kfpue::cli::Command;

  CLI::App app{"Kalman-filter detection of primary user emulation attacks"};
  app.require_subcommand(1);

  Overrides opts;
  const auto add_common = [&opts](CLI::App * sub) {
      sub->add_option("--config", opts.config_path, "Sectioned key=value configuration file")
      ->check(CLI::ExistingFile);
      sub->add_option("--seed", opts.seed, "Master seed (u64)");
      sub->add_option("--out", opts.out, "Output directory");
      sub->add_option("--trials", opts.trials, "Monte Carlo trials per cell")
      ->check(CLI::PositiveNumber);
      sub->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
    };

  const std::pair<Command, const char *> commands[] = {
    {Command::kTrack, "Track the primary user once; true vs estimated path"},
    {Command::kSweepDistance, "P_d / P_m over emulator distance, one curve per SNR"},
    {Command::kSweepRoc, "P_d vs P_fa over calibrated thresholds, one curve per SNR"},
    {Command::kCompareBaseline, "Moving user, fixed emulator: proposed vs fixed-reference RSS"},
  };
  for (const auto & [c, help] : commands) {
    add_common(app.add_subcommand(std::string(kfpue::cli::command_name(c)), help));
  }
  auto * print = app.add_subcommand("print-config", "Print the resolved configuration");
  add_common(print);

  CLI11_PARSE(app, argc, argv);

  try {
    kfpue::cli::ExperimentConfig config;
    if (!opts.config_path.empty()) {
      config = kfpue::cli::load_config(opts.config_path);
    }
    CLI::App * sub = app.get_subcommands().front();
    if (sub->count("--seed")) {
      config.seed = opts.seed;
    }
    if (sub->count("--out")) {
      config.out = opts.out;
    }
    if (sub->count("--trials")) {
      config.trials = opts.trials;
    }
    if (sub->count("--threads")) {
      config.threads = opts.threads;
    }
    kfpue::cli::validate(config);

    if (sub == print) {
      std::cout << kfpue::cli::serialize_config(config);
      return 0;
    }
    const Command command = *kfpue::cli::parse_command(sub->get_name());
    for (const auto & path : kfpue::cli::run(command, config, std::cout)) {
      std::cout << "wrote " << path.string() << '\n';
    }
  } catch (const std::exception & e) {
    std::cerr << "kfpue: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
