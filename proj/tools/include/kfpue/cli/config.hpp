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
#ifndef KFPUE__CLI__CONFIG_HPP_
#define KFPUE__CLI__CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kfpue/experiments.hpp"
#include "kfpue/scenario.hpp"

namespace kfpue::cli
{

/// Parse or validation failure. what() names the source line or the offending key.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct SegmentSpec
{
  double duration{0.0};
  double ax{0.0};
  double ay{0.0};

  friend bool operator==(const SegmentSpec &, const SegmentSpec &) = default;
};

struct AnchorSpec
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const AnchorSpec &, const AnchorSpec &) = default;
};

/// Everything a run needs. Defaults are the reference configuration documented in README.md.
struct ExperimentConfig
{
  // [scenario]
  double field_size{1000.0};
  double start_x{100.0};
  double start_y{100.0};
  double start_vx{5.0};
  double start_vy{3.0};
  std::vector<SegmentSpec> segments{
    {50.0, 0.0, 0.0}, {50.0, 0.0, -0.12}, {50.0, -0.2, 0.0}, {50.0, 0.1, 0.12}};
  std::vector<AnchorSpec> anchors{{500.0, 0.0}};
  double dt{1.0};
  double meas_noise_std{5.0};
  std::optional<double> attacker_x;  ///< defaults to start_x
  std::optional<double> attacker_y;  ///< defaults to start_y
  std::optional<std::size_t> eval_step;  ///< final step when unset

  // [tracking]
  double sigma_wx2{0.01};
  double sigma_wy2{0.01};
  double v_max{10.0};
  bool use_control_input{true};

  // [link]
  double pt{1.0};
  double gt{1.0};
  double gr{1.0};
  double lambda{0.333};
  double alpha{2.0};
  double snr_calibration_db{3.0};

  // [detector]
  double tau{50.0};
  std::optional<double> target_pfa{0.05};
  Fusion fusion{Fusion::kSingleAnchor};

  // [sweep]
  std::vector<double> distances{30.0, 50.0, 70.0, 90.0, 110.0, 130.0, 150.0};
  std::vector<double> snr_db{-10.0, -5.0, 0.0, 5.0, 10.0};
  std::vector<double> bearings{0.0};
  double roc_distance{30.0};
  std::vector<double> roc_snr_db{-15.0, -10.0, -5.0, 0.0, 5.0};
  std::vector<double> pfa_targets{0.02, 0.05, 0.1, 0.2, 0.3};
  std::vector<double> compare_distances{0.0, 30.0, 50.0, 70.0, 90.0, 110.0, 130.0, 150.0};
  double compare_snr_db{10.0};

  // [run]
  std::size_t trials{10000};
  std::uint64_t seed{1};
  unsigned threads{0};
  std::string out{"out"};

  friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

/// Parses sectioned key = value text. `source` prefixes line-numbered errors.
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");

/// Reads and parses a file. Throws ConfigError if it cannot be read.
ExperimentConfig load_config(const std::filesystem::path & path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig & config);

/// Throws ConfigError naming the first invalid key.
void validate(const ExperimentConfig & config);

Scenario make_scenario(const ExperimentConfig & config);
SweepSettings make_sweep_settings(const ExperimentConfig & config);
FilterSettings make_filter_settings(const ExperimentConfig & config);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

}  // namespace kfpue::cli

#endif  // KFPUE__CLI__CONFIG_HPP_
