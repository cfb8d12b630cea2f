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
#include "kfpue/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "kfpue/errors.hpp"

namespace kfpue::cli
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return parts;
}

double to_double(std::string_view s)
{
  s = trim(s);
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(value)) {
    throw ConfigError("expected a finite number, got '" + std::string(s) + "'");
  }
  return value;
}

template<typename Int>
Int to_integer(std::string_view s)
{
  s = trim(s);
  Int value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return value;
}

bool to_bool(std::string_view s)
{
  s = trim(s);
  if (s == "true" || s == "yes" || s == "1") {
    return true;
  }
  if (s == "false" || s == "no" || s == "0") {
    return false;
  }
  throw ConfigError("expected true or false, got '" + std::string(s) + "'");
}

std::vector<double> to_doubles(std::string_view s)
{
  std::vector<double> out;
  if (trim(s).empty()) {
    return out;
  }
  for (std::string_view part : split(s, ',')) {
    out.push_back(to_double(part));
  }
  return out;
}

std::string join(const std::vector<double> & values)
{
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += (i ? ", " : "") + format_shortest(values[i]);
  }
  return out;
}

std::optional<double> to_optional_double(std::string_view s)
{
  if (trim(s) == "none") {
    return std::nullopt;
  }
  return to_double(s);
}

std::string from_optional(const std::optional<double> & v)
{
  return v ? format_shortest(*v) : "none";
}

struct Key
{
  std::string_view section;
  std::string_view name;
  std::function<void(ExperimentConfig &, std::string_view)> set;
  std::function<std::string(const ExperimentConfig &)> get;
};

#define KFPUE_DOUBLE_KEY(section, field) \
  Key{section, #field, \
    [](ExperimentConfig & c, std::string_view v) {c.field = to_double(v);}, \
    [](const ExperimentConfig & c) {return format_shortest(c.field);}}

#define KFPUE_LIST_KEY(section, field) \
  Key{section, #field, \
    [](ExperimentConfig & c, std::string_view v) {c.field = to_doubles(v);}, \
    [](const ExperimentConfig & c) {return join(c.field);}}

#define KFPUE_OPTIONAL_KEY(section, field) \
  Key{section, #field, \
    [](ExperimentConfig & c, std::string_view v) {c.field = to_optional_double(v);}, \
    [](const ExperimentConfig & c) {return from_optional(c.field);}}

const std::vector<Key> & keys()
{
  static const std::vector<Key> table{
    KFPUE_DOUBLE_KEY("scenario", field_size),
    KFPUE_DOUBLE_KEY("scenario", start_x),
    KFPUE_DOUBLE_KEY("scenario", start_y),
    KFPUE_DOUBLE_KEY("scenario", start_vx),
    KFPUE_DOUBLE_KEY("scenario", start_vy),
    Key{"scenario", "segments",
      [](ExperimentConfig & c, std::string_view v) {
        c.segments.clear();
        if (trim(v).empty()) {
          return;
        }
        for (std::string_view item : split(v, ',')) {
          const auto f = split(item, ':');
          if (f.size() != 3) {
            throw ConfigError("segments are duration:ax:ay, got '" + std::string(item) + "'");
          }
          c.segments.push_back({to_double(f[0]), to_double(f[1]), to_double(f[2])});
        }
      },
      [](const ExperimentConfig & c) {
        std::string out;
        for (std::size_t i = 0; i < c.segments.size(); ++i) {
          const SegmentSpec & s = c.segments[i];
          out += (i ? ", " : "") + format_shortest(s.duration) + ":" + format_shortest(s.ax) +
            ":" + format_shortest(s.ay);
        }
        return out;
      }},
    Key{"scenario", "anchors",
      [](ExperimentConfig & c, std::string_view v) {
        c.anchors.clear();
        if (trim(v).empty()) {
          return;
        }
        for (std::string_view item : split(v, ',')) {
          const auto f = split(item, ':');
          if (f.size() != 2) {
            throw ConfigError("anchors are x:y, got '" + std::string(item) + "'");
          }
          c.anchors.push_back({to_double(f[0]), to_double(f[1])});
        }
      },
      [](const ExperimentConfig & c) {
        std::string out;
        for (std::size_t i = 0; i < c.anchors.size(); ++i) {
          out += (i ? ", " : "") + format_shortest(c.anchors[i].x) + ":" +
            format_shortest(c.anchors[i].y);
        }
        return out;
      }},
    KFPUE_DOUBLE_KEY("scenario", dt),
    KFPUE_DOUBLE_KEY("scenario", meas_noise_std),
    KFPUE_OPTIONAL_KEY("scenario", attacker_x),
    KFPUE_OPTIONAL_KEY("scenario", attacker_y),
    Key{"scenario", "eval_step",
      [](ExperimentConfig & c, std::string_view v) {
        if (trim(v) == "final") {
          c.eval_step.reset();
        } else {
          c.eval_step = to_integer<std::size_t>(v);
        }
      },
      [](const ExperimentConfig & c) {
        return c.eval_step ? std::to_string(*c.eval_step) : std::string("final");
      }},

    KFPUE_DOUBLE_KEY("tracking", sigma_wx2),
    KFPUE_DOUBLE_KEY("tracking", sigma_wy2),
    KFPUE_DOUBLE_KEY("tracking", v_max),
    Key{"tracking", "use_control_input",
      [](ExperimentConfig & c, std::string_view v) {c.use_control_input = to_bool(v);},
      [](const ExperimentConfig & c) {return std::string(c.use_control_input ? "true" : "false");}},

    KFPUE_DOUBLE_KEY("link", pt),
    KFPUE_DOUBLE_KEY("link", gt),
    KFPUE_DOUBLE_KEY("link", gr),
    KFPUE_DOUBLE_KEY("link", lambda),
    KFPUE_DOUBLE_KEY("link", alpha),
    KFPUE_DOUBLE_KEY("link", snr_calibration_db),

    KFPUE_DOUBLE_KEY("detector", tau),
    KFPUE_OPTIONAL_KEY("detector", target_pfa),
    Key{"detector", "fusion",
      [](ExperimentConfig & c, std::string_view v) {
        v = trim(v);
        if (v == "single") {
          c.fusion = Fusion::kSingleAnchor;
        } else if (v == "or") {
          c.fusion = Fusion::kOrAcrossAnchors;
        } else {
          throw ConfigError("expected single or or, got '" + std::string(v) + "'");
        }
      },
      [](const ExperimentConfig & c) {
        return std::string(c.fusion == Fusion::kSingleAnchor ? "single" : "or");
      }},

    KFPUE_LIST_KEY("sweep", distances),
    KFPUE_LIST_KEY("sweep", snr_db),
    KFPUE_LIST_KEY("sweep", bearings),
    KFPUE_DOUBLE_KEY("sweep", roc_distance),
    KFPUE_LIST_KEY("sweep", roc_snr_db),
    KFPUE_LIST_KEY("sweep", pfa_targets),
    KFPUE_LIST_KEY("sweep", compare_distances),
    KFPUE_DOUBLE_KEY("sweep", compare_snr_db),

    Key{"run", "trials",
      [](ExperimentConfig & c, std::string_view v) {c.trials = to_integer<std::size_t>(v);},
      [](const ExperimentConfig & c) {return std::to_string(c.trials);}},
    Key{"run", "seed",
      [](ExperimentConfig & c, std::string_view v) {c.seed = to_integer<std::uint64_t>(v);},
      [](const ExperimentConfig & c) {return std::to_string(c.seed);}},
    Key{"run", "threads",
      [](ExperimentConfig & c, std::string_view v) {c.threads = to_integer<unsigned>(v);},
      [](const ExperimentConfig & c) {return std::to_string(c.threads);}},
    Key{"run", "out",
      [](ExperimentConfig & c, std::string_view v) {c.out = std::string(trim(v));},
      [](const ExperimentConfig & c) {return c.out;}},
  };
  return table;
}

#undef KFPUE_DOUBLE_KEY
#undef KFPUE_LIST_KEY
#undef KFPUE_OPTIONAL_KEY

ConfigError key_error(std::string_view section, std::string_view key, const std::string & why)
{
  return ConfigError("[" + std::string(section) + "] " + std::string(key) + ": " + why);
}

}  // namespace

std::string format_shortest(double value)
{
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw ConfigError("cannot format number");
  }
  return std::string(buf.data(), ptr);
}

ExperimentConfig parse_config(std::string_view text, std::string_view source)
{
  ExperimentConfig config;
  std::string section;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto where = [&] {
        return std::string(source) + ":" + std::to_string(line_no) + ": ";
      };
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(where() + "unterminated section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      const bool known = std::any_of(
        keys().begin(), keys().end(), [&](const Key & k) {return k.section == section;});
      if (!known) {
        throw ConfigError(where() + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where() + "expected 'key = value'");
    }
    if (section.empty()) {
      throw ConfigError(where() + "key outside of any [section]");
    }
    const std::string name(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = std::find_if(
      keys().begin(), keys().end(),
      [&](const Key & k) {return k.section == section && k.name == name;});
    if (it == keys().end()) {
      throw ConfigError(where() + "unknown key '" + name + "' in [" + section + "]");
    }
    if (!seen.emplace(section, name).second) {
      throw ConfigError(where() + "duplicate key '" + name + "'");
    }
    try {
      it->set(config, value);
    } catch (const ConfigError & e) {
      throw ConfigError(where() + "[" + section + "] " + name + ": " + e.what());
    }
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

std::string serialize_config(const ExperimentConfig & config)
{
  std::string out;
  std::string_view section;
  for (const Key & k : keys()) {
    if (k.section != section) {
      out += (section.empty() ? "[" : "\n[") + std::string(k.section) + "]\n";
      section = k.section;
    }
    out += std::string(k.name) + " = " + k.get(config) + "\n";
  }
  return out;
}

void validate(const ExperimentConfig & c)
{
  const auto positive = [](double v) {return v > 0.0;};
  const auto non_negative = [](double v) {return v >= 0.0;};
  const std::array<std::tuple<std::string_view, std::string_view, double, bool>, 13> scalars{{
    {"scenario", "field_size", c.field_size, positive(c.field_size)},
    {"scenario", "dt", c.dt, positive(c.dt)},
    {"scenario", "meas_noise_std", c.meas_noise_std, non_negative(c.meas_noise_std)},
    {"tracking", "sigma_wx2", c.sigma_wx2, non_negative(c.sigma_wx2)},
    {"tracking", "sigma_wy2", c.sigma_wy2, non_negative(c.sigma_wy2)},
    {"tracking", "v_max", c.v_max, non_negative(c.v_max)},
    {"link", "pt", c.pt, positive(c.pt)},
    {"link", "gt", c.gt, positive(c.gt)},
    {"link", "gr", c.gr, positive(c.gr)},
    {"link", "lambda", c.lambda, positive(c.lambda)},
    {"link", "alpha", c.alpha, positive(c.alpha)},
    {"link", "snr_calibration_db", c.snr_calibration_db, positive(c.snr_calibration_db)},
    {"detector", "tau", c.tau, non_negative(c.tau)},
  }};
  for (const auto & [section, key, value, ok] : scalars) {
    if (!ok) {
      throw key_error(
              section, key, "value " + format_shortest(value) + " is out of range");
    }
  }
  if (c.target_pfa && !(*c.target_pfa > 0.0 && *c.target_pfa < 1.0)) {
    throw key_error("detector", "target_pfa", "must lie in (0, 1) or be none");
  }
  if (c.anchors.empty()) {
    throw key_error("scenario", "anchors", "at least one anchor is required");
  }
  for (const SegmentSpec & s : c.segments) {
    if (!(s.duration > 0.0)) {
      throw key_error("scenario", "segments", "segment durations must be > 0");
    }
  }
  for (double d : c.distances) {
    if (d < 0.0) {
      throw key_error("sweep", "distances", "distances must be >= 0");
    }
  }
  for (double d : c.compare_distances) {
    if (d < 0.0) {
      throw key_error("sweep", "compare_distances", "distances must be >= 0");
    }
  }
  if (c.roc_distance < 0.0) {
    throw key_error("sweep", "roc_distance", "must be >= 0");
  }
  for (double p : c.pfa_targets) {
    if (!(p > 0.0 && p < 1.0)) {
      throw key_error("sweep", "pfa_targets", "targets must lie in (0, 1)");
    }
  }
  if (c.bearings.empty()) {
    throw key_error("sweep", "bearings", "at least one bearing is required");
  }
  if (c.trials < 1) {
    throw key_error("run", "trials", "must be >= 1");
  }
  if (c.out.empty()) {
    throw key_error("run", "out", "must not be empty");
  }
  try {
    const Scenario s = make_scenario(c);
    if (c.eval_step && *c.eval_step >= s.step_count()) {
      throw key_error(
              "scenario", "eval_step",
              "exceeds the last step " + std::to_string(s.step_count() - 1));
    }
  } catch (const InvalidInput & e) {
    throw key_error("scenario", "segments", e.what());
  }
}

Scenario make_scenario(const ExperimentConfig & c)
{
  std::vector<TrajectorySegment> segments;
  segments.reserve(c.segments.size());
  for (const SegmentSpec & s : c.segments) {
    segments.push_back(TrajectorySegment{s.duration, Vector2(s.ax, s.ay)});
  }
  Scenario s(Trajectory::from_segments(
      TargetState{c.start_x, c.start_y, c.start_vx, c.start_vy}, segments));
  s.attacker_pos = Vector2(c.attacker_x.value_or(c.start_x), c.attacker_y.value_or(c.start_y));
  for (std::size_t i = 0; i < c.anchors.size(); ++i) {
    s.anchors.push_back(AnchorNode{static_cast<int>(i), c.anchors[i].x, c.anchors[i].y});
  }
  s.dt = c.dt;
  s.meas_noise_std = c.meas_noise_std;
  s.link = LinkModel{c.pt, c.gt, c.gr, c.lambda, c.alpha};
  s.validate();
  return s;
}

FilterSettings make_filter_settings(const ExperimentConfig & c)
{
  return FilterSettings{c.sigma_wx2, c.sigma_wy2, c.v_max, c.use_control_input};
}

SweepSettings make_sweep_settings(const ExperimentConfig & c)
{
  SweepSettings s;
  s.filter = make_filter_settings(c);
  s.detector = DetectorConfig{c.tau, c.fusion};
  s.target_pfa = c.target_pfa;
  s.snr_calibration_db = c.snr_calibration_db;
  s.bearings = c.bearings;
  s.n_trials = c.trials;
  s.seed = c.seed;
  s.threads = c.threads;
  s.eval_step = c.eval_step;
  return s;
}

}  // namespace kfpue::cli
