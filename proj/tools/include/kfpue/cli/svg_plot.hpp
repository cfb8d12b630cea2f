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
#ifndef KFPUE__CLI__SVG_PLOT_HPP_
#define KFPUE__CLI__SVG_PLOT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kfpue::cli
{

struct PlotSeries
{
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/*
 * Minimal line chart rendered straight to SVG 1.1: frame, ticked axes, one polyline per
 * series and a legend to the right of the plot area. Output depends only on the inputs.
 *
 *   <------------------- kWidth ------------------->
 *   | kLeft |        plot area       | legend area |
 */
class LinePlot
{
public:
  LinePlot(std::string title, std::string x_label, std::string y_label);

  void add_series(PlotSeries series);
  void set_x_range(double lo, double hi);
  void set_y_range(double lo, double hi);

  std::string render() const;
  void write(const std::filesystem::path & path) const;

  const std::vector<PlotSeries> & series() const { return series_; }

private:
  std::pair<double, double> data_range(bool x_axis) const;

  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<PlotSeries> series_;
  std::optional<std::pair<double, double>> x_range_;
  std::optional<std::pair<double, double>> y_range_;
};

/// Escapes &, <, >, " for XML text and attributes.
std::string xml_escape(const std::string & text);

}  // namespace kfpue::cli

#endif  // KFPUE__CLI__SVG_PLOT_HPP_
