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
#include "kfpue/cli/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kfpue/cli/csv.hpp"

namespace kfpue::cli
{

namespace
{

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 190.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

constexpr std::array<const char *, 8> kPalette{
  "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) { return format_fixed(v, 2); }

// Step of 1, 2 or 5 times a power of ten giving roughly `target` intervals.
double nice_step(double span, int target)
{
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double unit = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return unit * mag;
}

std::string tick_label(double v, double step)
{
  const int decimals = std::clamp(static_cast<int>(-std::floor(std::log10(step))), 0, 6);
  return format_fixed(v, decimals);
}

}  // namespace

std::string xml_escape(const std::string & text)
{
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

LinePlot::LinePlot(std::string title, std::string x_label, std::string y_label)
: title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void LinePlot::add_series(PlotSeries series)
{
  for (const auto & [x, y] : series.points) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument("LinePlot: series '" + series.name + "' has non-finite points");
    }
  }
  series_.push_back(std::move(series));
}

void LinePlot::set_x_range(double lo, double hi) { x_range_ = {lo, hi}; }

void LinePlot::set_y_range(double lo, double hi) { y_range_ = {lo, hi}; }

std::pair<double, double> LinePlot::data_range(bool x_axis) const
{
  const auto & fixed = x_axis ? x_range_ : y_range_;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  if (fixed) {
    std::tie(lo, hi) = *fixed;
  } else {
    for (const PlotSeries & s : series_) {
      for (const auto & p : s.points) {
        const double v = x_axis ? p.first : p.second;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    return {0.0, 1.0};
  }
  if (hi - lo < 1e-12) {
    return {lo - 1.0, hi + 1.0};
  }
  return {lo, hi};
}

std::string LinePlot::render() const
{
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto [x_lo, x_hi] = data_range(true);
  const auto [y_lo, y_hi] = data_range(false);
  const auto sx = [&](double x) {return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w;};
  const auto sy = [&](double y) {return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h;};

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kWidth)
      << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' '
      << num(kHeight) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"24.00\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << xml_escape(title_) << "</text>\n";

  // Grid and ticks.
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  const double x_step = nice_step(x_hi - x_lo, 6);
  for (double t = std::ceil(x_lo / x_step - 1e-9) * x_step; t <= x_hi + 1e-9 * x_step;
    t += x_step)
  {
    svg << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(sx(t))
        << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"#e5e5e5\"/>\n"
        << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << tick_label(t, x_step) << "</text>\n";
  }
  const double y_step = nice_step(y_hi - y_lo, 5);
  for (double t = std::ceil(y_lo / y_step - 1e-9) * y_step; t <= y_hi + 1e-9 * y_step;
    t += y_step)
  {
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(t)) << "\" x2=\""
        << num(kLeft + plot_w) << "\" y2=\"" << num(sy(t)) << "\" stroke=\"#e5e5e5\"/>\n"
        << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(t) + 4)
        << "\" text-anchor=\"end\">" << tick_label(t, y_step) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
      << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#000\"/>\n"
      << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 14)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(x_label_) << "</text>\n"
      << "<text x=\"18.00\" y=\"" << num(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18.00 " << num(kTop + plot_h / 2) << ")\">"
      << xml_escape(y_label_) << "</text>\n";

  // Series.
  for (std::size_t i = 0; i < series_.size(); ++i) {
    const PlotSeries & s = series_[i];
    const char * color = kPalette[i % kPalette.size()];
    svg << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      svg << (k ? " " : "") << num(sx(s.points[k].first)) << ',' << num(sy(s.points[k].second));
    }
    svg << "\"/>\n";
    if (s.points.size() <= 40) {
      for (const auto & [x, y] : s.points) {
        svg << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y))
            << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      }
    }
  }

  // Legend.
  const double lx = kLeft + plot_w + 16;
  svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < series_.size(); ++i) {
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << kPalette[i % kPalette.size()]
        << "\" stroke-width=\"2.5\"/>\n"
        << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\">"
        << xml_escape(series_[i].name) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void LinePlot::write(const std::filesystem::path & path) const
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << render();
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace kfpue::cli
