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
#include <gtest/gtest.h>

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfpue/cli/csv.hpp"
#include "kfpue/cli/svg_plot.hpp"

using kfpue::cli::CsvTable;
using kfpue::cli::LinePlot;
using kfpue::cli::PlotSeries;

namespace
{

// Small well-formedness check: tags balance, attributes are quoted, no raw '&' or '<'.
bool well_formed_xml(const std::string & doc, std::string * why)
{
  std::vector<std::string> stack;
  std::size_t i = 0;
  const auto fail = [&](const std::string & m) {
      *why = m + " at " + std::to_string(i);
      return false;
    };
  while (i < doc.size()) {
    if (doc[i] == '&') {
      const auto semi = doc.find(';', i);
      if (semi == std::string::npos) {
        return fail("bare ampersand");
      }
      const std::string ent = doc.substr(i, semi - i + 1);
      if (ent != "&amp;" && ent != "&lt;" && ent != "&gt;" && ent != "&quot;" &&
        ent != "&apos;")
      {
        return fail("unknown entity " + ent);
      }
      i = semi + 1;
      continue;
    }
    if (doc[i] != '<') {
      ++i;
      continue;
    }
    if (doc.compare(i, 2, "<?") == 0) {
      const auto end = doc.find("?>", i);
      if (end == std::string::npos) {
        return fail("unterminated declaration");
      }
      i = end + 2;
      continue;
    }
    const auto end = doc.find('>', i);
    if (end == std::string::npos) {
      return fail("unterminated tag");
    }
    std::string tag = doc.substr(i + 1, end - i - 1);
    i = end + 1;
    if (tag.find('<') != std::string::npos) {
      return fail("'<' inside tag");
    }
    if (!tag.empty() && tag.front() == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) {
        return fail("mismatched </" + name + ">");
      }
      stack.pop_back();
      continue;
    }
    const bool self_closing = !tag.empty() && tag.back() == '/';
    std::size_t n = 0;
    while (n < tag.size() && (std::isalnum(static_cast<unsigned char>(tag[n])) || tag[n] == '-' ||
      tag[n] == ':'))
    {
      ++n;
    }
    if (n == 0) {
      return fail("empty tag name");
    }
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) {
      return fail("unbalanced quotes in <" + tag.substr(0, n) + ">");
    }
    if (!self_closing) {
      stack.push_back(tag.substr(0, n));
    }
  }
  if (!stack.empty()) {
    *why = "unclosed <" + stack.back() + ">";
    return false;
  }
  return true;
}

std::size_t count_of(const std::string & hay, const std::string & needle)
{
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST(Csv, EscapesQuotesCommasAndNewlines)
{
  EXPECT_EQ(kfpue::cli::csv_escape("plain"), "plain");
  EXPECT_EQ(kfpue::cli::csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(kfpue::cli::csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(kfpue::cli::csv_escape("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, FixedFormattingIsStable)
{
  EXPECT_EQ(kfpue::cli::format_fixed(1.5), "1.500000");
  EXPECT_EQ(kfpue::cli::format_fixed(-1e-9), "0.000000");
  EXPECT_EQ(kfpue::cli::format_fixed(-0.0, 2), "0.00");
  EXPECT_EQ(kfpue::cli::format_fixed(-2.25, 1), "-2.2");
  EXPECT_THROW(kfpue::cli::format_fixed(NAN), std::invalid_argument);
}

TEST(Csv, TableWritesHeaderAndRows)
{
  CsvTable t({"a", "b,c"});
  t.add_row({"1", "x"});
  t.add_row({"2", "y\"z"});
  EXPECT_THROW(t.add_row({"only one"}), std::invalid_argument);
  std::ostringstream out;
  t.write(out);
  EXPECT_EQ(out.str(), "a,\"b,c\"\n1,x\n2,\"y\"\"z\"\n");
}

TEST(Svg, WellFormedWithOnePolylinePerSeries)
{
  LinePlot plot("P_d & P_m <vs> distance", "d (m)", "probability");
  plot.add_series(PlotSeries{"SNR = -10 dB", {{30, 0.1}, {50, 0.2}, {70, 0.35}}});
  plot.add_series(PlotSeries{"\"quoted\" & <odd>", {{30, 0.5}, {70, 0.9}}});
  plot.add_series(PlotSeries{"flat", {{30, 0.7}, {70, 0.7}}});
  plot.set_y_range(0.0, 1.0);
  const std::string svg = plot.render();
  std::string why;
  EXPECT_TRUE(well_formed_xml(svg, &why)) << why;
  EXPECT_EQ(count_of(svg, "<polyline class=\"series\""), 3u);
  EXPECT_EQ(count_of(svg, "<g class=\"legend\""), 1u);
  EXPECT_NE(svg.find("SNR = -10 dB"), std::string::npos);
  EXPECT_NE(svg.find("&quot;quoted&quot; &amp; &lt;odd&gt;"), std::string::npos);
  EXPECT_EQ(svg, plot.render());
}

TEST(Svg, DegenerateDataStillRenders)
{
  LinePlot plot("single point", "x", "y");
  plot.add_series(PlotSeries{"one", {{5.0, 5.0}}});
  plot.add_series(PlotSeries{"empty", {}});
  std::string why;
  const std::string svg = plot.render();
  EXPECT_TRUE(well_formed_xml(svg, &why)) << why;
  EXPECT_EQ(svg.find("nan"), std::string::npos);
  EXPECT_EQ(svg.find("inf"), std::string::npos);
}

TEST(Svg, CheckerCatchesBrokenDocuments)
{
  std::string why;
  EXPECT_FALSE(well_formed_xml("<svg><g></svg>", &why));
  EXPECT_FALSE(well_formed_xml("<svg>a & b</svg>", &why));
  EXPECT_TRUE(well_formed_xml("<?xml version=\"1.0\"?><svg><g/></svg>", &why));
}
