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
#ifndef KFPUE__CLI__CSV_HPP_
#define KFPUE__CLI__CSV_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace kfpue::cli
{

/// Fixed-point text with `precision` decimals. Never emits "-0.000".
std::string format_fixed(double value, int precision = 6);

/// Quotes a field per RFC 4180 when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

/// In-memory table written as CSV with a header row and CRLF-free "\n" line ends.
class CsvTable
{
public:
  explicit CsvTable(std::vector<std::string> header);

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<std::string> row);

  const std::vector<std::string> & header() const { return header_; }
  const std::vector<std::vector<std::string>> & rows() const { return rows_; }

  void write(std::ostream & out) const;
  void write(const std::filesystem::path & path) const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace kfpue::cli

#endif  // KFPUE__CLI__CSV_HPP_
