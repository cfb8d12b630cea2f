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
#include "kfpue/cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace kfpue::cli
{

std::string format_fixed(double value, int precision)
{
  if (!std::isfinite(value)) {
    throw std::invalid_argument("format_fixed: non-finite value");
  }
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(
    buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, precision);
  if (ec != std::errc{}) {
    throw std::invalid_argument("format_fixed: value too large");
  }
  std::string text(buf.data(), ptr);
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) {
    text.erase(0, 1);
  }
  return text;
}

std::string csv_escape(std::string_view field)
{
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header)
: header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row)
{
  if (row.size() != header_.size()) {
    throw std::invalid_argument("CsvTable: row width does not match the header");
  }
  rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream & out) const
{
  const auto emit = [&out](const std::vector<std::string> & fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        out << (i ? "," : "") << csv_escape(fields[i]);
      }
      out << '\n';
    };
  emit(header_);
  for (const auto & row : rows_) {
    emit(row);
  }
}

void CsvTable::write(const std::filesystem::path & path) const
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  write(out);
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace kfpue::cli
