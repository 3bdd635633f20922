// Copyright 2026 The gdppca Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#ifndef GDPPCA_DATA_IO_HPP_
#define GDPPCA_DATA_IO_HPP_

// Numeric CSV input for user datasets and matrix output for fitted frames.
// Decimal point is always '.', independent of the process locale. The first
// row is a header iff any of its cells fails to parse as a number.

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "gdppca/errors.hpp"
#include "gdppca/harness.hpp"
#include "gdppca/kendall.hpp"
#include "gdppca/linalg.hpp"

namespace gdppca {

struct NumericTable {
  std::vector<std::string> header;  // empty when the file had none
  Matrix values;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::optional<double> try_parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.data();
  if (*begin == '+') ++begin;
  double v = 0.0;
  const auto res = std::from_chars(begin, cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

}  // namespace detail

inline NumericTable read_numeric_csv(std::istream& in) {
  NumericTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> cells = detail::split_csv_line(line);
    for (auto& c : cells) c = detail::trim(c);
    if (first_content) {
      first_content = false;
      width = cells.size();
      bool numeric = true;
      for (const auto& c : cells) numeric = numeric && detail::try_parse_number(c).has_value();
      if (!numeric) {
        table.header = cells;
        continue;
      }
    }
    if (cells.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " columns, got " +
                           std::to_string(cells.size()),
                       line_no, 0);
    }
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const auto v = detail::try_parse_number(cells[j]);
      if (!v) throw ParseError("not a number: '" + cells[j] + "'", line_no, j + 1);
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return table;
}

// Writes a matrix with a header line, shortest round-trip number formatting.
inline void write_matrix_csv(std::ostream& out, const Matrix& m,
                             const std::vector<std::string>& header) {
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

}  // namespace gdppca

#endif  // GDPPCA_DATA_IO_HPP_
