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
#ifndef GDPPCA_ERRORS_HPP_
#define GDPPCA_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gdppca {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or index contract violated (wrong length, rank out of range, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed or a matrix was too ill-conditioned to proceed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Data is present but carries no usable spread (e.g. all rows identical).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value (privacy budget, grid, transform radius, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. Row and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : Error(format(what, row, column)), row_(row), column_(column) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t row,
                            std::size_t column) {
    std::string out = what;
    if (row > 0) {
      out += " (row " + std::to_string(row);
      if (column > 0) out += ", column " + std::to_string(column);
      out += ")";
    }
    return out;
  }

  std::size_t row_;
  std::size_t column_;
};

}  // namespace gdppca

#endif  // GDPPCA_ERRORS_HPP_
