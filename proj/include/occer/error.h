/*
 * Copyright 2026 The OCCER Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OCCER_ERROR_H_
#define OCCER_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace occer {

// Bad input data: unreadable files, malformed cells, shape mismatches,
// non-finite values. The CLI maps this to exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or hyperparameters. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed CSV cell. `row` is the 1-based data row (header excluded) and
// `column` the 1-based column in the file.
class CsvParseError : public DataError {
 public:
  CsvParseError(std::size_t row, std::size_t column, const std::string& what)
      : DataError(what), row_(row), column_(column) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace occer

#endif  // OCCER_ERROR_H_
