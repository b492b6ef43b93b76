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

#include "occer/dataset.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>

#include "occer/error.h"

namespace occer {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      return cells;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::string CellPosition(std::size_t row, std::size_t column) {
  return "(row " + std::to_string(row) + ", column " + std::to_string(column) + ")";
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw DataError("matrix data has " + std::to_string(data_.size()) +
                    " values, expected " + std::to_string(rows_ * cols_));
  }
}

std::vector<double> Matrix::Column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::WithoutColumn(std::size_t c) const {
  Matrix out(rows_, cols_ - 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j != c) out(r, k++) = (*this)(r, j);
    }
  }
  return out;
}

Matrix Matrix::SelectRows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw DataError("row index out of range");
    const auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Dataset::Dataset(Matrix features, std::optional<std::vector<Label>> labels,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)) {
  const std::size_t m = features_.cols();
  if (m < 2) {
    throw DataError("dataset needs at least 2 features, got " + std::to_string(m));
  }
  for (std::size_t r = 0; r < features_.rows(); ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (!std::isfinite(features_(r, c))) {
        throw DataError("non-finite value at " + CellPosition(r + 1, c + 1));
      }
    }
  }
  if (labels_ && labels_->size() != features_.rows()) {
    throw DataError("dataset has " + std::to_string(features_.rows()) +
                    " rows but " + std::to_string(labels_->size()) + " labels");
  }
  if (feature_names_.empty()) {
    for (std::size_t c = 0; c < m; ++c) feature_names_.push_back("x" + std::to_string(c + 1));
  } else if (feature_names_.size() != m) {
    throw DataError("dataset has " + std::to_string(m) + " features but " +
                    std::to_string(feature_names_.size()) + " names");
  }
}

std::size_t Dataset::CountLabel(Label label) const {
  if (!labels_) return 0;
  std::size_t count = 0;
  for (Label l : *labels_) count += (l == label);
  return count;
}

Dataset Dataset::SelectRows(std::span<const std::size_t> rows) const {
  std::optional<std::vector<Label>> labels;
  if (labels_) {
    labels.emplace();
    labels->reserve(rows.size());
    for (std::size_t r : rows) labels->push_back((*labels_)[r]);
  }
  return Dataset(features_.SelectRows(rows), std::move(labels), feature_names_);
}

Dataset Dataset::TargetRows() const {
  if (!labels_) return *this;
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < labels_->size(); ++r) {
    if ((*labels_)[r] == Label::kTarget) rows.push_back(r);
  }
  return SelectRows(rows);
}

Dataset ParseCsv(std::istream& in, const CsvOptions& options) {
  if (options.label_column.has_value() != options.target_label.has_value()) {
    throw ConfigError("label column and target label must be given together");
  }
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV input is empty");
  const auto header = SplitCommas(line);

  std::optional<std::size_t> label_index;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (options.label_column && header[c] == *options.label_column) {
      label_index = c;
    } else {
      names.emplace_back(header[c]);
    }
  }
  if (options.label_column && !label_index) {
    throw DataError("label column '" + *options.label_column + "' not found in header");
  }
  if (names.size() < 2) {
    throw DataError("CSV needs at least 2 feature columns, found " +
                    std::to_string(names.size()));
  }

  std::vector<double> values;
  std::optional<std::vector<Label>> labels;
  if (label_index) labels.emplace();
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    ++row;
    const auto cells = SplitCommas(line);
    if (cells.size() != header.size()) {
      throw CsvParseError(row, cells.size(),
                          "row " + std::to_string(row) + " has " +
                              std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_index && c == *label_index) {
        labels->push_back(cells[c] == *options.target_label ? Label::kTarget
                                                            : Label::kOutlier);
        continue;
      }
      const std::string_view cell = cells[c];
      if (cell.empty()) {
        throw CsvParseError(row, c + 1, "missing value at " + CellPosition(row, c + 1));
      }
      double value = 0.0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || end != cell.data() + cell.size()) {
        throw CsvParseError(row, c + 1,
                            "non-numeric value '" + std::string(cell) + "' at " +
                                CellPosition(row, c + 1));
      }
      if (!std::isfinite(value)) {
        throw CsvParseError(row, c + 1, "non-finite value at " + CellPosition(row, c + 1));
      }
      values.push_back(value);
    }
  }
  const std::size_t m = names.size();
  return Dataset(Matrix(row, m, std::move(values)), std::move(labels), std::move(names));
}

Dataset LoadCsv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  try {
    return ParseCsv(in, options);
  } catch (const CsvParseError& e) {
    throw CsvParseError(e.row(), e.column(), path.string() + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void NormalizationParams::NormalizeRow(std::span<const double> in,
                                       std::span<double> out) const {
  for (std::size_t j = 0; j < means.size(); ++j) {
    out[j] = constant_mask[j] ? 0.0 : (in[j] - means[j]) / stds[j];
  }
}

NormalizationParams FitNormalizer(const Matrix& train) {
  const std::size_t n = train.rows();
  const std::size_t m = train.cols();
  if (n < 2) {
    throw DataError("normalizer needs at least 2 rows, got " + std::to_string(n));
  }
  NormalizationParams params;
  params.means.assign(m, 0.0);
  params.stds.assign(m, 1.0);
  params.constant_mask.assign(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += train(i, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    bool constant = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = train(i, j) - mean;
      ss += d * d;
      constant = constant && train(i, j) == train(0, j);
    }
    params.means[j] = mean;
    // Exact equality; a rounding-level std from summation is not "constant".
    if (constant) {
      params.constant_mask[j] = true;
    } else {
      params.stds[j] = std::sqrt(ss / static_cast<double>(n));
    }
  }
  return params;
}

NormalizationParams FitNormalizer(const Dataset& train) {
  return FitNormalizer(train.features());
}

Matrix ApplyNormalizer(const NormalizationParams& params, const Matrix& data) {
  if (data.cols() != params.num_features()) {
    throw DataError("data has " + std::to_string(data.cols()) +
                    " columns, normalizer expects " +
                    std::to_string(params.num_features()));
  }
  Matrix out(data.rows(), data.cols());
  for (std::size_t r = 0; r < data.rows(); ++r) params.NormalizeRow(data.row(r), out.row(r));
  return out;
}

Dataset ApplyNormalizer(const NormalizationParams& params, const Dataset& data) {
  return Dataset(ApplyNormalizer(params, data.features()), data.labels(),
                 data.feature_names());
}

}  // namespace occer
