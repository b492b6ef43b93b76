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

#ifndef OCCER_DATASET_H_
#define OCCER_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace occer {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::vector<double> Column(std::size_t c) const;

  // Copy of the matrix without column `c`.
  Matrix WithoutColumn(std::size_t c) const;

  Matrix SelectRows(std::span<const std::size_t> rows) const;

  std::span<const double> data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Label : std::uint8_t { kTarget, kOutlier };

// A feature matrix with optional target/outlier labels and column names.
// Every cell is finite, there are at least two features, and when labels are
// present there is one per row. Immutable once built.
class Dataset {
 public:
  // Throws DataError when an invariant is violated. Empty `feature_names`
  // are replaced by x1..xm.
  explicit Dataset(Matrix features,
                   std::optional<std::vector<Label>> labels = std::nullopt,
                   std::vector<std::string> feature_names = {});

  const Matrix& features() const { return features_; }
  const std::optional<std::vector<Label>>& labels() const { return labels_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  std::size_t num_rows() const { return features_.rows(); }
  std::size_t num_features() const { return features_.cols(); }
  bool has_labels() const { return labels_.has_value(); }

  std::size_t CountLabel(Label label) const;

  // Rows with the given indices, in the given order.
  Dataset SelectRows(std::span<const std::size_t> rows) const;

  // Rows tagged kTarget. Unlabeled datasets are returned unchanged.
  Dataset TargetRows() const;

 private:
  Matrix features_;
  std::optional<std::vector<Label>> labels_;
  std::vector<std::string> feature_names_;
};

struct CsvOptions {
  // Name of the label column. When set, `target_label` must also be set.
  std::optional<std::string> label_column;
  std::optional<std::string> target_label;
};

// Comma-delimited, first line is the header, `.` decimal point. Rows whose
// label equals `target_label` are kTarget; all others kOutlier. A header-only
// input yields a zero-row Dataset; a completely empty input is an error.
Dataset LoadCsv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset ParseCsv(std::istream& in, const CsvOptions& options = {});

// Per-feature z-score parameters learned from training data.
struct NormalizationParams {
  std::vector<double> means;
  // Population standard deviations; 1 for constant features.
  std::vector<double> stds;
  std::vector<bool> constant_mask;

  std::size_t num_features() const { return means.size(); }

  // Writes (x - mean) / std into `out`, 0 for constant features.
  void NormalizeRow(std::span<const double> in, std::span<double> out) const;

  bool operator==(const NormalizationParams&) const = default;
};

NormalizationParams FitNormalizer(const Matrix& train);
NormalizationParams FitNormalizer(const Dataset& train);

Matrix ApplyNormalizer(const NormalizationParams& params, const Matrix& data);
Dataset ApplyNormalizer(const NormalizationParams& params, const Dataset& data);

}  // namespace occer

#endif  // OCCER_DATASET_H_
