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

#include "occer/occer.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

#include "occer/error.h"

namespace occer {

OccerModel::OccerModel(NormalizationParams normalizer, RegressorSpec spec,
                       std::vector<FittedRegressor> regressors,
                       std::vector<double> training_rmses,
                       std::vector<std::size_t> active_indices)
    : normalizer_(std::move(normalizer)),
      spec_(std::move(spec)),
      regressors_(std::move(regressors)),
      training_rmses_(std::move(training_rmses)),
      active_indices_(std::move(active_indices)) {
  const std::size_t m = regressors_.size();
  if (m < 2) throw DataError("OCCER model needs at least 2 regressors");
  if (training_rmses_.size() != m || normalizer_.num_features() != m ||
      normalizer_.stds.size() != m || normalizer_.constant_mask.size() != m) {
    throw DataError("OCCER model components disagree on the feature count");
  }
  for (const auto& regressor : regressors_) {
    if (regressor.input_width() != m - 1) {
      throw DataError("OCCER regressor input width must be m-1");
    }
  }
  if (active_indices_.empty()) throw DataError("OCCER model has no active regressors");
  for (std::size_t k = 0; k < active_indices_.size(); ++k) {
    if (active_indices_[k] >= m || (k > 0 && active_indices_[k] <= active_indices_[k - 1])) {
      throw DataError("OCCER active indices must be strictly increasing and < m");
    }
  }
}

std::size_t PrunedCount(std::size_t num_features, double keep_fraction) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
    throw ConfigError("keep_fraction must lie in (0, 1], got " + std::to_string(keep_fraction));
  }
  const auto k = static_cast<std::size_t>(
      std::floor(keep_fraction * static_cast<double>(num_features)));
  return std::max<std::size_t>(1, k);
}

OccerModel OccerModel::Prune(double keep_fraction) const {
  const std::size_t k = PrunedCount(num_features(), keep_fraction);
  std::vector<std::size_t> order(num_features());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return training_rmses_[a] < training_rmses_[b];
  });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return OccerModel(normalizer_, spec_, regressors_, training_rmses_, std::move(order));
}

double OccerModel::ScoreNormalized(std::span<const double> normalized,
                                   std::span<double> scratch) const {
  double sum = 0.0;
  for (std::size_t i : active_indices_) {
    std::copy(normalized.begin(), normalized.begin() + i, scratch.begin());
    std::copy(normalized.begin() + i + 1, normalized.end(), scratch.begin() + i);
    sum += std::abs(regressors_[i].PredictRow(scratch) - normalized[i]);
  }
  return sum / static_cast<double>(active_indices_.size());
}

double OccerModel::ScorePoint(std::span<const double> point) const {
  const std::size_t m = num_features();
  if (point.size() != m) {
    throw DataError("point has " + std::to_string(point.size()) +
                    " features, model expects " + std::to_string(m));
  }
  for (double v : point) {
    if (!std::isfinite(v)) throw DataError("point contains a non-finite value");
  }
  std::vector<double> normalized(m);
  std::vector<double> scratch(m - 1);
  normalizer_.NormalizeRow(point, normalized);
  return ScoreNormalized(normalized, scratch);
}

std::vector<double> OccerModel::ScoreMatrix(const Matrix& data, Execution exec) const {
  const std::size_t m = num_features();
  if (data.cols() != m) {
    throw DataError("data has " + std::to_string(data.cols()) +
                    " features, model expects " + std::to_string(m));
  }
  std::vector<double> scores(data.rows());
  const auto rows = static_cast<std::int64_t>(data.rows());
#pragma omp parallel if (IsParallel(exec) && rows > 1)
  {
    std::vector<double> normalized(m);
    std::vector<double> scratch(m - 1);
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
      normalizer_.NormalizeRow(data.row(r), normalized);
      scores[r] = ScoreNormalized(normalized, scratch);
    }
  }
  return scores;
}

std::vector<double> OccerModel::ScoreDataset(const Dataset& data, Execution exec) const {
  return ScoreMatrix(data.features(), exec);
}

OccerModel FitOccer(const Dataset& train, const RegressorSpec& spec, Execution exec) {
  spec.Validate();
  if (train.CountLabel(Label::kOutlier) > 0) {
    throw DataError("OCCER training data contains " +
                    std::to_string(train.CountLabel(Label::kOutlier)) +
                    " outlier rows; train on target rows only");
  }
  const std::size_t m = train.num_features();
  NormalizationParams normalizer = FitNormalizer(train);
  const Matrix normalized = ApplyNormalizer(normalizer, train.features());

  std::vector<std::optional<FittedRegressor>> fitted(m);
  std::vector<double> rmses(m, 0.0);
  std::vector<std::exception_ptr> errors(m);
  const auto features = static_cast<std::int64_t>(m);
  // Forests parallelize internally over trees; fit features concurrently
  // only for the linear kinds.
  const bool parallel_features =
      IsParallel(exec) && spec.kind != RegressorKind::kRandomForest;
#pragma omp parallel for schedule(dynamic) if (parallel_features)
  for (std::int64_t i = 0; i < features; ++i) {
    try {
      RegressorSpec feature_spec = spec;
      feature_spec.seed = spec.seed + static_cast<std::uint64_t>(i);
      const Matrix inputs = normalized.WithoutColumn(i);
      const std::vector<double> target = normalized.Column(i);
      fitted[i].emplace(FitRegressor(feature_spec, inputs, target, exec));
      rmses[i] = TrainingRmse(*fitted[i], inputs, target);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  std::vector<FittedRegressor> regressors;
  regressors.reserve(m);
  for (auto& f : fitted) regressors.push_back(std::move(*f));
  std::vector<std::size_t> active(m);
  std::iota(active.begin(), active.end(), 0);
  return OccerModel(std::move(normalizer), spec, std::move(regressors), std::move(rmses),
                    std::move(active));
}

}  // namespace occer
