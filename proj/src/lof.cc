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

#include "occer/lof.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "occer/error.h"

namespace occer {
namespace {

constexpr double kDensityEpsilon = 1e-10;

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    sum += d * d;
  }
  return sum;
}

}  // namespace

void NearestNeighbors(const Matrix& points, std::span<const double> query, std::size_t k,
                      std::size_t exclude,
                      std::vector<std::pair<double, std::size_t>>& scratch) {
  scratch.clear();
  for (std::size_t i = 0; i < points.rows(); ++i) {
    if (i == exclude) continue;
    scratch.emplace_back(SquaredDistance(points.row(i), query), i);
  }
  // Pairs compare by distance, then index.
  std::partial_sort(scratch.begin(), scratch.begin() + k, scratch.end());
  scratch.resize(k);
  for (auto& [distance, index] : scratch) distance = std::sqrt(distance);
}

LofModel LofModel::Fit(const Dataset& train, std::size_t k, Execution exec) {
  NormalizationParams normalizer = FitNormalizer(train);
  Matrix points = ApplyNormalizer(normalizer, train.features());
  return LofModel(std::move(normalizer), std::move(points), k, exec);
}

LofModel::LofModel(NormalizationParams normalizer, Matrix normalized_points, std::size_t k,
                   Execution exec)
    : normalizer_(std::move(normalizer)), points_(std::move(normalized_points)), k_(k) {
  const std::size_t n = points_.rows();
  if (k_ < 1 || k_ >= n) {
    throw ConfigError("LOF needs 1 <= k < n, got k=" + std::to_string(k_) +
                      " with n=" + std::to_string(n));
  }
  if (points_.cols() != normalizer_.num_features()) {
    throw DataError("LOF points and normalizer disagree on the feature count");
  }
  std::vector<std::size_t> neighbors(n * k_);
  std::vector<double> distances(n * k_);
  k_distances_.assign(n, 0.0);
  lrd_.assign(n, 0.0);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel if (IsParallel(exec))
  {
    std::vector<std::pair<double, std::size_t>> scratch;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
      NearestNeighbors(points_, points_.row(i), k_, i, scratch);
      for (std::size_t j = 0; j < k_; ++j) {
        distances[i * k_ + j] = scratch[j].first;
        neighbors[i * k_ + j] = scratch[j].second;
      }
      k_distances_[i] = scratch.back().first;
    }
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
      double reach = 0.0;
      for (std::size_t j = 0; j < k_; ++j) {
        reach += std::max(k_distances_[neighbors[i * k_ + j]], distances[i * k_ + j]);
      }
      lrd_[i] = 1.0 / (reach / static_cast<double>(k_) + kDensityEpsilon);
    }
  }
}

double LofModel::ScoreNormalized(std::span<const double> normalized,
                                 std::vector<std::pair<double, std::size_t>>& scratch) const {
  NearestNeighbors(points_, normalized, k_, points_.rows(), scratch);
  double reach = 0.0;
  double neighbor_lrd = 0.0;
  for (const auto& [distance, index] : scratch) {
    reach += std::max(k_distances_[index], distance);
    neighbor_lrd += lrd_[index];
  }
  const double kd = static_cast<double>(k_);
  const double own_lrd = 1.0 / (reach / kd + kDensityEpsilon);
  return (neighbor_lrd / kd) / own_lrd;
}

double LofModel::Score(std::span<const double> point) const {
  if (point.size() != points_.cols()) {
    throw DataError("point has " + std::to_string(point.size()) +
                    " features, LOF model expects " + std::to_string(points_.cols()));
  }
  std::vector<double> normalized(point.size());
  normalizer_.NormalizeRow(point, normalized);
  std::vector<std::pair<double, std::size_t>> scratch;
  return ScoreNormalized(normalized, scratch);
}

std::vector<double> LofModel::ScoreDataset(const Dataset& data, Execution exec) const {
  const std::size_t m = points_.cols();
  if (data.num_features() != m) {
    throw DataError("data has " + std::to_string(data.num_features()) +
                    " features, LOF model expects " + std::to_string(m));
  }
  std::vector<double> scores(data.num_rows());
  const auto rows = static_cast<std::int64_t>(data.num_rows());
#pragma omp parallel if (IsParallel(exec) && rows > 1)
  {
    std::vector<double> normalized(m);
    std::vector<std::pair<double, std::size_t>> scratch;
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
      normalizer_.NormalizeRow(data.features().row(r), normalized);
      scores[r] = ScoreNormalized(normalized, scratch);
    }
  }
  return scores;
}

}  // namespace occer
