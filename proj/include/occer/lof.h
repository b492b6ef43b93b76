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

#ifndef OCCER_LOF_H_
#define OCCER_LOF_H_

#include <cstddef>
#include <span>
#include <vector>

#include "occer/dataset.h"
#include "occer/execution.h"

namespace occer {

// Local Outlier Factor over brute-force Euclidean k-nearest neighbours on
// z-normalized features. Neighbour sets have exactly k members (distance
// ties go to the lower training index). Local reachability density is
// 1 / (mean reachability distance + 1e-10), so exact duplicates score 1
// instead of dividing by zero.
class LofModel {
 public:
  static constexpr std::size_t kDefaultNeighbors = 20;

  // Normalizes `train` with its own statistics. Throws ConfigError unless
  // 1 <= k < train.num_rows().
  static LofModel Fit(const Dataset& train, std::size_t k = kDefaultNeighbors,
                      Execution exec = Execution::kParallel);

  // Rebuilds the neighbour tables from stored, already-normalized points.
  LofModel(NormalizationParams normalizer, Matrix normalized_points, std::size_t k,
           Execution exec = Execution::kParallel);

  const NormalizationParams& normalizer() const { return normalizer_; }
  const Matrix& points() const { return points_; }
  std::size_t k() const { return k_; }
  const std::vector<double>& k_distances() const { return k_distances_; }
  const std::vector<double>& local_reachability_density() const { return lrd_; }

  // Raw point in; higher is more anomalous. Throws DataError on dimension
  // mismatch.
  double Score(std::span<const double> point) const;
  std::vector<double> ScoreDataset(const Dataset& data,
                                   Execution exec = Execution::kParallel) const;

 private:
  double ScoreNormalized(std::span<const double> normalized,
                         std::vector<std::pair<double, std::size_t>>& scratch) const;

  NormalizationParams normalizer_;
  Matrix points_;
  std::size_t k_;
  std::vector<double> k_distances_;
  std::vector<double> lrd_;
};

// Indices of the k training rows nearest to `query`, nearest first, skipping
// row `exclude` (pass points.rows() to exclude nothing). `scratch` is
// reused storage. Returns (distance, index) pairs.
void NearestNeighbors(const Matrix& points, std::span<const double> query, std::size_t k,
                      std::size_t exclude,
                      std::vector<std::pair<double, std::size_t>>& scratch);

}  // namespace occer

#endif  // OCCER_LOF_H_
