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

#ifndef OCCER_OCCER_H_
#define OCCER_OCCER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "occer/dataset.h"
#include "occer/execution.h"
#include "occer/regression.h"

namespace occer {

// One-class model built from m per-feature regressions. Regressor i predicts
// normalized feature i from the remaining m-1 normalized features; a point's
// outlier score is the mean absolute prediction error over the active
// regressors.
//
// Instances are immutable. Prune returns a new model sharing nothing with
// the original, and scoring is safe from concurrent callers.
class OccerModel {
 public:
  // Checks every structural invariant; throws DataError on violation.
  OccerModel(NormalizationParams normalizer, RegressorSpec spec,
             std::vector<FittedRegressor> regressors, std::vector<double> training_rmses,
             std::vector<std::size_t> active_indices);

  const NormalizationParams& normalizer() const { return normalizer_; }
  const RegressorSpec& spec() const { return spec_; }
  const std::vector<FittedRegressor>& regressors() const { return regressors_; }
  const std::vector<double>& training_rmses() const { return training_rmses_; }
  const std::vector<std::size_t>& active_indices() const { return active_indices_; }
  std::size_t num_features() const { return regressors_.size(); }

  // Keeps the max(1, floor(keep_fraction * m)) regressors with the smallest
  // training RMSE (ties to the lower index). Always selects from all m, so
  // Prune(1.0) undoes any earlier pruning. Throws ConfigError unless
  // 0 < keep_fraction <= 1.
  OccerModel Prune(double keep_fraction) const;

  // Score of one raw (unnormalized) point. Throws DataError on wrong
  // dimensionality or non-finite input.
  double ScorePoint(std::span<const double> point) const;

  // ScorePoint for every row; rows are scored in parallel unless `exec` is
  // kSerial. Results are identical either way.
  std::vector<double> ScoreDataset(const Dataset& data,
                                   Execution exec = Execution::kParallel) const;
  std::vector<double> ScoreMatrix(const Matrix& data,
                                  Execution exec = Execution::kParallel) const;

  bool operator==(const OccerModel&) const = default;

 private:
  // Score of an already-normalized point; `scratch` holds m-1 values.
  double ScoreNormalized(std::span<const double> normalized,
                         std::span<double> scratch) const;

  NormalizationParams normalizer_;
  RegressorSpec spec_;
  std::vector<FittedRegressor> regressors_;
  std::vector<double> training_rmses_;
  std::vector<std::size_t> active_indices_;
};

// Fits the normalizer on `train`, then one regressor per feature on the
// normalized data. Forest regressor i is seeded with spec.seed + i.
// Throws DataError if `train` has labeled outlier rows or fewer than 2 rows.
OccerModel FitOccer(const Dataset& train, const RegressorSpec& spec,
                    Execution exec = Execution::kParallel);

// Number of regressors kept by OccerModel::Prune.
std::size_t PrunedCount(std::size_t num_features, double keep_fraction);

}  // namespace occer

#endif  // OCCER_OCCER_H_
