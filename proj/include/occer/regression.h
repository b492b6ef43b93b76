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

#ifndef OCCER_REGRESSION_H_
#define OCCER_REGRESSION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "occer/dataset.h"
#include "occer/execution.h"
#include "occer/random.h"

namespace occer {

enum class RegressorKind { kRidge, kLasso, kElasticNet, kRandomForest };

std::string_view RegressorKindName(RegressorKind kind);
// Accepts "ridge", "lasso", "elastic_net", "random_forest". Throws ConfigError.
RegressorKind ParseRegressorKind(std::string_view name);

// Number of candidate features drawn at each forest split.
struct MaxFeatures {
  enum class Mode { kAll, kCount, kFraction };

  static MaxFeatures All() { return {}; }
  static MaxFeatures Count(std::size_t n) { return {Mode::kCount, static_cast<double>(n)}; }
  static MaxFeatures Fraction(double f) { return {Mode::kFraction, f}; }

  // Clamped to [1, num_inputs].
  std::size_t Resolve(std::size_t num_inputs) const;

  Mode mode = Mode::kAll;
  double value = 0.0;

  bool operator==(const MaxFeatures&) const = default;
};

// Hyperparameters for one base regressor. Fields that do not apply to `kind`
// are kept so the spec round-trips unchanged.
struct RegressorSpec {
  RegressorKind kind = RegressorKind::kRidge;
  double alpha = 1.0;
  double l1_ratio = 0.5;
  std::size_t n_trees = 100;
  MaxFeatures max_features;
  std::size_t min_samples_leaf = 1;
  std::optional<std::size_t> max_depth;
  double cd_tolerance = 1e-4;
  std::size_t cd_max_iter = 1000;
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void Validate() const;

  bool operator==(const RegressorSpec&) const = default;
};

// Intercept plus one coefficient per input.
struct LinearParams {
  std::vector<double> coefficients;
  double intercept = 0.0;

  double Predict(std::span<const double> x) const;

  bool operator==(const LinearParams&) const = default;
};

// CART regression tree stored as parallel node arrays. Node 0 is the root;
// feature < 0 marks a leaf whose prediction is `value`. Internal nodes send
// x[feature] <= threshold to `left`.
struct RegressionTree {
  std::vector<std::int32_t> feature;
  std::vector<double> threshold;
  std::vector<std::int32_t> left;
  std::vector<std::int32_t> right;
  std::vector<double> value;

  std::size_t num_nodes() const { return feature.size(); }
  bool is_leaf(std::size_t node) const { return feature[node] < 0; }
  double Predict(std::span<const double> x) const;
  std::size_t Depth() const;

  bool operator==(const RegressionTree&) const = default;
};

struct ForestParams {
  std::vector<RegressionTree> trees;

  double Predict(std::span<const double> x) const;

  bool operator==(const ForestParams&) const = default;
};

// A trained single-output regressor. Immutable; Predict is safe to call
// concurrently.
class FittedRegressor {
 public:
  using Params = std::variant<LinearParams, ForestParams>;

  FittedRegressor(RegressorSpec spec, std::size_t input_width, Params params);

  const RegressorSpec& spec() const { return spec_; }
  std::size_t input_width() const { return input_width_; }
  const Params& params() const { return params_; }
  const LinearParams* linear() const { return std::get_if<LinearParams>(&params_); }
  const ForestParams* forest() const { return std::get_if<ForestParams>(&params_); }

  // Single row; no width check.
  double PredictRow(std::span<const double> x) const;

  bool operator==(const FittedRegressor&) const = default;

 private:
  RegressorSpec spec_;
  std::size_t input_width_;
  Params params_;
};

// Trains `spec.kind` on (x, y). Throws DataError for fewer than 2 rows, zero
// columns, or non-finite values; ConfigError for an invalid spec.
FittedRegressor FitRegressor(const RegressorSpec& spec, const Matrix& x,
                             std::span<const double> y,
                             Execution exec = Execution::kParallel);

// Throws DataError on width mismatch.
std::vector<double> Predict(const FittedRegressor& model, const Matrix& x);

// sqrt(mean((Predict(x) - y)^2)). Throws DataError on empty or inconsistent
// input.
double TrainingRmse(const FittedRegressor& model, const Matrix& x,
                    std::span<const double> y);

// ---------------------------------------------------------------------------
// Individual solvers.

// Minimizes ||y - Xw - b||^2 + alpha ||w||^2 with b unpenalized.
LinearParams FitRidge(const Matrix& x, std::span<const double> y, double alpha);

struct CoordinateDescentOptions {
  double alpha = 1.0;
  double l1_ratio = 1.0;
  double tolerance = 1e-4;
  std::size_t max_iter = 1000;
};

struct CoordinateDescentResult {
  LinearParams params;
  std::size_t sweeps = 0;
  // Objective after each full sweep, starting with the value at w = 0.
  std::vector<double> objective_trace;
};

// Cyclic coordinate descent on
//   1/(2n) ||y - Xw - b||^2 + alpha (l1_ratio ||w||_1 + (1 - l1_ratio)/2 ||w||^2),
// stopping once the largest coefficient change in a sweep is below
// `tolerance` or after `max_iter` sweeps.
CoordinateDescentResult FitCoordinateDescent(const Matrix& x, std::span<const double> y,
                                             const CoordinateDescentOptions& options);

// The objective above evaluated at `params`.
double ElasticNetObjective(const Matrix& x, std::span<const double> y,
                           const LinearParams& params, double alpha, double l1_ratio);

// Grows one tree on the (possibly repeated) rows in `sample`.
RegressionTree FitRegressionTree(const Matrix& x, std::span<const double> y,
                                 std::span<const std::size_t> sample,
                                 const RegressorSpec& spec, Rng& rng);

// Bagged trees; tree t draws from Rng(spec.seed, t), so the result does not
// depend on `exec`.
ForestParams FitForest(const RegressorSpec& spec, const Matrix& x,
                       std::span<const double> y,
                       Execution exec = Execution::kParallel);

}  // namespace occer

#endif  // OCCER_REGRESSION_H_
