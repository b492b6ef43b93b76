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

#include "occer/regression.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "occer/error.h"

namespace occer {
namespace {

void CheckFinite(const Matrix& x, std::span<const double> y) {
  for (double v : x.data()) {
    if (!std::isfinite(v)) throw DataError("regression inputs contain a non-finite value");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw DataError("regression targets contain a non-finite value");
  }
}

}  // namespace

std::string_view RegressorKindName(RegressorKind kind) {
  switch (kind) {
    case RegressorKind::kRidge:
      return "ridge";
    case RegressorKind::kLasso:
      return "lasso";
    case RegressorKind::kElasticNet:
      return "elastic_net";
    case RegressorKind::kRandomForest:
      return "random_forest";
  }
  return "unknown";
}

RegressorKind ParseRegressorKind(std::string_view name) {
  for (RegressorKind kind : {RegressorKind::kRidge, RegressorKind::kLasso,
                             RegressorKind::kElasticNet, RegressorKind::kRandomForest}) {
    if (RegressorKindName(kind) == name) return kind;
  }
  throw ConfigError("unknown regressor kind '" + std::string(name) + "'");
}

std::size_t MaxFeatures::Resolve(std::size_t num_inputs) const {
  double count = static_cast<double>(num_inputs);
  switch (mode) {
    case Mode::kAll:
      break;
    case Mode::kCount:
      count = value;
      break;
    case Mode::kFraction:
      count = std::floor(value * static_cast<double>(num_inputs));
      break;
  }
  return std::clamp<std::size_t>(static_cast<std::size_t>(count), 1, num_inputs);
}

void RegressorSpec::Validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be a finite value >= 0");
  }
  if (!(l1_ratio >= 0.0 && l1_ratio <= 1.0)) throw ConfigError("l1_ratio must lie in [0, 1]");
  if (n_trees < 1) throw ConfigError("n_trees must be >= 1");
  if (min_samples_leaf < 1) throw ConfigError("min_samples_leaf must be >= 1");
  if (max_depth && *max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (!(cd_tolerance > 0.0)) throw ConfigError("cd_tolerance must be > 0");
  if (cd_max_iter < 1) throw ConfigError("cd_max_iter must be >= 1");
  switch (max_features.mode) {
    case MaxFeatures::Mode::kAll:
      break;
    case MaxFeatures::Mode::kCount:
      if (max_features.value < 1.0) throw ConfigError("max_features count must be >= 1");
      break;
    case MaxFeatures::Mode::kFraction:
      if (!(max_features.value > 0.0 && max_features.value <= 1.0)) {
        throw ConfigError("max_features fraction must lie in (0, 1]");
      }
      break;
  }
}

FittedRegressor::FittedRegressor(RegressorSpec spec, std::size_t input_width, Params params)
    : spec_(std::move(spec)), input_width_(input_width), params_(std::move(params)) {
  if (const auto* lin = linear(); lin && lin->coefficients.size() != input_width_) {
    throw DataError("linear model has " + std::to_string(lin->coefficients.size()) +
                    " coefficients for " + std::to_string(input_width_) + " inputs");
  }
  if (const auto* f = forest()) {
    if (f->trees.empty()) throw DataError("forest has no trees");
    for (const auto& tree : f->trees) {
      const std::size_t nodes = tree.num_nodes();
      if (nodes == 0 || tree.threshold.size() != nodes || tree.left.size() != nodes ||
          tree.right.size() != nodes || tree.value.size() != nodes) {
        throw DataError("malformed regression tree arrays");
      }
      for (std::size_t i = 0; i < nodes; ++i) {
        if (tree.is_leaf(i)) continue;
        const auto in_range = [&](std::int32_t c) {
          return c > static_cast<std::int32_t>(i) && static_cast<std::size_t>(c) < nodes;
        };
        if (static_cast<std::size_t>(tree.feature[i]) >= input_width_ ||
            !in_range(tree.left[i]) || !in_range(tree.right[i])) {
          throw DataError("malformed regression tree node " + std::to_string(i));
        }
      }
    }
  }
}

double FittedRegressor::PredictRow(std::span<const double> x) const {
  if (const auto* lin = linear()) return lin->Predict(x);
  return forest()->Predict(x);
}

FittedRegressor FitRegressor(const RegressorSpec& spec, const Matrix& x,
                             std::span<const double> y, Execution exec) {
  spec.Validate();
  if (x.rows() < 2) {
    throw DataError("regression needs at least 2 rows, got " + std::to_string(x.rows()));
  }
  if (x.cols() < 1) throw DataError("regression needs at least 1 input column");
  if (y.size() != x.rows()) {
    throw DataError("regression has " + std::to_string(x.rows()) + " rows but " +
                    std::to_string(y.size()) + " targets");
  }
  CheckFinite(x, y);

  switch (spec.kind) {
    case RegressorKind::kRidge:
      return FittedRegressor(spec, x.cols(), FitRidge(x, y, spec.alpha));
    case RegressorKind::kLasso:
    case RegressorKind::kElasticNet: {
      CoordinateDescentOptions options;
      options.alpha = spec.alpha;
      options.l1_ratio = spec.kind == RegressorKind::kLasso ? 1.0 : spec.l1_ratio;
      options.tolerance = spec.cd_tolerance;
      options.max_iter = spec.cd_max_iter;
      return FittedRegressor(spec, x.cols(), FitCoordinateDescent(x, y, options).params);
    }
    case RegressorKind::kRandomForest:
      return FittedRegressor(spec, x.cols(), FitForest(spec, x, y, exec));
  }
  throw ConfigError("unhandled regressor kind");
}

std::vector<double> Predict(const FittedRegressor& model, const Matrix& x) {
  if (x.cols() != model.input_width()) {
    throw DataError("predict input has " + std::to_string(x.cols()) +
                    " columns, model expects " + std::to_string(model.input_width()));
  }
  std::vector<double> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) out[r] = model.PredictRow(x.row(r));
  return out;
}

double TrainingRmse(const FittedRegressor& model, const Matrix& x,
                    std::span<const double> y) {
  if (x.rows() == 0) throw DataError("RMSE of an empty input is undefined");
  if (y.size() != x.rows()) throw DataError("RMSE inputs have inconsistent lengths");
  const std::vector<double> pred = Predict(model, x);
  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = pred[i] - y[i];
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(y.size()));
}

}  // namespace occer
