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

#ifndef OCCER_METHODS_H_
#define OCCER_METHODS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "occer/cross_validation.h"
#include "occer/isolation_forest.h"
#include "occer/lof.h"
#include "occer/occer.h"
#include "occer/regression.h"

namespace occer {

// Method names accepted on the command line, in display order.
inline constexpr std::string_view kMethodNames[] = {
    "occer-ridge", "occer-lasso", "occer-elastic", "occer-rf", "lof", "iforest"};

bool IsOccerMethod(std::string_view method);

// Everything needed to fit one detector.
struct MethodConfig {
  std::string method = "occer-ridge";
  double keep_fraction = 1.0;
  // Base regressor hyperparameters; `kind` is overwritten from `method`.
  RegressorSpec spec;
  std::uint64_t seed = 0;
  std::size_t lof_k = LofModel::kDefaultNeighbors;
  std::size_t iforest_trees = 100;
  std::size_t iforest_subsample = 256;
  Execution exec = Execution::kParallel;

  // Throws ConfigError for an unknown method, keep_fraction outside (0, 1],
  // or an invalid regressor spec.
  void Validate() const;

  // The regressor spec actually used: kind from `method`, seed from `seed`.
  RegressorSpec EffectiveSpec() const;

  // Label used in reports: the method name, plus "@<keep_fraction>" for
  // pruned OCCER runs.
  std::string DisplayName() const;
};

nlohmann::json ConfigToJson(const MethodConfig& config);
MethodConfig ConfigFromJson(const nlohmann::json& json);

using AnyModel = std::variant<OccerModel, LofModel, IsolationForestModel>;

// Fits on `train`, which must contain target rows only. LOF uses
// k = min(lof_k, n - 1) so small training sets remain usable.
AnyModel FitModel(const MethodConfig& config, const Dataset& train);

std::vector<double> ScoreModel(const AnyModel& model, const Dataset& data,
                               Execution exec = Execution::kParallel);

// Adapter for RunCv.
Method MakeMethod(const MethodConfig& config);

}  // namespace occer

#endif  // OCCER_METHODS_H_
