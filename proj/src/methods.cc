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

#include "occer/methods.h"

#include <algorithm>
#include <charconv>
#include <memory>

#include "occer/error.h"
#include "occer/serialization.h"

namespace occer {

bool IsOccerMethod(std::string_view method) { return method.starts_with("occer-"); }

void MethodConfig::Validate() const {
  if (std::find(std::begin(kMethodNames), std::end(kMethodNames), method) ==
      std::end(kMethodNames)) {
    throw ConfigError("unknown method '" + method + "'");
  }
  PrunedCount(2, keep_fraction);
  EffectiveSpec().Validate();
  if (lof_k < 1) throw ConfigError("lof k must be >= 1");
  if (iforest_trees < 1) throw ConfigError("isolation forest needs at least 1 tree");
  if (iforest_subsample < 2) throw ConfigError("isolation forest subsample must be >= 2");
}

RegressorSpec MethodConfig::EffectiveSpec() const {
  RegressorSpec effective = spec;
  if (method == "occer-ridge") {
    effective.kind = RegressorKind::kRidge;
  } else if (method == "occer-lasso") {
    effective.kind = RegressorKind::kLasso;
  } else if (method == "occer-elastic") {
    effective.kind = RegressorKind::kElasticNet;
  } else if (method == "occer-rf") {
    effective.kind = RegressorKind::kRandomForest;
  }
  effective.seed = seed;
  return effective;
}

std::string MethodConfig::DisplayName() const {
  if (!IsOccerMethod(method) || keep_fraction == 1.0) return method;
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), keep_fraction);
  return method + "@" + std::string(buffer, end);
}

nlohmann::json ConfigToJson(const MethodConfig& config) {
  return {{"method", config.method},
          {"keep_fraction", config.keep_fraction},
          {"spec", config.EffectiveSpec()},
          {"seed", config.seed},
          {"lof_k", config.lof_k},
          {"iforest_trees", config.iforest_trees},
          {"iforest_subsample", config.iforest_subsample}};
}

MethodConfig ConfigFromJson(const nlohmann::json& json) {
  MethodConfig config;
  config.method = json.at("method").get<std::string>();
  config.keep_fraction = json.at("keep_fraction").get<double>();
  config.spec = json.at("spec").get<RegressorSpec>();
  config.seed = json.at("seed").get<std::uint64_t>();
  config.lof_k = json.at("lof_k").get<std::size_t>();
  config.iforest_trees = json.at("iforest_trees").get<std::size_t>();
  config.iforest_subsample = json.at("iforest_subsample").get<std::size_t>();
  return config;
}

AnyModel FitModel(const MethodConfig& config, const Dataset& train) {
  config.Validate();
  if (IsOccerMethod(config.method)) {
    OccerModel model = FitOccer(train, config.EffectiveSpec(), config.exec);
    if (config.keep_fraction == 1.0) return model;
    return model.Prune(config.keep_fraction);
  }
  if (train.CountLabel(Label::kOutlier) > 0) {
    throw DataError("training data contains outlier rows; train on target rows only");
  }
  if (config.method == "lof") {
    const std::size_t n = train.num_rows();
    const std::size_t k = std::min(config.lof_k, n > 0 ? n - 1 : 0);
    return LofModel::Fit(train, k, config.exec);
  }
  IsolationForestOptions options;
  options.n_trees = config.iforest_trees;
  options.subsample_size = config.iforest_subsample;
  options.seed = config.seed;
  return IsolationForestModel::Fit(train, options, config.exec);
}

std::vector<double> ScoreModel(const AnyModel& model, const Dataset& data, Execution exec) {
  return std::visit([&](const auto& m) { return m.ScoreDataset(data, exec); }, model);
}

Method MakeMethod(const MethodConfig& config) {
  config.Validate();
  Method method;
  method.name = config.DisplayName();
  method.config = ConfigToJson(config);
  method.fit = [config](const Dataset& train) -> Scorer {
    auto model = std::make_shared<const AnyModel>(FitModel(config, train));
    const Execution exec = config.exec;
    return [model, exec](const Dataset& data) { return ScoreModel(*model, data, exec); };
  };
  return method;
}

}  // namespace occer
