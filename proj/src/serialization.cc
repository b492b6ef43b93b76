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

#include "occer/serialization.h"

#include <fstream>

#include "occer/error.h"

namespace occer {

using nlohmann::json;

void to_json(json& j, const MaxFeatures& value) {
  switch (value.mode) {
    case MaxFeatures::Mode::kAll:
      j = "all";
      return;
    case MaxFeatures::Mode::kCount:
      j = {{"count", static_cast<std::size_t>(value.value)}};
      return;
    case MaxFeatures::Mode::kFraction:
      j = {{"fraction", value.value}};
      return;
  }
}

void from_json(const json& j, MaxFeatures& value) {
  if (j.is_string() && j.get<std::string>() == "all") {
    value = MaxFeatures::All();
  } else if (j.is_object() && j.contains("count")) {
    value = MaxFeatures::Count(j.at("count").get<std::size_t>());
  } else if (j.is_object() && j.contains("fraction")) {
    value = MaxFeatures::Fraction(j.at("fraction").get<double>());
  } else {
    throw DataError("malformed max_features: " + j.dump());
  }
}

void to_json(json& j, const RegressorSpec& value) {
  j = {{"kind", RegressorKindName(value.kind)},
       {"alpha", value.alpha},
       {"l1_ratio", value.l1_ratio},
       {"n_trees", value.n_trees},
       {"max_features", value.max_features},
       {"min_samples_leaf", value.min_samples_leaf},
       {"max_depth", nullptr},
       {"cd_tolerance", value.cd_tolerance},
       {"cd_max_iter", value.cd_max_iter},
       {"seed", value.seed}};
  if (value.max_depth) j["max_depth"] = *value.max_depth;
}

void from_json(const json& j, RegressorSpec& value) {
  value.kind = ParseRegressorKind(j.at("kind").get<std::string>());
  value.alpha = j.at("alpha").get<double>();
  value.l1_ratio = j.at("l1_ratio").get<double>();
  value.n_trees = j.at("n_trees").get<std::size_t>();
  value.max_features = j.at("max_features").get<MaxFeatures>();
  value.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
  const json& depth = j.at("max_depth");
  value.max_depth =
      depth.is_null() ? std::nullopt : std::optional<std::size_t>(depth.get<std::size_t>());
  value.cd_tolerance = j.at("cd_tolerance").get<double>();
  value.cd_max_iter = j.at("cd_max_iter").get<std::size_t>();
  value.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(json& j, const NormalizationParams& value) {
  j = {{"means", value.means},
       {"stds", value.stds},
       {"constant_mask", value.constant_mask}};
}

void from_json(const json& j, NormalizationParams& value) {
  value.means = j.at("means").get<std::vector<double>>();
  value.stds = j.at("stds").get<std::vector<double>>();
  value.constant_mask = j.at("constant_mask").get<std::vector<bool>>();
  const std::size_t m = value.means.size();
  if (value.stds.size() != m || value.constant_mask.size() != m) {
    throw DataError("normalizer arrays have different lengths");
  }
}

json RegressorToJson(const FittedRegressor& model) {
  json j = {{"kind", RegressorKindName(model.spec().kind)},
            {"input_width", model.input_width()},
            {"spec", model.spec()}};
  if (const auto* lin = model.linear()) {
    j["coefficients"] = lin->coefficients;
    j["intercept"] = lin->intercept;
  } else {
    json trees = json::array();
    for (const auto& tree : model.forest()->trees) {
      trees.push_back({{"feature", tree.feature},
                       {"threshold", tree.threshold},
                       {"left", tree.left},
                       {"right", tree.right},
                       {"value", tree.value}});
    }
    j["trees"] = std::move(trees);
  }
  return j;
}

FittedRegressor RegressorFromJson(const json& j) {
  const RegressorSpec spec = j.at("spec").get<RegressorSpec>();
  const auto width = j.at("input_width").get<std::size_t>();
  if (j.contains("trees")) {
    ForestParams forest;
    for (const json& t : j.at("trees")) {
      RegressionTree tree;
      tree.feature = t.at("feature").get<std::vector<std::int32_t>>();
      tree.threshold = t.at("threshold").get<std::vector<double>>();
      tree.left = t.at("left").get<std::vector<std::int32_t>>();
      tree.right = t.at("right").get<std::vector<std::int32_t>>();
      tree.value = t.at("value").get<std::vector<double>>();
      forest.trees.push_back(std::move(tree));
    }
    return FittedRegressor(spec, width, std::move(forest));
  }
  LinearParams linear;
  linear.coefficients = j.at("coefficients").get<std::vector<double>>();
  linear.intercept = j.at("intercept").get<double>();
  return FittedRegressor(spec, width, std::move(linear));
}

json OccerToJson(const OccerModel& model) {
  json regressors = json::array();
  for (const auto& r : model.regressors()) regressors.push_back(RegressorToJson(r));
  return {{"normalizer", model.normalizer()},
          {"spec", model.spec()},
          {"regressors", std::move(regressors)},
          {"training_rmses", model.training_rmses()},
          {"active_indices", model.active_indices()}};
}

OccerModel OccerFromJson(const json& j) {
  std::vector<FittedRegressor> regressors;
  for (const json& r : j.at("regressors")) regressors.push_back(RegressorFromJson(r));
  return OccerModel(j.at("normalizer").get<NormalizationParams>(),
                    j.at("spec").get<RegressorSpec>(), std::move(regressors),
                    j.at("training_rmses").get<std::vector<double>>(),
                    j.at("active_indices").get<std::vector<std::size_t>>());
}

json LofToJson(const LofModel& model) {
  json points = json::array();
  for (std::size_t r = 0; r < model.points().rows(); ++r) {
    const auto row = model.points().row(r);
    points.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"normalizer", model.normalizer()}, {"k", model.k()}, {"points", std::move(points)}};
}

LofModel LofFromJson(const json& j) {
  const auto normalizer = j.at("normalizer").get<NormalizationParams>();
  const auto rows = j.at("points").get<std::vector<std::vector<double>>>();
  const std::size_t m = normalizer.num_features();
  std::vector<double> flat;
  flat.reserve(rows.size() * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw DataError("LOF point has the wrong dimensionality");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return LofModel(normalizer, Matrix(rows.size(), m, std::move(flat)),
                  j.at("k").get<std::size_t>());
}

json IsolationForestToJson(const IsolationForestModel& model) {
  json trees = json::array();
  for (const auto& tree : model.trees()) {
    trees.push_back({{"feature", tree.feature},
                     {"threshold", tree.threshold},
                     {"left", tree.left},
                     {"right", tree.right},
                     {"size", tree.size}});
  }
  return {{"normalizer", model.normalizer()},
          {"subsample_size", model.subsample_size()},
          {"seed", model.seed()},
          {"trees", std::move(trees)}};
}

IsolationForestModel IsolationForestFromJson(const json& j) {
  std::vector<IsolationTree> trees;
  for (const json& t : j.at("trees")) {
    IsolationTree tree;
    tree.feature = t.at("feature").get<std::vector<std::int32_t>>();
    tree.threshold = t.at("threshold").get<std::vector<double>>();
    tree.left = t.at("left").get<std::vector<std::int32_t>>();
    tree.right = t.at("right").get<std::vector<std::int32_t>>();
    tree.size = t.at("size").get<std::vector<std::size_t>>();
    trees.push_back(std::move(tree));
  }
  return IsolationForestModel(j.at("normalizer").get<NormalizationParams>(), std::move(trees),
                              j.at("subsample_size").get<std::size_t>(),
                              j.at("seed").get<std::uint64_t>());
}

json EnvelopeToJson(const ModelEnvelope& envelope) {
  json j = {{"format", "occer-model"},
            {"version", kModelFormatVersion},
            {"feature_names", envelope.feature_names},
            {"config", ConfigToJson(envelope.config)},
            {"training_scores", envelope.training_scores}};
  std::visit(
      [&j](const auto& model) {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, OccerModel>) {
          j["kind"] = "occer";
          j["model"] = OccerToJson(model);
        } else if constexpr (std::is_same_v<T, LofModel>) {
          j["kind"] = "lof";
          j["model"] = LofToJson(model);
        } else {
          j["kind"] = "iforest";
          j["model"] = IsolationForestToJson(model);
        }
      },
      envelope.model);
  return j;
}

ModelEnvelope EnvelopeFromJson(const json& j) {
  try {
    if (j.at("format").get<std::string>() != "occer-model") {
      throw DataError("not an occer model file");
    }
    const int version = j.at("version").get<int>();
    if (version > kModelFormatVersion) {
      throw DataError("model format version " + std::to_string(version) +
                      " is newer than supported version " +
                      std::to_string(kModelFormatVersion));
    }
    const std::string kind = j.at("kind").get<std::string>();
    const json& body = j.at("model");
    auto model = [&]() -> AnyModel {
      if (kind == "occer") return OccerFromJson(body);
      if (kind == "lof") return LofFromJson(body);
      if (kind == "iforest") return IsolationForestFromJson(body);
      throw DataError("unknown model kind '" + kind + "'");
    }();
    return ModelEnvelope{ConfigFromJson(j.at("config")), std::move(model),
                         j.at("feature_names").get<std::vector<std::string>>(),
                         j.at("training_scores").get<std::vector<double>>()};
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

void SaveModel(const std::filesystem::path& path, const ModelEnvelope& envelope) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << EnvelopeToJson(envelope).dump(1) << '\n';
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

ModelEnvelope LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("cannot parse model '" + path.string() + "': " + e.what());
  }
  return EnvelopeFromJson(j);
}

}  // namespace occer
