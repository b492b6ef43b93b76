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

#ifndef OCCER_SERIALIZATION_H_
#define OCCER_SERIALIZATION_H_

// JSON persistence. Doubles are written with round-trip precision, so a
// loaded model scores bit-identically to the one that was saved.
//
// Model file envelope:
//   {
//     "format": "occer-model", "version": 1,
//     "kind": "occer" | "lof" | "iforest",
//     "feature_names": [...],
//     "config": {method, keep_fraction, spec, seed, lof_k, ...},
//     "model": {...kind-specific...},
//     "training_scores": [...]
//   }
//
// "occer" model: {normalizer, spec, regressors, training_rmses, active_indices}
// regressor:     {kind, input_width, spec, coefficients, intercept}    linear
//                {kind, input_width, spec, trees: [{feature, threshold,
//                 left, right, value}]}                                forest
// normalizer:    {means, stds, constant_mask}
// "lof" model:   {normalizer, k, points: [[...], ...]}
// "iforest":     {normalizer, subsample_size, seed, trees: [{feature,
//                 threshold, left, right, size}]}

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "occer/dataset.h"
#include "occer/isolation_forest.h"
#include "occer/lof.h"
#include "occer/methods.h"
#include "occer/occer.h"
#include "occer/regression.h"

namespace occer {

inline constexpr int kModelFormatVersion = 1;

void to_json(nlohmann::json& j, const MaxFeatures& value);
void from_json(const nlohmann::json& j, MaxFeatures& value);
void to_json(nlohmann::json& j, const RegressorSpec& value);
void from_json(const nlohmann::json& j, RegressorSpec& value);
void to_json(nlohmann::json& j, const NormalizationParams& value);
void from_json(const nlohmann::json& j, NormalizationParams& value);

nlohmann::json RegressorToJson(const FittedRegressor& model);
FittedRegressor RegressorFromJson(const nlohmann::json& j);

nlohmann::json OccerToJson(const OccerModel& model);
OccerModel OccerFromJson(const nlohmann::json& j);

nlohmann::json LofToJson(const LofModel& model);
LofModel LofFromJson(const nlohmann::json& j);

nlohmann::json IsolationForestToJson(const IsolationForestModel& model);
IsolationForestModel IsolationForestFromJson(const nlohmann::json& j);

struct ModelEnvelope {
  MethodConfig config;
  AnyModel model;
  std::vector<std::string> feature_names;
  std::vector<double> training_scores;
};

nlohmann::json EnvelopeToJson(const ModelEnvelope& envelope);
// Throws DataError on a malformed or incompatible document.
ModelEnvelope EnvelopeFromJson(const nlohmann::json& j);

void SaveModel(const std::filesystem::path& path, const ModelEnvelope& envelope);
ModelEnvelope LoadModel(const std::filesystem::path& path);

}  // namespace occer

#endif  // OCCER_SERIALIZATION_H_
