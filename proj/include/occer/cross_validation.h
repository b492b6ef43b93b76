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

#ifndef OCCER_CROSS_VALIDATION_H_
#define OCCER_CROSS_VALIDATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "occer/dataset.h"
#include "occer/execution.h"

namespace occer {

inline constexpr std::size_t kRepetitions = 5;
inline constexpr std::size_t kFoldsPerRepetition = 2;
inline constexpr std::size_t kTotalFolds = kRepetitions * kFoldsPerRepetition;

struct Fold {
  std::vector<std::size_t> train;  // ascending row indices
  std::vector<std::size_t> test;   // ascending row indices
};

// Stratified 5x2 plan. Within a repetition the two test sets partition the
// rows and each holds half of every class (the odd row goes to fold 0).
struct FoldPlan {
  std::uint64_t seed = 0;
  std::array<std::array<Fold, kFoldsPerRepetition>, kRepetitions> repetitions;

  const Fold& fold(std::size_t flat_index) const {
    return repetitions[flat_index / kFoldsPerRepetition][flat_index % kFoldsPerRepetition];
  }
};

// Repetition r shuffles each class with Rng(seed, r). Throws DataError for
// unlabeled data or a class with fewer than 2 rows.
FoldPlan MakeFoldPlan(const Dataset& data, std::uint64_t seed);

// Fitted scorer: raw rows in, one outlier score per row out.
using Scorer = std::function<std::vector<double>(const Dataset&)>;

// A detection method as the CV driver sees it. `fit` receives target-class
// training rows only and must be safe to call from several threads.
struct Method {
  std::string name;
  nlohmann::json config;
  std::function<Scorer(const Dataset& train)> fit;
};

struct EvalReport {
  std::string dataset;
  std::string method;
  std::vector<double> fold_aucs;  // ordered by (repetition, fold)
  double mean_auc = 0.0;
  nlohmann::json config;
};

// What the driver did in one fold; reported to CvOptions::observer.
struct FoldTrace {
  std::size_t repetition = 0;
  std::size_t fold = 0;
  std::vector<std::size_t> fit_rows;  // target rows of the training half
  std::vector<std::size_t> test_rows;
  double auc = 0.0;
};

struct CvOptions {
  Execution exec = Execution::kParallel;
  // Called once per fold, serialized, in completion order.
  std::function<void(const FoldTrace&)> observer;
};

// For each of the 10 folds: fit on the target rows of the training half,
// score every test row, and take the ROC-AUC. Errors are rethrown with the
// fold attached.
EvalReport RunCv(const Dataset& data, const std::string& dataset_name, const Method& method,
                 std::uint64_t seed, const CvOptions& options = {});

nlohmann::json ReportToJson(const EvalReport& report);

// Long format: dataset,method,fold,auc with one line per fold.
std::string FoldsCsv(const std::vector<EvalReport>& reports);

}  // namespace occer

#endif  // OCCER_CROSS_VALIDATION_H_
