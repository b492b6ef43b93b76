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

#include "occer/cross_validation.h"

#include <charconv>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>

#include "occer/auc.h"
#include "occer/error.h"
#include "occer/random.h"

namespace occer {
namespace {

std::string FormatDouble(double value) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

}  // namespace

FoldPlan MakeFoldPlan(const Dataset& data, std::uint64_t seed) {
  if (!data.has_labels()) throw DataError("cross-validation needs a labeled dataset");
  std::vector<std::size_t> targets;
  std::vector<std::size_t> outliers;
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    ((*data.labels())[r] == Label::kTarget ? targets : outliers).push_back(r);
  }
  if (targets.size() < 2 || outliers.size() < 2) {
    throw DataError("cross-validation needs at least 2 rows per class, got " +
                    std::to_string(targets.size()) + " target and " +
                    std::to_string(outliers.size()) + " outlier");
  }

  FoldPlan plan;
  plan.seed = seed;
  for (std::size_t rep = 0; rep < kRepetitions; ++rep) {
    Rng rng(seed, rep);
    std::array<std::vector<std::size_t>, kFoldsPerRepetition> halves;
    for (std::vector<std::size_t> rows : {targets, outliers}) {
      rng.Shuffle(std::span<std::size_t>(rows));
      const std::size_t first = (rows.size() + 1) / 2;
      halves[0].insert(halves[0].end(), rows.begin(), rows.begin() + first);
      halves[1].insert(halves[1].end(), rows.begin() + first, rows.end());
    }
    for (auto& half : halves) std::sort(half.begin(), half.end());
    for (std::size_t f = 0; f < kFoldsPerRepetition; ++f) {
      Fold& fold = plan.repetitions[rep][f];
      fold.test = halves[f];
      fold.train = halves[1 - f];
    }
  }
  return plan;
}

EvalReport RunCv(const Dataset& data, const std::string& dataset_name, const Method& method,
                 std::uint64_t seed, const CvOptions& options) {
  const FoldPlan plan = MakeFoldPlan(data, seed);
  const auto& labels = *data.labels();

  EvalReport report;
  report.dataset = dataset_name;
  report.method = method.name;
  report.fold_aucs.assign(kTotalFolds, 0.0);
  report.config = method.config;
  report.config["cv_seed"] = seed;

  std::vector<std::exception_ptr> errors(kTotalFolds);
  std::mutex observer_mutex;
  const auto folds = static_cast<std::int64_t>(kTotalFolds);
#pragma omp parallel for schedule(dynamic) if (IsParallel(options.exec))
  for (std::int64_t k = 0; k < folds; ++k) {
    const Fold& fold = plan.fold(k);
    const std::size_t rep = k / kFoldsPerRepetition;
    const std::size_t f = k % kFoldsPerRepetition;
    try {
      FoldTrace trace{rep, f, {}, fold.test, 0.0};
      for (std::size_t r : fold.train) {
        if (labels[r] == Label::kTarget) trace.fit_rows.push_back(r);
      }
      const Scorer scorer = method.fit(data.SelectRows(trace.fit_rows));
      const Dataset test = data.SelectRows(fold.test);
      const std::vector<double> scores = scorer(test);
      trace.auc = RocAuc(scores, *test.labels());
      report.fold_aucs[k] = trace.auc;
      if (options.observer) {
        std::lock_guard<std::mutex> lock(observer_mutex);
        options.observer(trace);
      }
    } catch (const ConfigError& e) {
      errors[k] = std::make_exception_ptr(ConfigError(
          "repetition " + std::to_string(rep) + " fold " + std::to_string(f) + ": " +
          e.what()));
    } catch (const std::exception& e) {
      errors[k] = std::make_exception_ptr(DataError(
          "repetition " + std::to_string(rep) + " fold " + std::to_string(f) + ": " +
          e.what()));
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  report.mean_auc = std::accumulate(report.fold_aucs.begin(), report.fold_aucs.end(), 0.0) /
                    static_cast<double>(kTotalFolds);
  return report;
}

nlohmann::json ReportToJson(const EvalReport& report) {
  return {{"dataset", report.dataset},     {"method", report.method},
          {"fold_aucs", report.fold_aucs}, {"mean_auc", report.mean_auc},
          {"config", report.config}};
}

std::string FoldsCsv(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  out << "dataset,method,fold,auc\n";
  for (const auto& report : reports) {
    for (std::size_t k = 0; k < report.fold_aucs.size(); ++k) {
      out << report.dataset << ',' << report.method << ',' << k << ','
          << FormatDouble(report.fold_aucs[k]) << '\n';
    }
  }
  return out.str();
}

}  // namespace occer
