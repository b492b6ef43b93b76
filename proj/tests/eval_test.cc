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

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include <gtest/gtest.h>

#include "occer/auc.h"
#include "occer/cross_validation.h"
#include "occer/error.h"
#include "occer/methods.h"
#include "test_util.h"

namespace occer {
namespace {

constexpr Label T = Label::kTarget;
constexpr Label O = Label::kOutlier;

TEST(RocAuc, PerfectSeparation) {
  const std::vector<double> scores{0.1, 0.2, 0.8, 0.9};
  const std::vector<Label> labels{T, T, O, O};
  EXPECT_EQ(RocAuc(scores, labels), 1.0);
}

TEST(RocAuc, InvertedSeparationIsZero) {
  const std::vector<double> scores{0.9, 0.8, 0.1, 0.2};
  const std::vector<Label> labels{T, T, O, O};
  EXPECT_EQ(RocAuc(scores, labels), 0.0);
}

TEST(RocAuc, AllTiedIsHalf) {
  const std::vector<double> scores(6, 3.0);
  const std::vector<Label> labels{T, O, T, O, T, T};
  EXPECT_EQ(RocAuc(scores, labels), 0.5);
}

TEST(RocAuc, HandCountedWithTie) {
  // Pairs (o, t): (0.5 vs 0.2) win, (0.5 vs 0.5) tie, (0.9 vs both) win.
  // (2 * 3 + 1) / (2 * 4) = 0.875.
  const std::vector<double> scores{0.2, 0.5, 0.5, 0.9};
  const std::vector<Label> labels{T, T, O, O};
  EXPECT_EQ(RocAuc(scores, labels), 0.875);
  // One win out of two pairs with one tie: (2 * 1 + 1) / 4 = 0.75.
  EXPECT_EQ(RocAuc(std::vector<double>{1.0, 2.0, 1.0}, std::vector<Label>{T, O, O}), 0.75);
}

TEST(RocAuc, MatchesPairCountingOnRandomTiedInstances) {
  Rng rng(42);
  for (int instance = 0; instance < 300; ++instance) {
    const std::size_t n = 2 + rng.UniformIndex(199);
    const std::size_t levels = 1 + rng.UniformIndex(20);
    std::vector<double> scores(n);
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.UniformIndex(levels)) * 0.1;
      labels[i] = rng.UniformReal() < 0.3 ? O : T;
    }
    labels[0] = O;
    labels[1] = T;
    EXPECT_EQ(RocAuc(scores, labels), testing::PairCountAuc(scores, labels)) << instance;
  }
}

TEST(RocAuc, InvariantUnderIncreasingTransform) {
  Rng rng(7);
  std::vector<double> scores(150);
  std::vector<Label> labels(150, T);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = std::round(rng.Normal() * 4.0) / 4.0;
    if (i % 4 == 0) labels[i] = O;
  }
  std::vector<double> transformed(scores.size());
  std::transform(scores.begin(), scores.end(), transformed.begin(),
                 [](double s) { return std::exp(3.0 * s) + 10.0; });
  EXPECT_EQ(RocAuc(scores, labels), RocAuc(transformed, labels));
}

TEST(RocAuc, NegatedScoresComplement) {
  Rng rng(8);
  for (int instance = 0; instance < 50; ++instance) {
    std::vector<double> scores(60);
    std::vector<Label> labels(60, T);
    for (std::size_t i = 0; i < scores.size(); ++i) {
      scores[i] = static_cast<double>(rng.UniformIndex(7));
      if (i % 3 == 0) labels[i] = O;
    }
    std::vector<double> negated(scores.size());
    std::transform(scores.begin(), scores.end(), negated.begin(), [](double s) { return -s; });
    EXPECT_EQ(RocAuc(scores, labels) + RocAuc(negated, labels), 1.0);
  }
}

TEST(RocAuc, Errors) {
  EXPECT_THROW(RocAuc(std::vector<double>{1.0, 2.0}, std::vector<Label>{T}), DataError);
  EXPECT_THROW(RocAuc(std::vector<double>{1.0, 2.0}, std::vector<Label>{T, T}), DataError);
  EXPECT_THROW(RocAuc(std::vector<double>{1.0, 2.0}, std::vector<Label>{O, O}), DataError);
  EXPECT_THROW(RocAuc(std::vector<double>{1.0, NAN}, std::vector<Label>{T, O}), DataError);
}

Dataset Labeled(std::size_t targets, std::size_t outliers, std::uint64_t seed) {
  return testing::LinearManifold(targets, outliers, 4, 0.05, seed);
}

TEST(FoldPlan, StratifiedHalves) {
  const Dataset data = Labeled(101, 11, 1);
  const FoldPlan plan = MakeFoldPlan(data, 3);
  for (std::size_t rep = 0; rep < kRepetitions; ++rep) {
    std::set<std::size_t> seen;
    for (std::size_t f = 0; f < kFoldsPerRepetition; ++f) {
      const Fold& fold = plan.repetitions[rep][f];
      EXPECT_TRUE(std::is_sorted(fold.train.begin(), fold.train.end()));
      EXPECT_TRUE(std::is_sorted(fold.test.begin(), fold.test.end()));
      EXPECT_EQ(fold.train, plan.repetitions[rep][1 - f].test);
      std::size_t outliers = 0;
      for (std::size_t r : fold.test) {
        EXPECT_TRUE(seen.insert(r).second);
        outliers += (*data.labels())[r] == O;
      }
      // The odd row of each class goes to fold 0.
      EXPECT_EQ(fold.test.size() - outliers, f == 0 ? 51u : 50u);
      EXPECT_EQ(outliers, f == 0 ? 6u : 5u);
    }
    EXPECT_EQ(seen.size(), data.num_rows());
  }
  EXPECT_NE(plan.repetitions[0][0].test, plan.repetitions[1][0].test);
}

TEST(FoldPlan, DeterministicPerSeed) {
  const Dataset data = Labeled(40, 6, 2);
  const FoldPlan a = MakeFoldPlan(data, 9);
  const FoldPlan b = MakeFoldPlan(data, 9);
  const FoldPlan c = MakeFoldPlan(data, 10);
  bool any_difference = false;
  for (std::size_t k = 0; k < kTotalFolds; ++k) {
    EXPECT_EQ(a.fold(k).test, b.fold(k).test);
    any_difference |= a.fold(k).test != c.fold(k).test;
  }
  EXPECT_TRUE(any_difference);
}

TEST(FoldPlan, Errors) {
  EXPECT_THROW(MakeFoldPlan(Dataset(testing::RandomMatrix(10, 3, 1)), 0), DataError);
  EXPECT_THROW(MakeFoldPlan(Labeled(10, 1, 3), 0), DataError);
}

Method RandomScoreMethod() {
  Method method;
  method.name = "random";
  method.fit = [](const Dataset& train) -> Scorer {
    const std::uint64_t seed = static_cast<std::uint64_t>(train.num_rows());
    return [seed](const Dataset& test) {
      Rng rng(seed, test.num_rows());
      std::vector<double> scores(test.num_rows());
      for (double& s : scores) s = rng.UniformReal();
      return scores;
    };
  };
  return method;
}

TEST(RunCv, UninformativeScoresAverageNearHalf) {
  const EvalReport report = RunCv(Labeled(500, 50, 4), "noise", RandomScoreMethod(), 0);
  ASSERT_EQ(report.fold_aucs.size(), kTotalFolds);
  EXPECT_NEAR(report.mean_auc, 0.5, 0.1);
}

TEST(RunCv, OccerSeparatesManifold) {
  MethodConfig config;
  config.method = "occer-ridge";
  const EvalReport report =
      RunCv(testing::LinearManifold(400, 40, 8, 0.01, 5), "manifold", MakeMethod(config), 1);
  EXPECT_GT(report.mean_auc, 0.95);
  EXPECT_EQ(report.method, "occer-ridge");
  EXPECT_EQ(report.config["cv_seed"], 1);
  EXPECT_EQ(report.config["method"], "occer-ridge");
}

TEST(RunCv, ProtocolHygiene) {
  const Dataset data = Labeled(120, 14, 6);
  const FoldPlan plan = MakeFoldPlan(data, 2);
  std::mutex mutex;
  std::vector<Dataset> fit_sets;
  Method method = RandomScoreMethod();
  auto base_fit = method.fit;
  method.fit = [&](const Dataset& train) {
    {
      std::lock_guard<std::mutex> lock(mutex);
      fit_sets.push_back(train);
    }
    return base_fit(train);
  };
  std::vector<FoldTrace> traces;
  CvOptions options;
  options.observer = [&](const FoldTrace& trace) { traces.push_back(trace); };
  RunCv(data, "hygiene", method, 2, options);

  ASSERT_EQ(traces.size(), kTotalFolds);
  ASSERT_EQ(fit_sets.size(), kTotalFolds);
  std::set<std::pair<std::size_t, std::size_t>> folds_seen;
  for (const FoldTrace& trace : traces) {
    folds_seen.insert({trace.repetition, trace.fold});
    const Fold& fold = plan.repetitions[trace.repetition][trace.fold];
    EXPECT_EQ(trace.test_rows, fold.test);
    const std::set<std::size_t> test(trace.test_rows.begin(), trace.test_rows.end());
    std::vector<std::size_t> expected_fit;
    for (std::size_t r : fold.train) {
      if ((*data.labels())[r] == T) expected_fit.push_back(r);
    }
    EXPECT_EQ(trace.fit_rows, expected_fit);
    for (std::size_t r : trace.fit_rows) {
      EXPECT_EQ(test.count(r), 0u);
      EXPECT_EQ((*data.labels())[r], T);
    }
  }
  EXPECT_EQ(folds_seen.size(), kTotalFolds);
  // Every fitted model sees only target rows, and each fold's normalizer is
  // refit on its own training rows.
  std::set<std::vector<double>> means;
  for (const Dataset& train : fit_sets) {
    EXPECT_EQ(train.CountLabel(O), 0u);
    means.insert(FitNormalizer(train).means);
  }
  EXPECT_EQ(means.size(), kTotalFolds);
}

TEST(RunCv, RerunsAreBitIdentical) {
  const Dataset data = Labeled(150, 16, 7);
  MethodConfig config;
  config.method = "occer-rf";
  config.spec.n_trees = 10;
  const EvalReport a = RunCv(data, "d", MakeMethod(config), 3);
  const EvalReport b = RunCv(data, "d", MakeMethod(config), 3);
  EXPECT_EQ(a.fold_aucs, b.fold_aucs);
  EXPECT_EQ(a.mean_auc, b.mean_auc);
}

TEST(RunCv, ErrorsNameTheFold) {
  Method method;
  method.name = "broken";
  method.fit = [](const Dataset&) -> Scorer {
    return [](const Dataset& test) { return std::vector<double>(test.num_rows() + 1, 0.0); };
  };
  try {
    RunCv(Labeled(30, 4, 8), "d", method, 0);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("repetition 0 fold 0"), std::string::npos) << e.what();
  }
}

TEST(Reports, FoldsCsvAndJson) {
  EvalReport report;
  report.dataset = "d";
  report.method = "m";
  report.fold_aucs = {0.5, 0.25};
  report.mean_auc = 0.375;
  report.config = {{"seed", 1}};
  EXPECT_EQ(FoldsCsv({report}), "dataset,method,fold,auc\nd,m,0,0.5\nd,m,1,0.25\n");
  const auto json = ReportToJson(report);
  EXPECT_EQ(json["mean_auc"], 0.375);
  EXPECT_EQ(json["fold_aucs"].size(), 2u);
  EXPECT_EQ(json["config"]["seed"], 1);
}

}  // namespace
}  // namespace occer
