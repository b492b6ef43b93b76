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

#include <sstream>

#include <gtest/gtest.h>

#include "occer/cli.h"
#include "occer/dataset.h"
#include "occer/methods.h"
#include "occer/serialization.h"
#include "test_util.h"

namespace occer {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult RunTool(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

constexpr char kWorkedExampleCsv[] =
    "a,b,c,d\n"
    "0.85,0.34,0.87,0.45\n"
    "0.67,0.43,0.43,0.54\n"
    "0.79,0.89,0.63,0.71\n";

std::string LabeledCsv(std::size_t targets, std::size_t outliers, std::uint64_t seed) {
  const Dataset data = testing::LinearManifold(targets, outliers, 4, 0.05, seed);
  std::ostringstream csv;
  csv.precision(17);
  csv << "x1,x2,x3,x4,class\n";
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    for (std::size_t j = 0; j < 4; ++j) csv << data.features()(r, j) << ',';
    csv << ((*data.labels())[r] == Label::kTarget ? "n" : "o") << '\n';
  }
  return csv.str();
}

// Parses score CSV output: skips the config comment and header.
std::vector<std::vector<std::string>> ScoreRows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# config: ", 0), 0u);
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  std::string Path(const std::string& name) const { return (dir_.path() / name).string(); }
  testing::TempDir dir_;
};

TEST_F(CliTest, FitWritesOneRegressorPerFeature) {
  testing::WriteFile(Path("t.csv"), kWorkedExampleCsv);
  const auto result = RunTool({"fit", "--data", Path("t.csv"), "--out", Path("m.json")});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const ModelEnvelope envelope = LoadModel(Path("m.json"));
  const auto& model = std::get<OccerModel>(envelope.model);
  EXPECT_EQ(model.num_features(), 4u);
  EXPECT_EQ(model.active_indices().size(), 4u);
  EXPECT_EQ(envelope.feature_names, (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_NE(result.out.find("feature,training_rmse"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  testing::WriteFile(Path("t.csv"), kWorkedExampleCsv);
  EXPECT_EQ(RunTool({"fit", "--data", Path("missing.csv"), "--out", Path("m.json")}).code,
            kExitDataError);
  EXPECT_EQ(RunTool({"fit", "--data", Path("t.csv"), "--out", Path("m.json"), "--keep-fraction",
                 "0"})
                .code,
            kExitConfigError);
  EXPECT_EQ(RunTool({"fit", "--data", Path("t.csv"), "--out", Path("m.json"), "--method", "svm"})
                .code,
            kExitConfigError);
  EXPECT_EQ(RunTool({"fit", "--bogus"}).code, kExitConfigError);
  testing::WriteFile(Path("bad.csv"), "a,b\n1,x\n2,3\n");
  const auto bad = RunTool({"fit", "--data", Path("bad.csv"), "--out", Path("m.json")});
  EXPECT_EQ(bad.code, kExitDataError);
  EXPECT_NE(bad.err.find("row 1"), std::string::npos) << bad.err;
}

TEST_F(CliTest, ScoreReproducesLibraryAndStoredTrainingScores) {
  testing::WriteFile(Path("d.csv"), LabeledCsv(60, 6, 1));
  ASSERT_EQ(RunTool({"fit", "--data", Path("d.csv"), "--label-col", "class", "--target-label", "n",
                 "--method", "occer-rf", "--n-trees", "5", "--out", Path("m.json")})
                .code,
            kExitOk);
  // Training file without the outlier rows, scored through the CLI.
  const Dataset full = LoadCsv(Path("d.csv"), {"class", "n"});
  const Dataset train = full.TargetRows();
  std::ostringstream csv;
  csv.precision(17);
  csv << "x1,x2,x3,x4\n";
  for (std::size_t r = 0; r < train.num_rows(); ++r) {
    for (std::size_t j = 0; j < 4; ++j) csv << (j ? "," : "") << train.features()(r, j);
    csv << '\n';
  }
  testing::WriteFile(Path("train.csv"), csv.str());
  ASSERT_EQ(RunTool({"score", "--data", Path("train.csv"), "--model", Path("m.json"), "--out",
                 Path("s.csv")})
                .code,
            kExitOk);
  const ModelEnvelope envelope = LoadModel(Path("m.json"));
  const auto rows = ScoreRows(testing::ReadFile(Path("s.csv")));
  ASSERT_EQ(rows.size(), envelope.training_scores.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    EXPECT_EQ(std::stod(rows[r][0]), envelope.training_scores[r]) << r;
  }

  // Labeled file scored in full: every row, identical to the library.
  ASSERT_EQ(RunTool({"score", "--data", Path("d.csv"), "--label-col", "class", "--target-label", "n",
                 "--model", Path("m.json"), "--out", Path("all.csv")})
                .code,
            kExitOk);
  const auto all = ScoreRows(testing::ReadFile(Path("all.csv")));
  const auto expected = ScoreModel(envelope.model, full);
  ASSERT_EQ(all.size(), expected.size());
  for (std::size_t r = 0; r < all.size(); ++r) EXPECT_EQ(std::stod(all[r][0]), expected[r]);
}

TEST_F(CliTest, ScoreEdgeCases) {
  testing::WriteFile(Path("t.csv"), kWorkedExampleCsv);
  ASSERT_EQ(RunTool({"fit", "--data", Path("t.csv"), "--out", Path("m.json")}).code, kExitOk);

  testing::WriteFile(Path("empty.csv"), "");
  ASSERT_EQ(RunTool({"score", "--data", Path("empty.csv"), "--model", Path("m.json"), "--out",
                 Path("e.csv")})
                .code,
            kExitOk);
  EXPECT_TRUE(ScoreRows(testing::ReadFile(Path("e.csv"))).empty());

  testing::WriteFile(Path("narrow.csv"), "a,b,c\n1,2,3\n");
  EXPECT_EQ(RunTool({"score", "--data", Path("narrow.csv"), "--model", Path("m.json"), "--out",
                 Path("n.csv")})
                .code,
            kExitDataError);
  EXPECT_EQ(RunTool({"score", "--data", Path("t.csv"), "--model", Path("nope.json"), "--out",
                 Path("n.csv")})
                .code,
            kExitDataError);
}

TEST_F(CliTest, ThresholdFlagsAboveTrainingQuantile) {
  testing::WriteFile(Path("d.csv"), LabeledCsv(80, 8, 2));
  ASSERT_EQ(RunTool({"fit", "--data", Path("d.csv"), "--label-col", "class", "--target-label", "n",
                 "--out", Path("m.json")})
                .code,
            kExitOk);
  ASSERT_EQ(RunTool({"score", "--data", Path("d.csv"), "--label-col", "class", "--target-label", "n",
                 "--model", Path("m.json"), "--out", Path("s.csv"), "--threshold-quantile",
                 "0.9"})
                .code,
            kExitOk);
  const double threshold = Quantile(LoadModel(Path("m.json")).training_scores, 0.9);
  const auto rows = ScoreRows(testing::ReadFile(Path("s.csv")));
  ASSERT_EQ(rows.size(), 88u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 2u);
    EXPECT_EQ(row[1], std::stod(row[0]) > threshold ? "1" : "0");
  }
  EXPECT_EQ(RunTool({"score", "--data", Path("d.csv"), "--label-col", "class", "--target-label", "n",
                 "--model", Path("m.json"), "--out", Path("s.csv"), "--threshold-quantile",
                 "1.5"})
                .code,
            kExitConfigError);
}

TEST(Quantile, LinearInterpolation) {
  EXPECT_EQ(Quantile({3.0, 1.0, 2.0, 4.0}, 0.0), 1.0);
  EXPECT_EQ(Quantile({3.0, 1.0, 2.0, 4.0}, 1.0), 4.0);
  EXPECT_EQ(Quantile({3.0, 1.0, 2.0, 4.0}, 0.5), 2.5);
  EXPECT_THROW(Quantile({}, 0.5), std::exception);
}

TEST_F(CliTest, ConfigFilePrecedence) {
  testing::WriteFile(Path("t.csv"), kWorkedExampleCsv);
  testing::WriteFile(Path("run.ini"), "method=occer-lasso\nalpha=0.25\nseed=7\n");
  ASSERT_EQ(RunTool({"fit", "--config", Path("run.ini"), "--data", Path("t.csv"), "--out",
                 Path("m.json"), "--alpha", "0.5"})
                .code,
            kExitOk);
  const MethodConfig config = LoadModel(Path("m.json")).config;
  EXPECT_EQ(config.method, "occer-lasso");
  EXPECT_EQ(config.spec.alpha, 0.5);
  EXPECT_EQ(config.seed, 7u);
  EXPECT_EQ(config.spec.n_trees, 100u);

  testing::WriteFile(Path("typo.ini"), "alhpa=0.25\n");
  EXPECT_EQ(RunTool({"fit", "--config", Path("typo.ini"), "--data", Path("t.csv"), "--out",
                 Path("m.json")})
                .code,
            kExitConfigError);
}

std::vector<std::string> TableLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) lines.push_back(line);
  }
  return lines;
}

TEST_F(CliTest, BenchTableShapeAndReruns) {
  testing::WriteFile(Path("alpha.csv"), LabeledCsv(60, 8, 3));
  testing::WriteFile(Path("beta.csv"), LabeledCsv(50, 6, 4));
  const std::vector<std::string> base{"bench", "--data", Path("alpha.csv") + "," + Path("beta.csv"),
                                      "--label-col", "class", "--target-label", "n",
                                      "--method", "occer-ridge,lof"};
  auto args = base;
  args.insert(args.end(), {"--out", Path("b1")});
  ASSERT_EQ(RunTool(args).code, kExitOk);
  const auto lines = TableLines(testing::ReadFile(Path("b1/table.csv")));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "dataset,occer-ridge,lof");
  EXPECT_EQ(lines[1].rfind("alpha,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("beta,", 0), 0u);
  EXPECT_EQ(TableLines(testing::ReadFile(Path("b1/folds.csv"))).size(), 1u + 2 * 2 * 10);

  args = base;
  args.insert(args.end(), {"--out", Path("b2")});
  ASSERT_EQ(RunTool(args).code, kExitOk);
  EXPECT_EQ(testing::ReadFile(Path("b1/table.csv")), testing::ReadFile(Path("b2/table.csv")));
  EXPECT_EQ(testing::ReadFile(Path("b1/folds.csv")), testing::ReadFile(Path("b2/folds.csv")));
}

TEST_F(CliTest, BenchKeepFractionColumns) {
  testing::WriteFile(Path("alpha.csv"), LabeledCsv(60, 8, 5));
  ASSERT_EQ(RunTool({"bench", "--data", Path("alpha.csv"), "--label-col", "class", "--target-label",
                 "n", "--method", "occer-ridge", "--keep-fraction", "1.0,0.75,0.5,0.25",
                 "--out", Path("b"), "--format", "json"})
                .code,
            kExitOk);
  const auto lines = TableLines(testing::ReadFile(Path("b/table.csv")));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0],
            "dataset,occer-ridge@0.25,occer-ridge@0.5,occer-ridge@0.75,occer-ridge");
  EXPECT_TRUE(fs::exists(Path("b/reports.json")));
}

TEST_F(CliTest, BenchMarksUnreadableDatasetAsError) {
  testing::WriteFile(Path("alpha.csv"), LabeledCsv(40, 6, 6));
  const auto result = RunTool({"bench", "--data", Path("alpha.csv") + "," + Path("gone.csv"),
                           "--label-col", "class", "--target-label", "n", "--out", Path("b")});
  EXPECT_EQ(result.code, kExitOk);
  const auto lines = TableLines(testing::ReadFile(Path("b/table.csv")));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[2], "gone,error");
  EXPECT_NE(result.err.find("gone"), std::string::npos);
}

}  // namespace
}  // namespace occer
