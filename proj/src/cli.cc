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

#include "occer/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "occer/cross_validation.h"
#include "occer/dataset.h"
#include "occer/error.h"
#include "occer/methods.h"
#include "occer/serialization.h"

namespace occer {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string FormatDouble(double value) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

// Flags shared by all subcommands; populated by flags, then the --config
// file, then these defaults.
struct RunConfig {
  std::vector<std::string> data;
  std::string label_col;
  std::string target_label;
  std::vector<std::string> methods{"occer-ridge"};
  std::vector<double> keep_fractions{1.0};
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string model;
  std::optional<double> threshold_quantile;

  // Regressor and baseline overrides.
  double alpha = 1.0;
  double l1_ratio = 0.5;
  std::size_t n_trees = 100;
  std::string max_features = "all";
  std::size_t min_samples_leaf = 1;
  std::size_t max_depth = 0;  // 0 = unlimited
  double cd_tol = 1e-4;
  std::size_t cd_max_iter = 1000;
  std::size_t lof_k = LofModel::kDefaultNeighbors;
  std::size_t iforest_trees = 100;
  std::size_t iforest_subsample = 256;
};

MaxFeatures ParseMaxFeatures(const std::string& text) {
  if (text == "all") return MaxFeatures::All();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("--max-features must be 'all', a count, or a fraction in (0,1)");
  }
  if (text.find('.') != std::string::npos) return MaxFeatures::Fraction(value);
  return MaxFeatures::Count(static_cast<std::size_t>(value));
}

MethodConfig ToMethodConfig(const RunConfig& run, const std::string& method,
                            double keep_fraction) {
  MethodConfig config;
  config.method = method;
  config.keep_fraction = keep_fraction;
  config.seed = run.seed;
  config.spec.alpha = run.alpha;
  config.spec.l1_ratio = run.l1_ratio;
  config.spec.n_trees = run.n_trees;
  config.spec.max_features = ParseMaxFeatures(run.max_features);
  config.spec.min_samples_leaf = run.min_samples_leaf;
  if (run.max_depth > 0) config.spec.max_depth = run.max_depth;
  config.spec.cd_tolerance = run.cd_tol;
  config.spec.cd_max_iter = run.cd_max_iter;
  config.lof_k = run.lof_k;
  config.iforest_trees = run.iforest_trees;
  config.iforest_subsample = run.iforest_subsample;
  config.Validate();
  return config;
}

CsvOptions ToCsvOptions(const RunConfig& run) {
  CsvOptions options;
  if (!run.label_col.empty() || !run.target_label.empty()) {
    if (run.label_col.empty() || run.target_label.empty()) {
      throw ConfigError("--label-col and --target-label must be given together");
    }
    options.label_column = run.label_col;
    options.target_label = run.target_label;
  }
  return options;
}

void RequireSingle(const std::vector<std::string>& values, const char* flag) {
  if (values.size() != 1) {
    throw ConfigError(std::string(flag) + " takes exactly one value for this command");
  }
}

std::ofstream OpenOutput(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

int CmdFit(const RunConfig& run, std::ostream& out) {
  RequireSingle(run.data, "--data");
  RequireSingle(run.methods, "--method");
  if (run.keep_fractions.size() != 1) {
    throw ConfigError("--keep-fraction takes exactly one value for fit");
  }
  if (run.out.empty()) throw ConfigError("fit needs --out");
  if (run.format != "json" && run.format != "csv") {
    throw ConfigError("--format must be json or csv");
  }
  const MethodConfig config = ToMethodConfig(run, run.methods[0], run.keep_fractions[0]);
  const CsvOptions csv = ToCsvOptions(run);

  const Dataset data = LoadCsv(run.data[0], csv);
  const Dataset train = data.TargetRows();
  if (train.num_rows() == 0) throw DataError("no target rows to train on");

  AnyModel model = FitModel(config, train);
  std::vector<double> training_scores = ScoreModel(model, train, config.exec);
  ModelEnvelope envelope{config, std::move(model), train.feature_names(),
                         std::move(training_scores)};
  SaveModel(run.out, envelope);

  out << "method " << config.DisplayName() << ", " << train.num_rows() << " training rows, "
      << train.num_features() << " features\n";
  if (const auto* occer = std::get_if<OccerModel>(&envelope.model)) {
    out << "regressors " << occer->num_features() << ", active";
    for (std::size_t i : occer->active_indices()) out << ' ' << train.feature_names()[i];
    out << "\nfeature,training_rmse\n";
    for (std::size_t i = 0; i < occer->num_features(); ++i) {
      out << train.feature_names()[i] << ',' << FormatDouble(occer->training_rmses()[i])
          << '\n';
    }
  }
  return kExitOk;
}

int CmdScore(const RunConfig& run) {
  RequireSingle(run.data, "--data");
  if (run.model.empty()) throw ConfigError("score needs --model");
  if (run.out.empty()) throw ConfigError("score needs --out");
  if (run.format != "json" && run.format != "csv") {
    throw ConfigError("--format must be json or csv");
  }
  if (run.threshold_quantile &&
      !(*run.threshold_quantile >= 0.0 && *run.threshold_quantile <= 1.0)) {
    throw ConfigError("--threshold-quantile must lie in [0, 1]");
  }
  const CsvOptions csv = ToCsvOptions(run);
  const ModelEnvelope envelope = LoadModel(run.model);

  std::vector<double> scores;
  if (!fs::exists(run.data[0])) throw DataError("cannot open '" + run.data[0] + "'");
  if (fs::file_size(run.data[0]) > 0) {
    const Dataset data = LoadCsv(run.data[0], csv);
    scores = ScoreModel(envelope.model, data);
  }

  std::optional<double> threshold;
  if (run.threshold_quantile) {
    if (envelope.training_scores.empty()) throw DataError("model has no stored training scores");
    threshold = Quantile(envelope.training_scores, *run.threshold_quantile);
  }

  json snapshot = ConfigToJson(envelope.config);
  snapshot["model_file"] = run.model;
  if (run.threshold_quantile) {
    snapshot["threshold_quantile"] = *run.threshold_quantile;
    snapshot["threshold"] = *threshold;
  }

  std::ofstream file = OpenOutput(run.out);
  if (run.format == "json") {
    json doc = {{"config", snapshot}, {"outlier_score", scores}};
    if (threshold) {
      std::vector<int> flags;
      for (double s : scores) flags.push_back(s > *threshold ? 1 : 0);
      doc["flag"] = flags;
    }
    file << doc.dump(1) << '\n';
  } else {
    file << "# config: " << snapshot.dump() << '\n';
    file << "outlier_score" << (threshold ? ",flag" : "") << '\n';
    for (double s : scores) {
      file << FormatDouble(s);
      if (threshold) file << ',' << (s > *threshold ? 1 : 0);
      file << '\n';
    }
  }
  if (!file) throw DataError("failed writing '" + run.out + "'");
  return kExitOk;
}

int CmdBench(const RunConfig& run, std::ostream& out, std::ostream& err) {
  if (run.data.empty()) throw ConfigError("bench needs at least one --data");
  if (run.out.empty()) throw ConfigError("bench needs --out (a directory)");
  if (run.format != "json" && run.format != "csv") {
    throw ConfigError("--format must be json or csv");
  }
  const CsvOptions csv = ToCsvOptions(run);
  if (!csv.label_column) throw ConfigError("bench needs --label-col and --target-label");

  // Columns: each method once per keep fraction (OCCER) or once (baselines).
  std::vector<MethodConfig> columns;
  std::vector<double> fractions = run.keep_fractions;
  std::sort(fractions.begin(), fractions.end());
  fractions.erase(std::unique(fractions.begin(), fractions.end()), fractions.end());
  for (const auto& method : run.methods) {
    if (IsOccerMethod(method)) {
      for (double f : fractions) columns.push_back(ToMethodConfig(run, method, f));
    } else {
      columns.push_back(ToMethodConfig(run, method, 1.0));
    }
  }

  json snapshot = {{"methods", run.methods},   {"keep_fractions", fractions},
                   {"seed", run.seed},         {"data", run.data},
                   {"label_col", run.label_col}, {"target_label", run.target_label}};
  if (!columns.empty()) snapshot["base_config"] = ConfigToJson(columns.front());

  std::vector<EvalReport> reports;
  json report_docs = json::array();
  std::vector<std::vector<std::string>> cells;
  for (const auto& path : run.data) {
    const std::string name = fs::path(path).stem().string();
    std::vector<std::string> row{name};
    std::optional<Dataset> data;
    std::string load_error;
    try {
      data.emplace(LoadCsv(path, csv));
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (const auto& column : columns) {
      if (!data) {
        err << "error: " << name << " / " << column.DisplayName() << ": " << load_error << '\n';
        row.push_back("error");
        report_docs.push_back(
            {{"dataset", name}, {"method", column.DisplayName()}, {"error", load_error}});
        continue;
      }
      try {
        EvalReport report = RunCv(*data, name, MakeMethod(column), run.seed);
        row.push_back(FormatDouble(report.mean_auc));
        report_docs.push_back(ReportToJson(report));
        out << name << ' ' << report.method << " mean_auc " << row.back() << '\n';
        reports.push_back(std::move(report));
      } catch (const std::exception& e) {
        err << "error: " << name << " / " << column.DisplayName() << ": " << e.what() << '\n';
        row.push_back("error");
        report_docs.push_back(
            {{"dataset", name}, {"method", column.DisplayName()}, {"error", e.what()}});
      }
    }
    cells.push_back(std::move(row));
  }

  const fs::path dir(run.out);
  fs::create_directories(dir);
  {
    std::ofstream table = OpenOutput(dir / "table.csv");
    table << "# config: " << snapshot.dump() << '\n' << "dataset";
    for (const auto& column : columns) table << ',' << column.DisplayName();
    table << '\n';
    for (const auto& row : cells) {
      for (std::size_t i = 0; i < row.size(); ++i) table << (i ? "," : "") << row[i];
      table << '\n';
    }
  }
  {
    std::ofstream folds = OpenOutput(dir / "folds.csv");
    folds << "# config: " << snapshot.dump() << '\n' << FoldsCsv(reports);
  }
  if (run.format == "json") {
    std::ofstream doc = OpenOutput(dir / "reports.json");
    doc << json{{"config", snapshot}, {"reports", report_docs}}.dump(1) << '\n';
  }
  return kExitOk;
}

}  // namespace

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DataError("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double position = q * static_cast<double>(values.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(position));
  const std::size_t upper = std::min(lower + 1, values.size() - 1);
  const double frac = position - static_cast<double>(lower);
  return values[lower] + frac * (values[upper] - values[lower]);
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("One-class classification by ensembles of per-feature regressions", "occer");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
  app.allow_config_extras(false);

  RunConfig run;
  std::optional<double> threshold;
  app.add_option("--data", run.data, "Input CSV (repeatable for bench)")->delimiter(',');
  app.add_option("--label-col", run.label_col, "Name of the label column");
  app.add_option("--target-label", run.target_label, "Label value of the target class");
  app.add_option("--method", run.methods,
                 "occer-ridge | occer-lasso | occer-elastic | occer-rf | lof | iforest")
      ->delimiter(',');
  app.add_option("--keep-fraction", run.keep_fractions,
                 "Fraction of lowest-RMSE regressors to keep, in (0,1]")
      ->delimiter(',');
  app.add_option("--seed", run.seed, "Seed for forests and fold shuffles");
  app.add_option("--out", run.out, "Output file (fit, score) or directory (bench)");
  app.add_option("--format", run.format, "Output format: csv | json");
  app.add_option("--model", run.model, "Model file written by fit");
  app.add_option("--threshold-quantile", threshold,
                 "Flag scores above this quantile of the training scores");
  app.add_option("--alpha", run.alpha, "Regularization strength (ridge/lasso/elastic)");
  app.add_option("--l1-ratio", run.l1_ratio, "Elastic net L1 mix");
  app.add_option("--n-trees", run.n_trees, "Trees per random forest regressor");
  app.add_option("--max-features", run.max_features, "'all', a count, or a fraction");
  app.add_option("--min-samples-leaf", run.min_samples_leaf, "Minimum rows per leaf");
  app.add_option("--max-depth", run.max_depth, "Maximum tree depth, 0 = unlimited");
  app.add_option("--cd-tol", run.cd_tol, "Coordinate descent tolerance");
  app.add_option("--cd-max-iter", run.cd_max_iter, "Coordinate descent sweep limit");
  app.add_option("--lof-k", run.lof_k, "LOF neighbour count");
  app.add_option("--iforest-trees", run.iforest_trees, "Isolation forest size");
  app.add_option("--iforest-subsample", run.iforest_subsample, "Isolation forest subsample");

  auto* fit = app.add_subcommand("fit", "Train a model on the target rows of --data");
  auto* score = app.add_subcommand("score", "Score every row of --data with --model");
  auto* bench = app.add_subcommand("bench", "Stratified 5x2 cross-validated AUC table");
  for (auto* sub : {fit, score, bench}) sub->fallthrough();

  std::vector<const char*> argv{"occer"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  run.threshold_quantile = threshold;

  try {
    if (fit->parsed()) return CmdFit(run, out);
    if (score->parsed()) return CmdScore(run);
    return CmdBench(run, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace occer
