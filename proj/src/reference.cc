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

#include "occer/reference.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace occer::reference {
namespace {

double Distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(sum);
}

// (distance, index) of the k nearest rows of `train`, skipping `exclude`.
std::vector<std::pair<double, std::size_t>> Neighbors(const Matrix& train,
                                                      std::span<const double> q,
                                                      std::size_t k, std::size_t exclude) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < train.rows(); ++i) {
    if (i != exclude) all.emplace_back(Distance(train.row(i), q), i);
  }
  std::sort(all.begin(), all.end());
  all.resize(k);
  return all;
}

double KDistance(const Matrix& train, std::size_t k, std::size_t i) {
  return Neighbors(train, train.row(i), k, i).back().first;
}

double Lrd(const Matrix& train, std::size_t k,
           const std::vector<std::pair<double, std::size_t>>& neighbors) {
  double reach = 0.0;
  for (const auto& [d, o] : neighbors) reach += std::max(KDistance(train, k, o), d);
  return 1.0 / (reach / static_cast<double>(k) + 1e-10);
}

}  // namespace

std::vector<double> ScoreDataset(const OccerModel& model, const Dataset& data) {
  const std::size_t m = model.num_features();
  const NormalizationParams& norm = model.normalizer();
  std::vector<double> scores;
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    std::vector<double> d(m);
    for (std::size_t j = 0; j < m; ++j) {
      d[j] = norm.constant_mask[j] ? 0.0
                                   : (data.features()(r, j) - norm.means[j]) / norm.stds[j];
    }
    double total = 0.0;
    for (std::size_t i : model.active_indices()) {
      Matrix input(1, m - 1);
      for (std::size_t j = 0, c = 0; j < m; ++j) {
        if (j != i) input(0, c++) = d[j];
      }
      total += std::abs(Predict(model.regressors()[i], input)[0] - d[i]);
    }
    scores.push_back(total / static_cast<double>(model.active_indices().size()));
  }
  return scores;
}

std::vector<double> LofScores(const Matrix& train, std::size_t k, const Matrix& queries) {
  std::vector<double> scores;
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    const auto neighbors = Neighbors(train, queries.row(q), k, train.rows());
    double neighbor_lrd = 0.0;
    for (const auto& [d, o] : neighbors) {
      neighbor_lrd += Lrd(train, k, Neighbors(train, train.row(o), k, o));
    }
    scores.push_back(neighbor_lrd / static_cast<double>(k) / Lrd(train, k, neighbors));
  }
  return scores;
}

}  // namespace occer::reference
