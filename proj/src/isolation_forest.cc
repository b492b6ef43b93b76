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

#include "occer/isolation_forest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "occer/error.h"
#include "occer/random.h"

namespace occer {
namespace {

constexpr double kEulerGamma = 0.5772156649015329;

struct Pending {
  std::int32_t id;
  std::size_t begin;
  std::size_t end;
  std::size_t depth;
};

IsolationTree GrowIsolationTree(const Matrix& x, std::vector<std::size_t> rows,
                                std::size_t height_limit, Rng& rng) {
  IsolationTree tree;
  auto add_node = [&tree] {
    tree.feature.push_back(-1);
    tree.threshold.push_back(0.0);
    tree.left.push_back(-1);
    tree.right.push_back(-1);
    tree.size.push_back(0);
    return static_cast<std::int32_t>(tree.feature.size() - 1);
  };
  const std::size_t m = x.cols();
  std::vector<double> lo(m);
  std::vector<double> hi(m);
  std::vector<std::size_t> splittable;

  std::vector<Pending> stack{{add_node(), 0, rows.size(), 0}};
  while (!stack.empty()) {
    const Pending node = stack.back();
    stack.pop_back();
    tree.size[node.id] = node.end - node.begin;
    if (node.depth >= height_limit || node.end - node.begin <= 1) continue;

    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = hi[j] = x(rows[node.begin], j);
    }
    for (std::size_t i = node.begin + 1; i < node.end; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        lo[j] = std::min(lo[j], x(rows[i], j));
        hi[j] = std::max(hi[j], x(rows[i], j));
      }
    }
    splittable.clear();
    for (std::size_t j = 0; j < m; ++j) {
      if (lo[j] < hi[j]) splittable.push_back(j);
    }
    if (splittable.empty()) continue;

    const std::size_t f = splittable[rng.UniformIndex(splittable.size())];
    double threshold = rng.Uniform(lo[f], hi[f]);
    while (!(threshold > lo[f])) threshold = rng.Uniform(lo[f], hi[f]);

    const auto mid = std::stable_partition(
        rows.begin() + node.begin, rows.begin() + node.end,
        [&](std::size_t r) { return x(r, f) < threshold; });
    const auto boundary = static_cast<std::size_t>(mid - rows.begin());
    const std::int32_t left = add_node();
    const std::int32_t right = add_node();
    tree.feature[node.id] = static_cast<std::int32_t>(f);
    tree.threshold[node.id] = threshold;
    tree.left[node.id] = left;
    tree.right[node.id] = right;
    stack.push_back({right, boundary, node.end, node.depth + 1});
    stack.push_back({left, node.begin, boundary, node.depth + 1});
  }
  return tree;
}

}  // namespace

double AveragePathLength(std::size_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  const double nd = static_cast<double>(n);
  return 2.0 * (std::log(nd - 1.0) + kEulerGamma) - 2.0 * (nd - 1.0) / nd;
}

double IsolationTree::PathLength(std::span<const double> x) const {
  std::size_t node = 0;
  double depth = 0.0;
  while (feature[node] >= 0) {
    node = x[feature[node]] < threshold[node] ? left[node] : right[node];
    depth += 1.0;
  }
  return depth + AveragePathLength(size[node]);
}

std::size_t IsolationTree::Depth() const {
  std::vector<std::size_t> depth(num_nodes(), 0);
  std::size_t deepest = 0;
  for (std::size_t node = 0; node < num_nodes(); ++node) {
    deepest = std::max(deepest, depth[node]);
    if (feature[node] >= 0) {
      depth[left[node]] = depth[node] + 1;
      depth[right[node]] = depth[node] + 1;
    }
  }
  return deepest;
}

IsolationForestModel IsolationForestModel::Fit(const Dataset& train,
                                               const IsolationForestOptions& options,
                                               Execution exec) {
  if (options.n_trees < 1) throw ConfigError("isolation forest needs at least 1 tree");
  const std::size_t n = train.num_rows();
  const std::size_t psi = std::min(options.subsample_size, n);
  if (psi < 2) {
    throw ConfigError("isolation forest subsample must be >= 2, got " + std::to_string(psi));
  }
  NormalizationParams normalizer = FitNormalizer(train);
  const Matrix x = ApplyNormalizer(normalizer, train.features());
  const auto height_limit =
      static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(psi))));

  std::vector<IsolationTree> trees(options.n_trees);
  const auto n_trees = static_cast<std::int64_t>(options.n_trees);
#pragma omp parallel for schedule(dynamic) if (IsParallel(exec))
  for (std::int64_t t = 0; t < n_trees; ++t) {
    Rng rng(options.seed, static_cast<std::uint64_t>(t));
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t i = 0; i < psi; ++i) {
      std::swap(all[i], all[i + rng.UniformIndex(n - i)]);
    }
    all.resize(psi);
    trees[t] = GrowIsolationTree(x, std::move(all), height_limit, rng);
  }
  return IsolationForestModel(std::move(normalizer), std::move(trees), psi, options.seed);
}

IsolationForestModel::IsolationForestModel(NormalizationParams normalizer,
                                           std::vector<IsolationTree> trees,
                                           std::size_t subsample_size, std::uint64_t seed)
    : normalizer_(std::move(normalizer)),
      trees_(std::move(trees)),
      subsample_size_(subsample_size),
      seed_(seed) {
  if (trees_.empty()) throw DataError("isolation forest has no trees");
  if (subsample_size_ < 2) throw DataError("isolation forest subsample must be >= 2");
  const std::size_t m = normalizer_.num_features();
  for (const auto& tree : trees_) {
    const std::size_t nodes = tree.num_nodes();
    if (nodes == 0 || tree.threshold.size() != nodes || tree.left.size() != nodes ||
        tree.right.size() != nodes || tree.size.size() != nodes) {
      throw DataError("malformed isolation tree arrays");
    }
    for (std::size_t i = 0; i < nodes; ++i) {
      if (tree.feature[i] < 0) continue;
      const auto child_ok = [&](std::int32_t c) {
        return c > static_cast<std::int32_t>(i) && static_cast<std::size_t>(c) < nodes;
      };
      if (static_cast<std::size_t>(tree.feature[i]) >= m || !child_ok(tree.left[i]) ||
          !child_ok(tree.right[i])) {
        throw DataError("malformed isolation tree node " + std::to_string(i));
      }
    }
  }
}

double IsolationForestModel::ScoreNormalized(std::span<const double> normalized) const {
  double total = 0.0;
  for (const auto& tree : trees_) total += tree.PathLength(normalized);
  const double mean = total / static_cast<double>(trees_.size());
  return std::exp2(-mean / AveragePathLength(subsample_size_));
}

double IsolationForestModel::Score(std::span<const double> point) const {
  if (point.size() != normalizer_.num_features()) {
    throw DataError("point has " + std::to_string(point.size()) +
                    " features, isolation forest expects " +
                    std::to_string(normalizer_.num_features()));
  }
  std::vector<double> normalized(point.size());
  normalizer_.NormalizeRow(point, normalized);
  return ScoreNormalized(normalized);
}

std::vector<double> IsolationForestModel::ScoreDataset(const Dataset& data,
                                                       Execution exec) const {
  const std::size_t m = normalizer_.num_features();
  if (data.num_features() != m) {
    throw DataError("data has " + std::to_string(data.num_features()) +
                    " features, isolation forest expects " + std::to_string(m));
  }
  std::vector<double> scores(data.num_rows());
  const auto rows = static_cast<std::int64_t>(data.num_rows());
#pragma omp parallel if (IsParallel(exec) && rows > 1)
  {
    std::vector<double> normalized(m);
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
      normalizer_.NormalizeRow(data.features().row(r), normalized);
      scores[r] = ScoreNormalized(normalized);
    }
  }
  return scores;
}

}  // namespace occer
