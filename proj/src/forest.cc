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
#include <numeric>
#include <utility>
#include <vector>

#include "occer/regression.h"

namespace occer {
namespace {

struct Split {
  std::int32_t feature = -1;
  double threshold = 0.0;
  double score = 0.0;  // sum_L^2/n_L + sum_R^2/n_R, larger is better
};

struct PendingNode {
  std::int32_t id;
  std::size_t begin;
  std::size_t end;
  std::size_t depth;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const double> y, const RegressorSpec& spec,
              Rng& rng)
      : x_(x),
        y_(y),
        min_leaf_(std::max<std::size_t>(1, spec.min_samples_leaf)),
        max_depth_(spec.max_depth),
        num_candidates_(spec.max_features.Resolve(x.cols())),
        rng_(rng) {
    features_.resize(x.cols());
    std::iota(features_.begin(), features_.end(), 0);
  }

  RegressionTree Build(std::span<const std::size_t> sample) {
    rows_.assign(sample.begin(), sample.end());
    AddNode();
    std::vector<PendingNode> stack{{0, 0, rows_.size(), 0}};
    while (!stack.empty()) {
      const PendingNode node = stack.back();
      stack.pop_back();
      Grow(node, stack);
    }
    return std::move(tree_);
  }

 private:
  std::int32_t AddNode() {
    tree_.feature.push_back(-1);
    tree_.threshold.push_back(0.0);
    tree_.left.push_back(-1);
    tree_.right.push_back(-1);
    tree_.value.push_back(0.0);
    return static_cast<std::int32_t>(tree_.feature.size() - 1);
  }

  void Grow(const PendingNode& node, std::vector<PendingNode>& stack) {
    const std::size_t count = node.end - node.begin;
    double sum = 0.0;
    double lo = y_[rows_[node.begin]];
    double hi = lo;
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const double v = y_[rows_[i]];
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    // Clamped so rounding in the sum cannot leave the node's target range.
    tree_.value[node.id] = std::clamp(sum / static_cast<double>(count), lo, hi);

    if (count < 2 * min_leaf_ || lo == hi ||
        (max_depth_ && node.depth >= *max_depth_)) {
      return;
    }
    const Split split = FindSplit(node.begin, node.end, sum);
    if (split.feature < 0) return;

    const auto mid = std::stable_partition(
        rows_.begin() + node.begin, rows_.begin() + node.end,
        [&](std::size_t r) { return x_(r, split.feature) <= split.threshold; });
    const auto boundary = static_cast<std::size_t>(mid - rows_.begin());

    const std::int32_t left = AddNode();
    const std::int32_t right = AddNode();
    tree_.feature[node.id] = split.feature;
    tree_.threshold[node.id] = split.threshold;
    tree_.left[node.id] = left;
    tree_.right[node.id] = right;
    stack.push_back({right, boundary, node.end, node.depth + 1});
    stack.push_back({left, node.begin, boundary, node.depth + 1});
  }

  // Candidate features are visited in ascending index order and thresholds
  // in ascending order; only strict improvements replace the incumbent, so
  // ties resolve to the lowest feature, then the lowest threshold.
  Split FindSplit(std::size_t begin, std::size_t end, double total) {
    const std::size_t count = end - begin;
    const std::size_t p = features_.size();
    for (std::size_t i = 0; i < num_candidates_; ++i) {
      std::swap(features_[i], features_[i + rng_.UniformIndex(p - i)]);
    }
    std::vector<std::size_t> candidates(features_.begin(),
                                        features_.begin() + num_candidates_);
    std::sort(candidates.begin(), candidates.end());

    Split best;
    bool found = false;
    pairs_.resize(count);
    for (std::size_t f : candidates) {
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t r = rows_[begin + i];
        pairs_[i] = {x_(r, f), y_[r]};
      }
      std::sort(pairs_.begin(), pairs_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (pairs_.front().first == pairs_.back().first) continue;

      double left_sum = 0.0;
      for (std::size_t i = 0; i + 1 < count; ++i) {
        left_sum += pairs_[i].second;
        const std::size_t n_left = i + 1;
        const std::size_t n_right = count - n_left;
        if (n_left < min_leaf_) continue;
        if (n_right < min_leaf_) break;
        const double a = pairs_[i].first;
        const double b = pairs_[i + 1].first;
        if (!(a < b)) continue;
        const double right_sum = total - left_sum;
        const double score = left_sum * left_sum / static_cast<double>(n_left) +
                             right_sum * right_sum / static_cast<double>(n_right);
        if (!found || score > best.score) {
          double threshold = 0.5 * (a + b);
          if (!(threshold < b)) threshold = a;
          best = {static_cast<std::int32_t>(f), threshold, score};
          found = true;
        }
      }
    }
    return best;
  }

  const Matrix& x_;
  std::span<const double> y_;
  std::size_t min_leaf_;
  std::optional<std::size_t> max_depth_;
  std::size_t num_candidates_;
  Rng& rng_;
  std::vector<std::size_t> features_;
  std::vector<std::size_t> rows_;
  std::vector<std::pair<double, double>> pairs_;
  RegressionTree tree_;
};

}  // namespace

double RegressionTree::Predict(std::span<const double> x) const {
  std::size_t node = 0;
  while (feature[node] >= 0) {
    node = x[feature[node]] <= threshold[node] ? left[node] : right[node];
  }
  return value[node];
}

std::size_t RegressionTree::Depth() const {
  std::vector<std::size_t> depth(num_nodes(), 0);
  std::size_t deepest = 0;
  // Children always have larger ids than their parent.
  for (std::size_t node = 0; node < num_nodes(); ++node) {
    deepest = std::max(deepest, depth[node]);
    if (!is_leaf(node)) {
      depth[left[node]] = depth[node] + 1;
      depth[right[node]] = depth[node] + 1;
    }
  }
  return deepest;
}

double ForestParams::Predict(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& tree : trees) sum += tree.Predict(x);
  return sum / static_cast<double>(trees.size());
}

RegressionTree FitRegressionTree(const Matrix& x, std::span<const double> y,
                                 std::span<const std::size_t> sample,
                                 const RegressorSpec& spec, Rng& rng) {
  TreeBuilder builder(x, y, spec, rng);
  return builder.Build(sample);
}

ForestParams FitForest(const RegressorSpec& spec, const Matrix& x,
                       std::span<const double> y, Execution exec) {
  const std::size_t n = x.rows();
  ForestParams forest;
  forest.trees.resize(spec.n_trees);
  const auto n_trees = static_cast<std::int64_t>(spec.n_trees);
#pragma omp parallel for schedule(dynamic) if (IsParallel(exec))
  for (std::int64_t t = 0; t < n_trees; ++t) {
    Rng rng(spec.seed, static_cast<std::uint64_t>(t));
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = rng.UniformIndex(n);
    forest.trees[t] = FitRegressionTree(x, y, sample, spec, rng);
  }
  return forest;
}

}  // namespace occer
