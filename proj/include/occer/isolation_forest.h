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

#ifndef OCCER_ISOLATION_FOREST_H_
#define OCCER_ISOLATION_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "occer/dataset.h"
#include "occer/execution.h"

namespace occer {

// Isolation tree as parallel node arrays; feature < 0 marks an external node
// holding `size` training samples.
struct IsolationTree {
  std::vector<std::int32_t> feature;
  std::vector<double> threshold;
  std::vector<std::int32_t> left;
  std::vector<std::int32_t> right;
  std::vector<std::size_t> size;

  std::size_t num_nodes() const { return feature.size(); }
  // Path length of `x` including the c(size) adjustment at the leaf.
  double PathLength(std::span<const double> x) const;
  std::size_t Depth() const;

  bool operator==(const IsolationTree&) const = default;
};

// Average path length of an unsuccessful BST search over n points:
// 2 H(n-1) - 2 (n-1) / n, with c(1) = 0 and c(2) = 1.
double AveragePathLength(std::size_t n);

struct IsolationForestOptions {
  std::size_t n_trees = 100;
  std::size_t subsample_size = 256;
  std::uint64_t seed = 0;
};

class IsolationForestModel {
 public:
  // Each tree sees min(subsample_size, n) rows drawn without replacement and
  // stops growing at depth ceil(log2(subsample)). Tree t uses Rng(seed, t).
  // Throws ConfigError for zero trees or a subsample below 2.
  static IsolationForestModel Fit(const Dataset& train,
                                  const IsolationForestOptions& options = {},
                                  Execution exec = Execution::kParallel);

  IsolationForestModel(NormalizationParams normalizer, std::vector<IsolationTree> trees,
                       std::size_t subsample_size, std::uint64_t seed);

  const NormalizationParams& normalizer() const { return normalizer_; }
  const std::vector<IsolationTree>& trees() const { return trees_; }
  std::size_t subsample_size() const { return subsample_size_; }
  std::size_t n_trees() const { return trees_.size(); }
  std::uint64_t seed() const { return seed_; }

  // 2^(-E[h(x)] / c(subsample)), in (0, 1); higher is more anomalous.
  double Score(std::span<const double> point) const;
  std::vector<double> ScoreDataset(const Dataset& data,
                                   Execution exec = Execution::kParallel) const;

  bool operator==(const IsolationForestModel&) const = default;

 private:
  double ScoreNormalized(std::span<const double> normalized) const;

  NormalizationParams normalizer_;
  std::vector<IsolationTree> trees_;
  std::size_t subsample_size_;
  std::uint64_t seed_;
};

}  // namespace occer

#endif  // OCCER_ISOLATION_FOREST_H_
