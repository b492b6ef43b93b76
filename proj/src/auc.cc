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

#include "occer/auc.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "occer/error.h"

namespace occer {

double RocAuc(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) {
    throw DataError("ROC-AUC: " + std::to_string(scores.size()) + " scores but " +
                    std::to_string(labels.size()) + " labels");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw DataError("ROC-AUC: non-finite score");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the rank sum of the outliers, in integers: a tie group occupying
  // 1-based positions [start+1, end] contributes rank (start + 1 + end) / 2.
  std::int64_t outliers = 0;
  std::int64_t rank_sum_x2 = 0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    const auto rank_x2 = static_cast<std::int64_t>(start + 1 + end);
    for (std::size_t i = start; i < end; ++i) {
      if (labels[order[i]] == Label::kOutlier) {
        ++outliers;
        rank_sum_x2 += rank_x2;
      }
    }
    start = end;
  }
  const std::int64_t targets = static_cast<std::int64_t>(n) - outliers;
  if (outliers == 0 || targets == 0) {
    throw DataError("ROC-AUC needs both target and outlier labels");
  }
  const std::int64_t u_x2 = rank_sum_x2 - outliers * (outliers + 1);
  return static_cast<double>(u_x2) / static_cast<double>(2 * outliers * targets);
}

}  // namespace occer
