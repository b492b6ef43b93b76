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

#ifndef OCCER_TESTS_TEST_UTIL_H_
#define OCCER_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <iterator>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include <unistd.h>

#include "occer/dataset.h"
#include "occer/random.h"

namespace occer::testing {

// Worked example: three target points, four features.
inline Matrix WorkedExampleMatrix() {
  return Matrix(3, 4, {0.85, 0.34, 0.87, 0.45,  //
                       0.67, 0.43, 0.43, 0.54,  //
                       0.79, 0.89, 0.63, 0.71});
}

inline Matrix RandomMatrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) x(r, c) = rng.Normal();
  }
  return x;
}

// Targets on a random (m/2)-dimensional linear subspace plus N(0, noise^2),
// then outliers uniform in the targets' bounding box. Labels follow row
// order: targets first.
inline Dataset LinearManifold(std::size_t targets, std::size_t outliers, std::size_t m,
                              double noise, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t latent = std::max<std::size_t>(1, m / 2);
  std::vector<double> basis(latent * m);
  for (double& b : basis) b = rng.Normal();
  Matrix x(targets + outliers, m);
  std::vector<Label> labels(targets + outliers, Label::kTarget);
  std::vector<double> lo(m, INFINITY);
  std::vector<double> hi(m, -INFINITY);
  for (std::size_t r = 0; r < targets; ++r) {
    std::vector<double> z(latent);
    for (double& v : z) v = rng.Normal();
    for (std::size_t j = 0; j < m; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < latent; ++k) v += z[k] * basis[k * m + j];
      x(r, j) = v + noise * rng.Normal();
      lo[j] = std::min(lo[j], x(r, j));
      hi[j] = std::max(hi[j], x(r, j));
    }
  }
  for (std::size_t r = targets; r < targets + outliers; ++r) {
    labels[r] = Label::kOutlier;
    for (std::size_t j = 0; j < m; ++j) x(r, j) = rng.Uniform(lo[j], hi[j]);
  }
  return Dataset(std::move(x), std::move(labels));
}

// O(n^2) ROC-AUC by counting outlier/target pairs.
inline double PairCountAuc(std::span<const double> scores, std::span<const Label> labels) {
  double greater = 0.0;
  double ties = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != Label::kOutlier) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != Label::kTarget) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) greater += 1.0;
      if (scores[i] == scores[j]) ties += 1.0;
    }
  }
  return (2.0 * greater + ties) / (2.0 * pairs);
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("occer_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(Counter()++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  static int& Counter() {
    static int counter = 0;
    return counter;
  }
  std::filesystem::path path_;
};

inline void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace occer::testing

#endif  // OCCER_TESTS_TEST_UTIL_H_
