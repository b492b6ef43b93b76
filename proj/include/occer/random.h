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

#ifndef OCCER_RANDOM_H_
#define OCCER_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace occer {

// SplitMix64 finalizer, used to derive decorrelated stream seeds.
std::uint64_t SplitMix64(std::uint64_t x);

// Portable random source: std::mt19937_64 with hand-written conversions.
// The engine for (seed, stream) is seeded with
// SplitMix64(SplitMix64(seed) + stream).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(SplitMix64(SplitMix64(seed) + stream)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double UniformReal() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * UniformReal(); }

  // Uniform integer in [0, n). Unbiased (rejection sampling). n must be > 0.
  std::size_t UniformIndex(std::size_t n);

  // Standard normal via Box-Muller (one draw per call, no caching).
  double Normal();

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[UniformIndex(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace occer

#endif  // OCCER_RANDOM_H_
