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

#ifndef OCCER_REFERENCE_H_
#define OCCER_REFERENCE_H_

// Straightforward single-threaded versions of the hot kernels. They share no
// code with the optimized paths beyond the model types and are kept to check
// those paths in tests and to give the benchmark a baseline.

#include <cstddef>
#include <vector>

#include "occer/dataset.h"
#include "occer/occer.h"

namespace occer::reference {

// Row-by-row OCCER scoring through the public Predict() entry point.
std::vector<double> ScoreDataset(const OccerModel& model, const Dataset& data);

// LOF of each query row against `train` (both already normalized), with
// every k-distance and density recomputed from scratch by full sorts.
std::vector<double> LofScores(const Matrix& train, std::size_t k, const Matrix& queries);

}  // namespace occer::reference

#endif  // OCCER_REFERENCE_H_
