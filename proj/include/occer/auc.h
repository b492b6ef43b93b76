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

#ifndef OCCER_AUC_H_
#define OCCER_AUC_H_

#include <span>

#include "occer/dataset.h"

namespace occer {

// Area under the ROC curve with outliers as the positive class:
// P(score(outlier) > score(target)) + P(equal) / 2. Computed exactly from
// tie-averaged ranks (Mann-Whitney U). Throws DataError on length mismatch,
// non-finite scores, or when either class is absent.
double RocAuc(std::span<const double> scores, std::span<const Label> labels);

}  // namespace occer

#endif  // OCCER_AUC_H_
