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

#ifndef OCCER_EXECUTION_H_
#define OCCER_EXECUTION_H_

namespace occer {

// Selects between the OpenMP kernels and a plain single-threaded loop. Both
// paths produce bit-identical results; the serial one exists for testing and
// benchmarking.
enum class Execution { kSerial, kParallel };

inline bool IsParallel(Execution exec) { return exec == Execution::kParallel; }

}  // namespace occer

#endif  // OCCER_EXECUTION_H_
