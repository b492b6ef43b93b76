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

#ifndef OCCER_CLI_H_
#define OCCER_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace occer {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;

// Runs `occer <fit|score|bench> [flags]`. `args` excludes the program name.
// Data goes to files or `out`; diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Linear-interpolation quantile (q in [0, 1]) of `values`, which must be
// non-empty.
double Quantile(std::vector<double> values, double q);

}  // namespace occer

#endif  // OCCER_CLI_H_
