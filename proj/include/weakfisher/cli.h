// Copyright 2026 The weakfisher Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEAKFISHER_CLI_H
#define WEAKFISHER_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace weakfisher {

/// Exit statuses of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command. `args` excludes the program name. Results go to the
/// --output file when given, otherwise to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// v with 17 significant digits, locale independent.
std::string format_number(double v);

}  // namespace weakfisher

#endif
