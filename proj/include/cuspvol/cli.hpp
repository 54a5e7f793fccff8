// Copyright 2026 The cuspvol Authors.
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

// Command-line front end: info, solve, volume and check subcommands.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cuspvol {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kNoSolution = 3;
inline constexpr int kResidualGate = 4;
inline constexpr int kCheckFailed = 5;
}  // namespace exit_code

/// Runs one command line (program name excluded) and returns its exit code.
/// Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cuspvol
