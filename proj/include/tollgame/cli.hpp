// Copyright 2026 The tollgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOLLGAME_CLI_HPP
#define TOLLGAME_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tollgame {

// Exit codes: 0 success, 1 usage error, 2 validation failure,
// 3 verification/axiom violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitViolation = 3;

/// Runs the command line (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tollgame

#endif  // TOLLGAME_CLI_HPP
