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
//
// Randomized equivalence and theorem suites: closed forms against the
// brute-force oracle, the reduction lattice, and the alliance inequalities.

#ifndef TOLLGAME_VERIFICATION_HPP
#define TOLLGAME_VERIFICATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tollgame/generator.hpp"

namespace tollgame {

struct SuiteReport {
  int trials = 0;
  int checks = 0;  // individual comparisons performed
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// All five closed forms equal their brute-force oracles, exactly, on
/// random problems with random partitions.
SuiteReport oracle_equivalence_suite(int trials, std::uint64_t seed,
                                     const GeneratorConfig& config);

/// Singleton structure: Owen = Shapley-Tijs = Shapley, coalitional Tijs =
/// Tijs. Grand union: Owen = Shapley, coalitional Tijs = Shapley-Tijs =
/// Tijs. Exact equalities on random problems.
SuiteReport reduction_lattice_suite(int trials, std::uint64_t seed,
                                    const GeneratorConfig& config);

/// Owen alliance inequality (always) and coalitional-Tijs inequality (when
/// applicable), with strictness exactly matching the condition flags.
SuiteReport alliance_theorem_suite(int trials, std::uint64_t seed,
                                   const GeneratorConfig& config);

}  // namespace tollgame

#endif  // TOLLGAME_VERIFICATION_HPP
