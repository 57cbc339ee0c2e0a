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
// Seed-deterministic random instances for verification suites and
// property tests. Bounded results are drawn via modulo so runs reproduce
// across standard libraries.

#ifndef TOLLGAME_GENERATOR_HPP
#define TOLLGAME_GENERATOR_HPP

#include <cstdint>
#include <random>

#include "tollgame/model.hpp"

namespace tollgame {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [0, bound); bound >= 1.
  int below(int bound) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }
  /// Integer in [lo, hi] inclusive.
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int percent) { return below(100) < percent; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct GeneratorConfig {
  int max_agents = 6;
  int max_sections = 6;
  /// Costs are k/100 with k uniform in [0, 100*max_cost]; ~5% of sections
  /// get cost exactly 0 (zero costs are legal inputs).
  int max_cost = 20;
  bool allow_zero_cost = true;
};

HighwayProblem random_problem(Rng& rng, const GeneratorConfig& config);
CoalitionStructure random_structure(Rng& rng, const HighwayProblem& problem);

/// Random merge set of >= 2 unions; requires structure.size() >= 2.
std::set<int> random_merge(Rng& rng, const CoalitionStructure& structure);

}  // namespace tollgame

#endif  // TOLLGAME_GENERATOR_HPP
