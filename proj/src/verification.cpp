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

#include "tollgame/verification.hpp"

#include <sstream>

#include "tollgame/alliance.hpp"
#include "tollgame/oracle.hpp"
#include "tollgame/values.hpp"

namespace tollgame {

namespace {

std::string describe(const HighwayProblem& p, const CoalitionStructure& s) {
  std::ostringstream out;
  out << "n=" << p.agents.size() << " k=" << p.sections.size() << " unions=" << s.size();
  return out.str();
}

bool same_values(const Allocation& a, const Allocation& b) { return a.values == b.values; }

}  // namespace

SuiteReport oracle_equivalence_suite(int trials, std::uint64_t seed,
                                     const GeneratorConfig& config) {
  SuiteReport report;
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    HighwayProblem problem = random_problem(rng, config);
    CoalitionStructure structure = random_structure(rng, problem);
    TUGame game = to_tu_game(problem);
    ++report.trials;

    auto record = [&](const char* what, const Allocation& fast, const Allocation& slow) {
      ++report.checks;
      if (!same_values(fast, slow)) {
        std::ostringstream msg;
        msg << "trial " << trial << " (" << describe(problem, structure) << "): " << what
            << " closed form differs from oracle";
        report.failures.push_back(msg.str());
      }
    };
    record("shapley", shapley_closed(problem).allocation, shapley(game));
    record("tijs", tijs_closed(problem).allocation, tijs(game));
    record("owen", owen_closed(problem, structure).allocation, owen(game, structure));
    record("coalitional-tijs", coalitional_tijs_closed(problem, structure).allocation,
           coalitional_tijs(game, structure));
    record("shapley-tijs", shapley_tijs_closed(problem, structure).allocation,
           shapley_tijs_ref(problem, structure));
  }
  return report;
}

SuiteReport reduction_lattice_suite(int trials, std::uint64_t seed,
                                    const GeneratorConfig& config) {
  SuiteReport report;
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    HighwayProblem problem = random_problem(rng, config);
    CoalitionStructure singles = CoalitionStructure::singletons(problem);
    CoalitionStructure grand = CoalitionStructure::grand(problem);
    ++report.trials;

    Allocation phi = shapley_closed(problem).allocation;
    Allocation tau = tijs_closed(problem).allocation;
    auto expect = [&](const char* what, const Allocation& got, const Allocation& want) {
      ++report.checks;
      if (!same_values(got, want)) {
        std::ostringstream msg;
        msg << "trial " << trial << ": " << what;
        report.failures.push_back(msg.str());
      }
    };
    expect("singleton Owen != Shapley", owen_closed(problem, singles).allocation, phi);
    expect("singleton Shapley-Tijs != Shapley", shapley_tijs_closed(problem, singles).allocation,
           phi);
    expect("singleton coalitional Tijs != Tijs",
           coalitional_tijs_closed(problem, singles).allocation, tau);
    expect("grand-union Owen != Shapley", owen_closed(problem, grand).allocation, phi);
    expect("grand-union coalitional Tijs != Tijs",
           coalitional_tijs_closed(problem, grand).allocation, tau);
    expect("grand-union Shapley-Tijs != Tijs", shapley_tijs_closed(problem, grand).allocation,
           tau);
  }
  return report;
}

SuiteReport alliance_theorem_suite(int trials, std::uint64_t seed,
                                   const GeneratorConfig& config) {
  SuiteReport report;
  Rng rng(seed);
  // Instances without two unions carry no merge; retry until `trials`
  // merges were actually examined.
  for (int attempt = 0; report.trials < trials && attempt < 20 * trials; ++attempt) {
    int trial = report.trials;
    HighwayProblem problem = random_problem(rng, config);
    if (problem.agents.size() < 2) continue;
    CoalitionStructure structure = random_structure(rng, problem);
    if (structure.size() < 2) continue;
    std::set<int> merge = random_merge(rng, structure);
    ++report.trials;

    AllianceReport owen_report = owen_alliance(problem, structure, merge);
    ++report.checks;
    if (owen_report.post_total > owen_report.pre_sum) {
      report.failures.push_back("trial " + std::to_string(trial) +
                                ": Owen alliance inequality failed");
    }
    ++report.checks;
    bool owen_strict = owen_report.post_total < owen_report.pre_sum;
    if (owen_strict != owen_report.strict) {
      report.failures.push_back("trial " + std::to_string(trial) +
                                ": Owen strictness flag mismatch");
    }

    AllianceReport ct_report = coalitional_tijs_alliance(problem, structure, merge);
    if (ct_report.theorem_applicable) {
      ++report.checks;
      if (ct_report.post_total > ct_report.pre_sum) {
        report.failures.push_back("trial " + std::to_string(trial) +
                                  ": coalitional-Tijs alliance inequality failed");
      }
      ++report.checks;
      bool ct_strict = ct_report.post_total < ct_report.pre_sum;
      if (ct_strict != ct_report.strict) {
        report.failures.push_back("trial " + std::to_string(trial) +
                                  ": coalitional-Tijs strictness flag mismatch");
      }
    }
  }
  return report;
}

}  // namespace tollgame
