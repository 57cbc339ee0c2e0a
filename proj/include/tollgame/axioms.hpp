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
// Executable checkers for the nine characterization properties, randomized
// falsification, and the value-by-axiom satisfaction matrix.

#ifndef TOLLGAME_AXIOMS_HPP
#define TOLLGAME_AXIOMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tollgame/generator.hpp"
#include "tollgame/values.hpp"

namespace tollgame {

enum class Axiom { PO, ETPA, ETPU, IIOC, CIOC, PSSA, PSSU, CPEA, CPEU };

inline constexpr Axiom kAllAxioms[] = {Axiom::PO,   Axiom::ETPA, Axiom::ETPU,
                                       Axiom::IIOC, Axiom::CIOC, Axiom::PSSA,
                                       Axiom::PSSU, Axiom::CPEA, Axiom::CPEU};

Axiom parse_axiom(const std::string& name);
std::string axiom_name(Axiom axiom);
bool is_pair_axiom(Axiom axiom);

using ValueFn = std::function<Allocation(const HighwayProblem&, const CoalitionStructure&)>;

/// Closed-form value as a checker-facing function (Shapley/Tijs ignore the
/// structure).
ValueFn value_fn(ValueKind kind);

/// One checkable scenario: a problem plus structure, or for the
/// cross-problem axioms a hypothesis-satisfying pair with a focus.
struct AxiomInstance {
  Axiom axiom;
  HighwayProblem problem;
  CoalitionStructure structure;
  std::optional<HighwayProblem> problem2;
  std::optional<CoalitionStructure> structure2;
  std::optional<AgentId> focus_agent;   // IIOC focus / CPEA prolonged agent
  std::optional<int> focus_union;       // CIOC / CPEU, index in structure
  std::optional<int> focus_union2;      // CIOC / CPEU, index in structure2
  std::optional<SectionId> new_section; // CPEA / CPEU

  /// Throws std::invalid_argument when the axiom's structural hypotheses do
  /// not hold (restriction equalities, prolongation relation, partitions).
  void check_hypotheses() const;
};

struct Verdict {
  bool passed = true;
  std::string witness;  // minimal description of the violation
};

/// Verifies the axiom's conclusion for the given value on the instance.
/// Hypotheses are re-checked first; a hypothesis failure throws rather than
/// returning a silent false.
Verdict check_axiom(const AxiomInstance& instance, const ValueFn& value);

/// Seed-deterministic instance biased toward the axiom's hypotheses
/// (e.g. duplicate-usage pairs for ETPA, no-exclusive unions for PSSA).
AxiomInstance random_instance(Axiom axiom, Rng& rng, const GeneratorConfig& config);

/// Frozen expectations: which of the five values satisfies which axiom.
bool expected_satisfied(ValueKind kind, Axiom axiom);

struct MatrixCell {
  ValueKind value;
  Axiom axiom;
  int trials = 0;
  bool violation_found = false;
  std::string witness;
  std::optional<AxiomInstance> counterexample;
};

struct SatisfactionMatrix {
  std::vector<MatrixCell> cells;
  const MatrixCell& cell(ValueKind kind, Axiom axiom) const;
  /// Cells expected to pass that produced a violation.
  std::vector<const MatrixCell*> unexpected_violations() const;
};

SatisfactionMatrix satisfaction_matrix(const std::vector<ValueKind>& values, int trials,
                                       std::uint64_t seed, const GeneratorConfig& config);

// Fixture (de)serialization for frozen counterexamples.
std::string instance_to_json(const AxiomInstance& instance);
AxiomInstance instance_from_json(const std::string& text);

}  // namespace tollgame

#endif  // TOLLGAME_AXIOMS_HPP
