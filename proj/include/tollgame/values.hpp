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
// Closed-form, polynomial-time allocation rules on highway problems, both
// explicit and multiplicity-aggregated, together with their per-section
// toll decompositions.

#ifndef TOLLGAME_VALUES_HPP
#define TOLLGAME_VALUES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tollgame/model.hpp"

namespace tollgame {

enum class ValueKind { Shapley, Tijs, Owen, CoalitionalTijs, ShapleyTijs };

ValueKind parse_value_kind(const std::string& name);  // throws on unknown
std::string value_kind_name(ValueKind kind);
bool is_coalitional(ValueKind kind);

/// Per-section toll constants. For Shapley/Tijs the entry depends on the
/// section only; for the coalitional values it additionally depends on the
/// paying union (group key: union index rendered as text, or the union /
/// profile label on aggregated problems). Summing an agent's entries over
/// its used sections reproduces its allocation.
struct TollDecomposition {
  bool per_union = false;
  std::map<SectionId, Money> section;  // used when !per_union
  std::map<std::string, std::map<SectionId, Money>> by_union;  // used when per_union
};

struct ExplicitValueResult {
  Allocation allocation;
  TollDecomposition tolls;
};

ExplicitValueResult shapley_closed(const HighwayProblem& problem);
ExplicitValueResult tijs_closed(const HighwayProblem& problem);
ExplicitValueResult owen_closed(const HighwayProblem& problem,
                                const CoalitionStructure& structure);
ExplicitValueResult coalitional_tijs_closed(const HighwayProblem& problem,
                                            const CoalitionStructure& structure);
ExplicitValueResult shapley_tijs_closed(const HighwayProblem& problem,
                                        const CoalitionStructure& structure);

/// Uniform dispatch; Shapley/Tijs ignore the structure.
ExplicitValueResult compute_value(ValueKind kind, const HighwayProblem& problem,
                                  const CoalitionStructure& structure);

/// One population of identical vehicles: a usage set with a multiplicity.
/// `union_label` assigns the whole profile to a named a priori union;
/// nullopt means every vehicle of the profile forms its own singleton union.
struct AggProfile {
  std::string label;
  std::set<SectionId> usage;
  long long multiplicity = 1;
  std::optional<std::string> union_label;
};

/// Multiplicity-aggregated highway problem. Expanding each profile into
/// `multiplicity` explicit agents yields a valid HighwayProblem; counts used
/// by the closed forms are multiplicity-weighted.
struct AggregatedProblem {
  std::vector<SectionId> sections;
  std::map<SectionId, Money> cost;
  std::vector<AggProfile> profiles;

  Money total_cost() const;
  /// Throws std::invalid_argument when invariants fail.
  void check() const;
  /// Explicit expansion (agent ids "<label>#<k>"); intended for small
  /// multiplicities in tests.
  std::pair<HighwayProblem, CoalitionStructure> expand() const;
};

struct AggregatedValueResult {
  /// Value of a single vehicle of each profile (profile order preserved).
  std::vector<Money> per_vehicle;
  /// Totals per explicit union label; own-union profiles appear under their
  /// profile label with the total over all their vehicles.
  std::map<std::string, Money> group_totals;
  TollDecomposition tolls;

  /// Sum over profiles of multiplicity * per-vehicle value.
  Money total(const AggregatedProblem& problem) const;
};

AggregatedValueResult shapley_closed(const AggregatedProblem& problem);
AggregatedValueResult tijs_closed(const AggregatedProblem& problem);
AggregatedValueResult owen_closed(const AggregatedProblem& problem);
AggregatedValueResult coalitional_tijs_closed(const AggregatedProblem& problem);
AggregatedValueResult shapley_tijs_closed(const AggregatedProblem& problem);

AggregatedValueResult compute_value(ValueKind kind, const AggregatedProblem& problem);

}  // namespace tollgame

#endif  // TOLLGAME_VALUES_HPP
