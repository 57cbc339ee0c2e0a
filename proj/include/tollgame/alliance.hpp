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
// Effect of merging a priori unions on each coalitional value's union
// totals, with the benefit-theorem applicability and strictness conditions.

#ifndef TOLLGAME_ALLIANCE_HPP
#define TOLLGAME_ALLIANCE_HPP

#include <set>
#include <vector>

#include "tollgame/values.hpp"

namespace tollgame {

struct AllianceReport {
  ValueKind value = ValueKind::Owen;
  std::vector<Money> pre_totals;  // per merging union, original order
  Money pre_sum;
  Money post_total;
  Money delta;  // post - pre_sum; negative means the alliance saved money

  /// Owen: always true. Coalitional Tijs: K^se empty (the benefit theorem's
  /// hypothesis). When false the report only measures.
  bool theorem_applicable = true;
  /// post <= pre_sum was checked (and holds) under the theorem.
  bool inequality_holds = false;
  /// Exact strictness condition; `witnesses` lists the sections behind it.
  bool strict = false;
  std::vector<SectionId> witnesses;
};

/// Owen union totals before/after one merge. `merge` holds original union
/// indices (at least two).
AllianceReport owen_alliance(const HighwayProblem& problem, const CoalitionStructure& structure,
                             const std::set<int>& merge);

AllianceReport coalitional_tijs_alliance(const HighwayProblem& problem,
                                         const CoalitionStructure& structure,
                                         const std::set<int>& merge);

/// Measures only; union totals coincide with Owen's, so the Owen inequality
/// transfers at the union-total level.
AllianceReport shapley_tijs_alliance(const HighwayProblem& problem,
                                     const CoalitionStructure& structure,
                                     const std::set<int>& merge);

AllianceReport alliance_report(ValueKind kind, const HighwayProblem& problem,
                               const CoalitionStructure& structure, const std::set<int>& merge);

}  // namespace tollgame

#endif  // TOLLGAME_ALLIANCE_HPP
