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

#ifndef TOLLGAME_MODEL_HPP
#define TOLLGAME_MODEL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tollgame/money.hpp"

namespace tollgame {

using AgentId = std::string;
using SectionId = std::string;

/// A highway cost-sharing instance: agents, ordered costed sections, and
/// per-agent usage sets. Usage sets may be disconnected; every section must
/// be used by at least one agent. Section order is preserved for
/// deterministic output only; no computation depends on it.
struct HighwayProblem {
  std::vector<AgentId> agents;
  std::vector<SectionId> sections;
  std::map<SectionId, Money> cost;
  std::map<AgentId, std::set<SectionId>> usage;

  Money total_cost() const;
  bool operator==(const HighwayProblem& other) const;
};

struct ValidationIssue {
  enum class Kind {
    EmptyAgents,
    EmptySections,
    DuplicateAgent,
    DuplicateSection,
    MissingCost,
    NegativeCost,
    EmptyUsage,
    MissingUsage,
    UnknownSection,
    UncoveredSection,
    UnknownAgent,
  };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

ValidationReport validate(const HighwayProblem& problem);

/// Dense-index view over a validated problem. Throws std::invalid_argument
/// if the problem is invalid (this is where downstream operations reject
/// bad input).
struct ProblemIndex {
  const HighwayProblem* problem;
  std::map<AgentId, int> agent_index;
  std::map<SectionId, int> section_index;
  std::vector<std::vector<int>> usage;  // agent -> sorted section indices
  std::vector<std::vector<int>> users;  // section -> sorted agent indices
  std::vector<Money> cost;              // by section index

  int agent_count() const { return static_cast<int>(usage.size()); }
  int section_count() const { return static_cast<int>(users.size()); }
};

ProblemIndex index_problem(const HighwayProblem& problem);

/// An ordered partition of the agent set into a priori unions.
class CoalitionStructure {
 public:
  CoalitionStructure() = default;
  explicit CoalitionStructure(std::vector<std::vector<AgentId>> blocks);

  static CoalitionStructure singletons(const HighwayProblem& problem);
  static CoalitionStructure grand(const HighwayProblem& problem);

  const std::vector<std::vector<AgentId>>& blocks() const { return blocks_; }
  int size() const { return static_cast<int>(blocks_.size()); }

  /// Throws if the blocks do not partition the problem's agents.
  void check_partition_of(const HighwayProblem& problem) const;

  /// Block index containing the agent; throws if absent.
  int block_of(const AgentId& agent) const;

  /// Partition equality, ignoring block and member order.
  bool same_partition(const CoalitionStructure& other) const;

 private:
  std::vector<std::vector<AgentId>> blocks_;
};

/// c(S) = total cost of the sections used by S; c(empty) = 0.
/// Throws on unknown agent ids.
Money coalition_cost(const HighwayProblem& problem, const std::set<AgentId>& coalition);

/// Agent-level partition of sections into exclusive (one user) and shared
/// (more than one user), with the derived per-agent usage splits, user sets
/// and cost scalars.
struct SectionClassification {
  std::set<SectionId> exclusive;  // K^e
  std::set<SectionId> shared;     // K^s
  std::map<AgentId, std::set<SectionId>> exclusive_usage;  // T^e
  std::map<AgentId, std::set<SectionId>> shared_usage;     // T^s
  std::map<SectionId, std::set<AgentId>> users;            // N_t
  std::map<AgentId, Money> exclusive_cost;  // c^e(i)
  std::map<AgentId, Money> shared_cost;     // c^s(i)
  Money shared_total;                       // c^s(N)
};

SectionClassification classify_sections(const HighwayProblem& problem);

/// Restriction to a non-empty subset of sections: keeps agents with at
/// least one kept section, intersects usage, restricts costs. A structure,
/// when given, drops unions whose sections all disappear and intersects the
/// surviving blocks with the surviving agents.
std::pair<HighwayProblem, std::optional<CoalitionStructure>> restrict_problem(
    const HighwayProblem& problem, const std::optional<CoalitionStructure>& structure,
    const std::set<SectionId>& keep);

/// Union-level view of a problem under a coalition structure.
struct QuotientView {
  std::vector<std::set<SectionId>> union_usage;     // T(P_a)
  std::map<SectionId, std::set<int>> using_unions;  // script-A_t
  // member counts |N_t^a|, keyed (section, union index), absent => 0
  std::map<SectionId, std::map<int, int>> member_counts;
  std::set<SectionId> exclusive;  // K_P^e
  std::set<SectionId> shared;     // K_P^s
  std::vector<std::set<SectionId>> exclusive_usage;  // T_P^e(a)
  std::vector<std::set<SectionId>> shared_usage;     // T_P^s(a)
  std::vector<Money> exclusive_cost;  // c_P^e(a)
  std::vector<Money> shared_cost;     // c_P^s(a)
  Money shared_total;                 // c_P^s(M)

  /// Quotient characteristic function c_P(H) = c(union of blocks in H).
  Money quotient_cost(const std::set<int>& union_coalition) const;

 private:
  friend QuotientView quotient(const HighwayProblem&, const CoalitionStructure&);
  std::map<SectionId, Money> cost_;
};

QuotientView quotient(const HighwayProblem& problem, const CoalitionStructure& structure);

/// Merges the selected unions (at least two) into a single block placed at
/// the position of the lowest selected index; other blocks keep their order.
CoalitionStructure merge_unions(const CoalitionStructure& structure, const std::set<int>& merge);

/// Classification of sections across one merge step: exclusive before and
/// after (ee), shared before / exclusive after (se), shared before and
/// after (ss), with the per-original-union section splits and merge counts.
struct AllianceView {
  std::vector<int> merged_from;  // original indices forming a*
  int merged_index;              // position of a* in the merged structure
  std::map<SectionId, int> merging_user_count;      // fraktur-a_t, sections of T(P_a*)
  std::map<SectionId, std::set<int>> post_using_unions;  // script-A*_t (merged indices)
  std::set<SectionId> ee, se, ss;
  std::vector<std::set<SectionId>> ee_usage, se_usage, ss_usage;  // per original union
};

/// `merged` must come from `structure` by a single merge_unions call;
/// otherwise throws.
AllianceView classify_alliance(const HighwayProblem& problem, const CoalitionStructure& structure,
                               const CoalitionStructure& merged);

/// Payment vector keyed by agent id, with optional per-union totals.
struct Allocation {
  std::map<AgentId, Money> values;
  std::optional<std::vector<Money>> union_totals;
  /// Set when a Tijs-style efficiency coefficient had a vanishing
  /// denominator and the lower payoffs were returned as-is.
  bool degenerate_alpha = false;

  Money total() const;
  const Money& at(const AgentId& agent) const;
};

}  // namespace tollgame

#endif  // TOLLGAME_MODEL_HPP
