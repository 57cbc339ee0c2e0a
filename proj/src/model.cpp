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

#include "tollgame/model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tollgame {

Money HighwayProblem::total_cost() const {
  Money total(0);
  for (const auto& [t, c] : cost) total += c;
  return total;
}

bool HighwayProblem::operator==(const HighwayProblem& other) const {
  // Order-insensitive on agents/sections; costs and usage are maps already.
  std::set<AgentId> a(agents.begin(), agents.end());
  std::set<AgentId> b(other.agents.begin(), other.agents.end());
  std::set<SectionId> s(sections.begin(), sections.end());
  std::set<SectionId> u(other.sections.begin(), other.sections.end());
  return a == b && s == u && cost == other.cost && usage == other.usage;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << issues[i].detail;
  }
  return out.str();
}

ValidationReport validate(const HighwayProblem& p) {
  using Kind = ValidationIssue::Kind;
  ValidationReport report;
  auto add = [&](Kind k, const std::string& d) { report.issues.push_back({k, d}); };

  if (p.sections.empty()) add(Kind::EmptySections, "no sections");

  std::set<SectionId> section_set;
  for (const auto& t : p.sections) {
    if (!section_set.insert(t).second) add(Kind::DuplicateSection, "duplicate section " + t);
  }
  std::set<AgentId> agent_set;
  for (const auto& i : p.agents) {
    if (!agent_set.insert(i).second) add(Kind::DuplicateAgent, "duplicate agent " + i);
  }

  for (const auto& t : p.sections) {
    auto it = p.cost.find(t);
    if (it == p.cost.end()) {
      add(Kind::MissingCost, "missing cost for section " + t);
    } else if (it->second < 0) {
      add(Kind::NegativeCost, "negative cost for section " + t);
    }
  }

  std::set<SectionId> covered;
  for (const auto& i : p.agents) {
    auto it = p.usage.find(i);
    if (it == p.usage.end()) {
      add(Kind::MissingUsage, "missing usage set for agent " + i);
      continue;
    }
    if (it->second.empty()) add(Kind::EmptyUsage, "empty usage set for agent " + i);
    for (const auto& t : it->second) {
      if (!section_set.count(t)) {
        add(Kind::UnknownSection, "agent " + i + " uses unknown section " + t);
      } else {
        covered.insert(t);
      }
    }
  }
  for (const auto& [i, _] : p.usage) {
    if (!agent_set.count(i)) add(Kind::UnknownAgent, "usage entry for unknown agent " + i);
  }
  for (const auto& t : p.sections) {
    if (!covered.count(t)) add(Kind::UncoveredSection, "uncovered section " + t);
  }
  return report;
}

ProblemIndex index_problem(const HighwayProblem& p) {
  ValidationReport report = validate(p);
  if (!report.ok()) {
    throw std::invalid_argument("invalid highway problem: " + report.to_string());
  }
  ProblemIndex ix;
  ix.problem = &p;
  for (const auto& i : p.agents) {
    ix.agent_index.emplace(i, static_cast<int>(ix.agent_index.size()));
  }
  for (const auto& t : p.sections) {
    ix.section_index.emplace(t, static_cast<int>(ix.section_index.size()));
  }
  ix.usage.resize(p.agents.size());
  ix.users.resize(p.sections.size());
  ix.cost.resize(p.sections.size());
  for (const auto& t : p.sections) ix.cost[ix.section_index.at(t)] = p.cost.at(t);
  for (const auto& i : p.agents) {
    int ai = ix.agent_index.at(i);
    for (const auto& t : p.usage.at(i)) {
      int ti = ix.section_index.at(t);
      ix.usage[ai].push_back(ti);
      ix.users[ti].push_back(ai);
    }
    std::sort(ix.usage[ai].begin(), ix.usage[ai].end());
  }
  for (auto& v : ix.users) std::sort(v.begin(), v.end());
  return ix;
}

CoalitionStructure::CoalitionStructure(std::vector<std::vector<AgentId>> blocks)
    : blocks_(std::move(blocks)) {
  for (const auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("empty union block");
  }
}

CoalitionStructure CoalitionStructure::singletons(const HighwayProblem& problem) {
  std::vector<std::vector<AgentId>> blocks;
  blocks.reserve(problem.agents.size());
  for (const auto& i : problem.agents) blocks.push_back({i});
  return CoalitionStructure(std::move(blocks));
}

CoalitionStructure CoalitionStructure::grand(const HighwayProblem& problem) {
  return CoalitionStructure({problem.agents});
}

void CoalitionStructure::check_partition_of(const HighwayProblem& problem) const {
  std::set<AgentId> seen;
  for (const auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("empty union block");
    for (const auto& i : block) {
      if (!seen.insert(i).second) {
        throw std::invalid_argument("agent " + i + " appears in two unions");
      }
    }
  }
  std::set<AgentId> agents(problem.agents.begin(), problem.agents.end());
  if (seen != agents) {
    throw std::invalid_argument("coalition structure does not partition the agent set");
  }
}

int CoalitionStructure::block_of(const AgentId& agent) const {
  for (size_t a = 0; a < blocks_.size(); ++a) {
    for (const auto& i : blocks_[a]) {
      if (i == agent) return static_cast<int>(a);
    }
  }
  throw std::invalid_argument("agent " + agent + " not in any union");
}

bool CoalitionStructure::same_partition(const CoalitionStructure& other) const {
  std::set<std::set<AgentId>> a, b;
  for (const auto& block : blocks_) a.insert(std::set<AgentId>(block.begin(), block.end()));
  for (const auto& block : other.blocks_) b.insert(std::set<AgentId>(block.begin(), block.end()));
  return a == b;
}

Money coalition_cost(const HighwayProblem& problem, const std::set<AgentId>& coalition) {
  std::set<SectionId> used;
  for (const auto& i : coalition) {
    auto it = problem.usage.find(i);
    if (it == problem.usage.end()) throw std::invalid_argument("unknown agent " + i);
    used.insert(it->second.begin(), it->second.end());
  }
  Money total(0);
  for (const auto& t : used) {
    auto it = problem.cost.find(t);
    if (it == problem.cost.end()) throw std::invalid_argument("unknown section " + t);
    total += it->second;
  }
  return total;
}

SectionClassification classify_sections(const HighwayProblem& problem) {
  ProblemIndex ix = index_problem(problem);
  SectionClassification cls;
  for (const auto& t : problem.sections) {
    const auto& users = ix.users[ix.section_index.at(t)];
    auto& set = cls.users[t];
    for (int ai : users) set.insert(problem.agents[ai]);
    if (users.size() == 1) {
      cls.exclusive.insert(t);
    } else {
      cls.shared.insert(t);
      cls.shared_total += problem.cost.at(t);
    }
  }
  for (const auto& i : problem.agents) {
    auto& te = cls.exclusive_usage[i];
    auto& ts = cls.shared_usage[i];
    Money ce(0), cs(0);
    for (const auto& t : problem.usage.at(i)) {
      if (cls.exclusive.count(t)) {
        te.insert(t);
        ce += problem.cost.at(t);
      } else {
        ts.insert(t);
        cs += problem.cost.at(t);
      }
    }
    cls.exclusive_cost[i] = ce;
    cls.shared_cost[i] = cs;
  }
  return cls;
}

std::pair<HighwayProblem, std::optional<CoalitionStructure>> restrict_problem(
    const HighwayProblem& problem, const std::optional<CoalitionStructure>& structure,
    const std::set<SectionId>& keep) {
  if (keep.empty()) throw std::invalid_argument("restriction to empty section set");
  for (const auto& t : keep) {
    if (!problem.cost.count(t)) throw std::invalid_argument("unknown section " + t);
  }

  HighwayProblem out;
  for (const auto& t : problem.sections) {
    if (keep.count(t)) {
      out.sections.push_back(t);
      out.cost[t] = problem.cost.at(t);
    }
  }
  for (const auto& i : problem.agents) {
    std::set<SectionId> trace;
    for (const auto& t : problem.usage.at(i)) {
      if (keep.count(t)) trace.insert(t);
    }
    if (!trace.empty()) {
      out.agents.push_back(i);
      out.usage[i] = std::move(trace);
    }
  }

  std::optional<CoalitionStructure> out_structure;
  if (structure) {
    std::set<AgentId> surviving(out.agents.begin(), out.agents.end());
    std::vector<std::vector<AgentId>> blocks;
    for (const auto& block : structure->blocks()) {
      std::vector<AgentId> trace;
      for (const auto& i : block) {
        if (surviving.count(i)) trace.push_back(i);
      }
      // A union survives iff some section of T(P_a) was kept, i.e. some
      // member survives.
      if (!trace.empty()) blocks.push_back(std::move(trace));
    }
    out_structure = CoalitionStructure(std::move(blocks));
  }
  return {std::move(out), std::move(out_structure)};
}

Money QuotientView::quotient_cost(const std::set<int>& union_coalition) const {
  std::set<SectionId> used;
  for (int a : union_coalition) {
    if (a < 0 || a >= static_cast<int>(union_usage.size())) {
      throw std::invalid_argument("union index out of range");
    }
    used.insert(union_usage[a].begin(), union_usage[a].end());
  }
  Money total(0);
  for (const auto& t : used) total += cost_.at(t);
  return total;
}

QuotientView quotient(const HighwayProblem& problem, const CoalitionStructure& structure) {
  index_problem(problem);  // reject invalid problems
  structure.check_partition_of(problem);

  QuotientView qv;
  qv.cost_ = problem.cost;
  int unions = structure.size();
  qv.union_usage.resize(unions);
  qv.exclusive_usage.resize(unions);
  qv.shared_usage.resize(unions);
  qv.exclusive_cost.assign(unions, Money(0));
  qv.shared_cost.assign(unions, Money(0));

  for (int a = 0; a < unions; ++a) {
    for (const auto& i : structure.blocks()[a]) {
      for (const auto& t : problem.usage.at(i)) {
        qv.union_usage[a].insert(t);
        qv.using_unions[t].insert(a);
        qv.member_counts[t][a] += 1;
      }
    }
  }
  for (const auto& t : problem.sections) {
    if (qv.using_unions.at(t).size() == 1) {
      qv.exclusive.insert(t);
    } else {
      qv.shared.insert(t);
      qv.shared_total += problem.cost.at(t);
    }
  }
  for (int a = 0; a < unions; ++a) {
    for (const auto& t : qv.union_usage[a]) {
      if (qv.exclusive.count(t)) {
        qv.exclusive_usage[a].insert(t);
        qv.exclusive_cost[a] += problem.cost.at(t);
      } else {
        qv.shared_usage[a].insert(t);
        qv.shared_cost[a] += problem.cost.at(t);
      }
    }
  }
  return qv;
}

CoalitionStructure merge_unions(const CoalitionStructure& structure, const std::set<int>& merge) {
  if (merge.size() < 2) throw std::invalid_argument("a merge needs at least two unions");
  for (int a : merge) {
    if (a < 0 || a >= structure.size()) throw std::invalid_argument("union index out of range");
  }
  int anchor = *merge.begin();
  std::vector<std::vector<AgentId>> blocks;
  for (int a = 0; a < structure.size(); ++a) {
    if (a == anchor) {
      std::vector<AgentId> merged;
      for (int b : merge) {
        const auto& block = structure.blocks()[b];
        merged.insert(merged.end(), block.begin(), block.end());
      }
      blocks.push_back(std::move(merged));
    } else if (!merge.count(a)) {
      blocks.push_back(structure.blocks()[a]);
    }
  }
  return CoalitionStructure(std::move(blocks));
}

AllianceView classify_alliance(const HighwayProblem& problem, const CoalitionStructure& structure,
                               const CoalitionStructure& merged) {
  structure.check_partition_of(problem);
  merged.check_partition_of(problem);

  // Recover the single-merge relation: every merged block is either an
  // original block or the disjoint union of >= 2 original blocks; exactly
  // one block of the latter kind may exist.
  std::map<std::set<AgentId>, int> original;
  for (int a = 0; a < structure.size(); ++a) {
    const auto& block = structure.blocks()[a];
    original[std::set<AgentId>(block.begin(), block.end())] = a;
  }
  std::map<AgentId, int> original_of_agent;
  for (int a = 0; a < structure.size(); ++a) {
    for (const auto& i : structure.blocks()[a]) original_of_agent[i] = a;
  }

  AllianceView view;
  view.merged_index = -1;
  for (int b = 0; b < merged.size(); ++b) {
    const auto& block = merged.blocks()[b];
    std::set<AgentId> key(block.begin(), block.end());
    if (original.count(key)) continue;  // untouched block
    std::set<int> sources;
    for (const auto& i : block) sources.insert(original_of_agent.at(i));
    // The candidate must be the exact union of its source blocks.
    size_t expected = 0;
    for (int a : sources) expected += structure.blocks()[a].size();
    if (expected != key.size() || sources.size() < 2 || view.merged_index >= 0) {
      throw std::invalid_argument("structures are not related by a single merge");
    }
    view.merged_index = b;
    view.merged_from.assign(sources.begin(), sources.end());
  }
  if (view.merged_index < 0) {
    throw std::invalid_argument("structures are not related by a single merge");
  }

  QuotientView before = quotient(problem, structure);
  QuotientView after = quotient(problem, merged);
  view.post_using_unions = after.using_unions;

  std::set<int> merging(view.merged_from.begin(), view.merged_from.end());
  for (const auto& t : problem.sections) {
    int count = 0;
    for (int a : before.using_unions.at(t)) {
      if (merging.count(a)) ++count;
    }
    if (count > 0) view.merging_user_count[t] = count;

    bool excl_before = before.exclusive.count(t) > 0;
    bool excl_after = after.exclusive.count(t) > 0;
    if (excl_before && excl_after) {
      view.ee.insert(t);
    } else if (!excl_before && excl_after) {
      view.se.insert(t);
    } else if (!excl_before && !excl_after) {
      view.ss.insert(t);
    } else {
      // exclusive -> shared cannot happen under a merge
      throw std::logic_error("section " + t + " became shared after a merge");
    }
  }

  view.ee_usage.resize(structure.size());
  view.se_usage.resize(structure.size());
  view.ss_usage.resize(structure.size());
  for (int a = 0; a < structure.size(); ++a) {
    for (const auto& t : before.union_usage[a]) {
      if (view.ee.count(t)) view.ee_usage[a].insert(t);
      else if (view.se.count(t)) view.se_usage[a].insert(t);
      else view.ss_usage[a].insert(t);
    }
  }
  return view;
}

Money Allocation::total() const {
  Money sum(0);
  for (const auto& [i, v] : values) sum += v;
  return sum;
}

const Money& Allocation::at(const AgentId& agent) const {
  auto it = values.find(agent);
  if (it == values.end()) throw std::out_of_range("no allocation for agent " + agent);
  return it->second;
}

}  // namespace tollgame
