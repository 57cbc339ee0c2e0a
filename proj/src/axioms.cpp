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

#include "tollgame/axioms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tollgame {

using nlohmann::json;

Axiom parse_axiom(const std::string& name) {
  for (Axiom a : kAllAxioms) {
    if (axiom_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown axiom: " + name);
}

std::string axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::PO: return "PO";
    case Axiom::ETPA: return "ETPA";
    case Axiom::ETPU: return "ETPU";
    case Axiom::IIOC: return "IIOC";
    case Axiom::CIOC: return "CIOC";
    case Axiom::PSSA: return "PSSA";
    case Axiom::PSSU: return "PSSU";
    case Axiom::CPEA: return "CPEA";
    case Axiom::CPEU: return "CPEU";
  }
  return "?";
}

bool is_pair_axiom(Axiom axiom) {
  return axiom == Axiom::IIOC || axiom == Axiom::CIOC || axiom == Axiom::CPEA ||
         axiom == Axiom::CPEU;
}

ValueFn value_fn(ValueKind kind) {
  return [kind](const HighwayProblem& problem, const CoalitionStructure& structure) {
    return compute_value(kind, problem, structure).allocation;
  };
}

namespace {

std::set<SectionId> union_sections(const HighwayProblem& problem,
                                   const std::vector<AgentId>& block) {
  std::set<SectionId> sections;
  for (const auto& i : block) {
    const auto& usage = problem.usage.at(i);
    sections.insert(usage.begin(), usage.end());
  }
  return sections;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument("axiom hypothesis violated: " + message);
}

// Checks the prolongation relation shared by CPEA and CPEU: same agents,
// one extra section with Gamma = Gamma'|K and P = P'|K.
void check_prolongation(const AxiomInstance& inst) {
  require(inst.problem2.has_value() && inst.structure2.has_value() &&
              inst.new_section.has_value(),
          "prolongation instance needs a second problem and the new section");
  const auto& p = inst.problem;
  const auto& q = *inst.problem2;
  const auto& t = *inst.new_section;
  require(q.cost.count(t) == 1, "new section missing from the prolonged problem");
  require(p.cost.count(t) == 0, "new section already present in the base problem");
  std::set<SectionId> base(p.sections.begin(), p.sections.end());
  std::set<SectionId> prolonged(q.sections.begin(), q.sections.end());
  base.insert(t);
  require(base == prolonged, "prolonged section set is not K plus the new section");
  std::set<SectionId> keep(p.sections.begin(), p.sections.end());
  auto [restricted, restricted_structure] =
      restrict_problem(q, std::optional<CoalitionStructure>(*inst.structure2), keep);
  require(restricted == p, "restriction of the prolonged problem differs from the base");
  require(restricted_structure->same_partition(inst.structure),
          "restriction of the prolonged structure differs from the base");
}

}  // namespace

void AxiomInstance::check_hypotheses() const {
  index_problem(problem);  // validity
  structure.check_partition_of(problem);
  if (problem2) {
    index_problem(*problem2);
    require(structure2.has_value(), "pair instance without second structure");
    structure2->check_partition_of(*problem2);
  }

  switch (axiom) {
    case Axiom::PO:
    case Axiom::ETPA:
    case Axiom::ETPU:
    case Axiom::PSSA:
    case Axiom::PSSU:
      require(!problem2, "single-problem axiom with a pair instance");
      return;
    case Axiom::IIOC: {
      require(problem2 && focus_agent, "IIOC needs a pair and a focus agent");
      const auto& i = *focus_agent;
      require(problem.usage.count(i) == 1, "focus agent missing from the first problem");
      require(problem2->usage.count(i) == 1, "focus agent missing from the second problem");
      auto [r1, s1] = restrict_problem(problem, structure, problem.usage.at(i));
      auto [r2, s2] = restrict_problem(*problem2, *structure2, problem2->usage.at(i));
      require(r1 == r2, "restrictions to the focus agent's sections differ");
      require(s1->same_partition(*s2), "restricted structures differ");
      return;
    }
    case Axiom::CIOC: {
      require(problem2 && focus_union && focus_union2, "CIOC needs a pair and focus unions");
      require(*focus_union >= 0 && *focus_union < structure.size(), "focus union out of range");
      require(*focus_union2 >= 0 && *focus_union2 < structure2->size(),
              "focus union out of range");
      const auto& block1 = structure.blocks()[*focus_union];
      const auto& block2 = structure2->blocks()[*focus_union2];
      require(std::set<AgentId>(block1.begin(), block1.end()) ==
                  std::set<AgentId>(block2.begin(), block2.end()),
              "focus union membership differs across the pair");
      auto sections1 = union_sections(problem, block1);
      auto sections2 = union_sections(*problem2, block2);
      auto [r1, s1] = restrict_problem(problem, structure, sections1);
      auto [r2, s2] = restrict_problem(*problem2, *structure2, sections2);
      require(r1 == r2, "restrictions to the focus union's sections differ");
      require(s1->same_partition(*s2), "restricted structures differ");
      return;
    }
    case Axiom::CPEA: {
      require(focus_agent.has_value(), "CPEA needs the prolonged agent");
      check_prolongation(*this);
      const auto& t = *new_section;
      for (const auto& [j, usage] : problem2->usage) {
        if (usage.count(t)) {
          require(j == *focus_agent, "new section used by someone other than the focus agent");
        }
      }
      require(problem2->usage.at(*focus_agent).count(t) == 1,
              "focus agent does not use the new section");
      require(problem.usage.count(*focus_agent) == 1,
              "prolonged agent missing from the base problem");
      return;
    }
    case Axiom::CPEU: {
      require(focus_union && focus_union2, "CPEU needs the prolonged union");
      check_prolongation(*this);
      require(*focus_union >= 0 && *focus_union < structure.size(), "focus union out of range");
      require(*focus_union2 >= 0 && *focus_union2 < structure2->size(),
              "focus union out of range");
      const auto& block1 = structure.blocks()[*focus_union];
      const auto& block2 = structure2->blocks()[*focus_union2];
      require(std::set<AgentId>(block1.begin(), block1.end()) ==
                  std::set<AgentId>(block2.begin(), block2.end()),
              "prolonged union membership differs across the pair");
      std::set<AgentId> members(block2.begin(), block2.end());
      const auto& t = *new_section;
      bool used = false;
      for (const auto& [j, usage] : problem2->usage) {
        if (usage.count(t)) {
          require(members.count(j) == 1, "new section used outside the prolonged union");
          used = true;
        }
      }
      require(used, "new section unused");
      return;
    }
  }
}

namespace {

std::string money_str(const Money& x) { return format_exact(x); }

Verdict fail(std::string witness) { return Verdict{false, std::move(witness)}; }

Verdict check_po(const AxiomInstance& inst, const ValueFn& value) {
  Allocation alloc = value(inst.problem, inst.structure);
  Money total = alloc.total();
  Money cost = inst.problem.total_cost();
  if (total != cost) {
    return fail("allocations sum to " + money_str(total) + ", total cost is " + money_str(cost));
  }
  return {};
}

Verdict check_etpa(const AxiomInstance& inst, const ValueFn& value) {
  Allocation alloc = value(inst.problem, inst.structure);
  for (const auto& block : inst.structure.blocks()) {
    std::map<std::set<SectionId>, AgentId> seen;
    for (const auto& i : block) {
      auto [it, inserted] = seen.emplace(inst.problem.usage.at(i), i);
      if (!inserted && alloc.at(it->second) != alloc.at(i)) {
        return fail("agents " + it->second + " and " + i + " share usage but pay " +
                    money_str(alloc.at(it->second)) + " vs " + money_str(alloc.at(i)));
      }
    }
  }
  return {};
}

std::vector<Money> block_totals(const Allocation& alloc, const CoalitionStructure& structure) {
  std::vector<Money> totals(structure.size(), Money(0));
  for (int a = 0; a < structure.size(); ++a) {
    for (const auto& i : structure.blocks()[a]) totals[a] += alloc.at(i);
  }
  return totals;
}

Verdict check_etpu(const AxiomInstance& inst, const ValueFn& value) {
  Allocation alloc = value(inst.problem, inst.structure);
  std::vector<Money> totals = block_totals(alloc, inst.structure);
  std::map<std::set<SectionId>, int> seen;
  for (int a = 0; a < inst.structure.size(); ++a) {
    auto sections = union_sections(inst.problem, inst.structure.blocks()[a]);
    auto [it, inserted] = seen.emplace(sections, a);
    if (!inserted && totals[it->second] != totals[a]) {
      return fail("unions " + std::to_string(it->second) + " and " + std::to_string(a) +
                  " use the same sections but total " + money_str(totals[it->second]) + " vs " +
                  money_str(totals[a]));
    }
  }
  return {};
}

Verdict check_iioc(const AxiomInstance& inst, const ValueFn& value) {
  Allocation a1 = value(inst.problem, inst.structure);
  Allocation a2 = value(*inst.problem2, *inst.structure2);
  const auto& i = *inst.focus_agent;
  if (a1.at(i) != a2.at(i)) {
    return fail("agent " + i + " pays " + money_str(a1.at(i)) + " vs " + money_str(a2.at(i)) +
                " though its restricted problems coincide");
  }
  return {};
}

Verdict check_cioc(const AxiomInstance& inst, const ValueFn& value) {
  Allocation a1 = value(inst.problem, inst.structure);
  Allocation a2 = value(*inst.problem2, *inst.structure2);
  Money t1(0), t2(0);
  for (const auto& i : inst.structure.blocks()[*inst.focus_union]) t1 += a1.at(i);
  for (const auto& i : inst.structure2->blocks()[*inst.focus_union2]) t2 += a2.at(i);
  if (t1 != t2) {
    return fail("focus union totals " + money_str(t1) + " vs " + money_str(t2) +
                " though its restricted problems coincide");
  }
  return {};
}

Verdict check_pssa(const AxiomInstance& inst, const ValueFn& value) {
  Allocation alloc = value(inst.problem, inst.structure);
  SectionClassification cls = classify_sections(inst.problem);
  for (int a = 0; a < inst.structure.size(); ++a) {
    const auto& block = inst.structure.blocks()[a];
    bool hypothesis = true;
    for (const auto& i : block) {
      if (!cls.exclusive_usage.at(i).empty()) {
        hypothesis = false;
        break;
      }
    }
    if (!hypothesis) continue;
    // A per-union constant must tie payments to shared costs.
    std::optional<Money> constant;
    std::optional<AgentId> anchor;
    for (const auto& i : block) {
      const Money& cs = cls.shared_cost.at(i);
      if (cs == 0) {
        if (alloc.at(i) != 0) {
          return fail("agent " + i + " has zero shared cost in union " + std::to_string(a) +
                      " but pays " + money_str(alloc.at(i)));
        }
        continue;
      }
      Money ratio = alloc.at(i) / cs;
      if (!constant) {
        constant = ratio;
        anchor = i;
      } else if (*constant != ratio) {
        return fail("union " + std::to_string(a) + ": agents " + *anchor + " and " + i +
                    " pay non-proportionally to shared costs (" + money_str(*constant) + " vs " +
                    money_str(ratio) + ")");
      }
    }
    if (constant && *constant < 0) {
      return fail("union " + std::to_string(a) + ": proportionality constant is negative");
    }
  }
  return {};
}

Verdict check_pssu(const AxiomInstance& inst, const ValueFn& value) {
  QuotientView qv = quotient(inst.problem, inst.structure);
  if (!qv.exclusive.empty()) return {};  // hypothesis not met, vacuous
  Allocation alloc = value(inst.problem, inst.structure);
  std::vector<Money> totals = block_totals(alloc, inst.structure);
  std::optional<Money> constant;
  std::optional<int> anchor;
  for (int a = 0; a < inst.structure.size(); ++a) {
    const Money& cs = qv.shared_cost[a];
    if (cs == 0) {
      if (totals[a] != 0) {
        return fail("union " + std::to_string(a) + " has zero shared cost but totals " +
                    money_str(totals[a]));
      }
      continue;
    }
    Money ratio = totals[a] / cs;
    if (!constant) {
      constant = ratio;
      anchor = a;
    } else if (*constant != ratio) {
      return fail("unions " + std::to_string(*anchor) + " and " + std::to_string(a) +
                  " total non-proportionally to shared costs (" + money_str(*constant) + " vs " +
                  money_str(ratio) + ")");
    }
  }
  if (constant && *constant < 0) return fail("proportionality constant is negative");
  return {};
}

Verdict check_cpea(const AxiomInstance& inst, const ValueFn& value) {
  Allocation before = value(inst.problem, inst.structure);
  Allocation after = value(*inst.problem2, *inst.structure2);
  const Money& added = inst.problem2->cost.at(*inst.new_section);
  for (const auto& i : inst.problem.agents) {
    Money expected = before.at(i) + (i == *inst.focus_agent ? added : Money(0));
    if (after.at(i) != expected) {
      return fail("agent " + i + " pays " + money_str(after.at(i)) + " after the prolongation, " +
                  "expected " + money_str(expected));
    }
  }
  return {};
}

Verdict check_cpeu(const AxiomInstance& inst, const ValueFn& value) {
  Allocation before = value(inst.problem, inst.structure);
  Allocation after = value(*inst.problem2, *inst.structure2);
  const Money& added = inst.problem2->cost.at(*inst.new_section);
  // Match unions across the pair by membership.
  std::map<std::set<AgentId>, int> index2;
  for (int b = 0; b < inst.structure2->size(); ++b) {
    const auto& block = inst.structure2->blocks()[b];
    index2[std::set<AgentId>(block.begin(), block.end())] = b;
  }
  std::vector<Money> t1 = block_totals(before, inst.structure);
  std::vector<Money> t2 = block_totals(after, *inst.structure2);
  for (int a = 0; a < inst.structure.size(); ++a) {
    const auto& block = inst.structure.blocks()[a];
    int b = index2.at(std::set<AgentId>(block.begin(), block.end()));
    Money expected = t1[a] + (a == *inst.focus_union ? added : Money(0));
    if (t2[b] != expected) {
      return fail("union " + std::to_string(a) + " totals " + money_str(t2[b]) +
                  " after the prolongation, expected " + money_str(expected));
    }
  }
  return {};
}

}  // namespace

Verdict check_axiom(const AxiomInstance& instance, const ValueFn& value) {
  instance.check_hypotheses();
  switch (instance.axiom) {
    case Axiom::PO: return check_po(instance, value);
    case Axiom::ETPA: return check_etpa(instance, value);
    case Axiom::ETPU: return check_etpu(instance, value);
    case Axiom::IIOC: return check_iioc(instance, value);
    case Axiom::CIOC: return check_cioc(instance, value);
    case Axiom::PSSA: return check_pssa(instance, value);
    case Axiom::PSSU: return check_pssu(instance, value);
    case Axiom::CPEA: return check_cpea(instance, value);
    case Axiom::CPEU: return check_cpeu(instance, value);
  }
  throw std::logic_error("unreachable");
}

namespace {

// ---- biased instance generators ----------------------------------------

// Some agent of another union also uses every section that only `block`'s
// members use, so the union ends with no exclusive-use sections.
void clear_union_exclusives(HighwayProblem& p, const std::vector<AgentId>& block,
                            const std::vector<AgentId>& outsiders, Rng& rng) {
  std::set<AgentId> members(block.begin(), block.end());
  for (const auto& t : p.sections) {
    std::vector<AgentId> users;
    for (const auto& [i, usage] : p.usage) {
      if (usage.count(t)) users.push_back(i);
    }
    if (users.size() == 1 && members.count(users[0])) {
      if (!outsiders.empty()) {
        p.usage[outsiders[rng.below(static_cast<int>(outsiders.size()))]].insert(t);
      } else if (block.size() > 1) {
        // No outsiders: share it with another member instead.
        AgentId other;
        do {
          other = block[rng.below(static_cast<int>(block.size()))];
        } while (other == users[0]);
        p.usage[other].insert(t);
      }
    }
  }
}

AxiomInstance make_single(Axiom axiom, HighwayProblem problem, CoalitionStructure structure) {
  AxiomInstance inst;
  inst.axiom = axiom;
  inst.problem = std::move(problem);
  inst.structure = std::move(structure);
  return inst;
}

AxiomInstance random_etpa(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p = random_problem(rng, config);
  CoalitionStructure s = random_structure(rng, p);
  // Bias: give two members of one union identical usage.
  std::vector<int> multi;
  for (int a = 0; a < s.size(); ++a) {
    if (s.blocks()[a].size() >= 2) multi.push_back(a);
  }
  if (multi.empty() && p.agents.size() >= 2) {
    // merge two blocks so a pair exists
    s = merge_unions(s, {0, 1});
    multi.push_back(0);
  }
  if (!multi.empty()) {
    const auto& block = s.blocks()[multi[rng.below(static_cast<int>(multi.size()))]];
    const AgentId& from = block[rng.below(static_cast<int>(block.size()))];
    AgentId to;
    do {
      to = block[rng.below(static_cast<int>(block.size()))];
    } while (to == from && block.size() > 1);
    p.usage[to] = p.usage[from];
    // Sections that lost their only user go to both agents, which keeps
    // their usage sets identical.
    std::set<SectionId> covered;
    for (const auto& [i, usage] : p.usage) covered.insert(usage.begin(), usage.end());
    for (const auto& t : p.sections) {
      if (!covered.count(t)) {
        p.usage[from].insert(t);
        p.usage[to].insert(t);
      }
    }
  }
  return make_single(Axiom::ETPA, std::move(p), std::move(s));
}

AxiomInstance random_etpu(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p = random_problem(rng, config);
  CoalitionStructure s = random_structure(rng, p);
  if (s.size() >= 2) {
    int a = rng.below(s.size());
    int b;
    do {
      b = rng.below(s.size());
    } while (b == a);
    auto target = union_sections(p, s.blocks()[a]);
    std::vector<SectionId> pool(target.begin(), target.end());
    // Rewrite b's members over a's section set, then cover the remainder.
    std::set<SectionId> covered_by_b;
    for (const auto& i : s.blocks()[b]) {
      std::set<SectionId> usage;
      for (const auto& t : pool) {
        if (rng.chance(50)) usage.insert(t);
      }
      if (usage.empty()) usage.insert(pool[rng.below(static_cast<int>(pool.size()))]);
      covered_by_b.insert(usage.begin(), usage.end());
      p.usage[i] = std::move(usage);
    }
    for (const auto& t : pool) {
      if (!covered_by_b.count(t)) {
        const auto& block = s.blocks()[b];
        p.usage[block[rng.below(static_cast<int>(block.size()))]].insert(t);
      }
    }
    // Cover sections that b's members abandoned.
    std::set<SectionId> covered;
    for (const auto& [i, usage] : p.usage) covered.insert(usage.begin(), usage.end());
    std::vector<SectionId> dropped;
    for (const auto& t : p.sections) {
      if (!covered.count(t)) dropped.push_back(t);
    }
    if (!dropped.empty()) {
      // Any agent outside unions a and b keeps T(P_a)=T(P_b) intact; if
      // none exists, drop the sections from the problem instead.
      std::vector<AgentId> outsiders;
      std::set<AgentId> in_ab(s.blocks()[a].begin(), s.blocks()[a].end());
      in_ab.insert(s.blocks()[b].begin(), s.blocks()[b].end());
      for (const auto& i : p.agents) {
        if (!in_ab.count(i)) outsiders.push_back(i);
      }
      if (!outsiders.empty()) {
        for (const auto& t : dropped) {
          p.usage[outsiders[rng.below(static_cast<int>(outsiders.size()))]].insert(t);
        }
      } else {
        std::set<SectionId> keep(p.sections.begin(), p.sections.end());
        for (const auto& t : dropped) keep.erase(t);
        auto [restricted, restricted_structure] =
            restrict_problem(p, std::optional<CoalitionStructure>(s), keep);
        p = std::move(restricted);
        s = std::move(*restricted_structure);
      }
    }
  }
  return make_single(Axiom::ETPU, std::move(p), std::move(s));
}

AxiomInstance random_pssa(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p = random_problem(rng, config);
  CoalitionStructure s = random_structure(rng, p);
  int a = rng.below(s.size());
  std::vector<AgentId> outsiders;
  std::set<AgentId> members(s.blocks()[a].begin(), s.blocks()[a].end());
  for (const auto& i : p.agents) {
    if (!members.count(i)) outsiders.push_back(i);
  }
  clear_union_exclusives(p, s.blocks()[a], outsiders, rng);
  return make_single(Axiom::PSSA, std::move(p), std::move(s));
}

AxiomInstance random_pssu(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p = random_problem(rng, config);
  CoalitionStructure s = random_structure(rng, p);
  if (s.size() >= 2) {
    // Every section must be used by at least two unions.
    for (const auto& t : p.sections) {
      std::set<int> unions_on_t;
      for (int a = 0; a < s.size(); ++a) {
        for (const auto& i : s.blocks()[a]) {
          if (p.usage.at(i).count(t)) {
            unions_on_t.insert(a);
            break;
          }
        }
      }
      if (unions_on_t.size() < 2) {
        int other;
        do {
          other = rng.below(s.size());
        } while (unions_on_t.count(other));
        const auto& block = s.blocks()[other];
        p.usage[block[rng.below(static_cast<int>(block.size()))]].insert(t);
      }
    }
  }
  return make_single(Axiom::PSSU, std::move(p), std::move(s));
}

AxiomInstance random_iioc(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p = random_problem(rng, config);
  CoalitionStructure s = random_structure(rng, p);
  const AgentId focus = p.agents[rng.below(static_cast<int>(p.agents.size()))];

  auto [base, base_structure] =
      restrict_problem(p, std::optional<CoalitionStructure>(s), p.usage.at(focus));
  HighwayProblem q = base;
  std::vector<std::vector<AgentId>> blocks = base_structure->blocks();

  // Fresh sections, optionally used by surviving agents other than the
  // focus, plus fresh agents confined to the fresh sections.
  int extra_sections = rng.range(1, 3);
  std::vector<SectionId> fresh;
  for (int k = 0; k < extra_sections; ++k) {
    SectionId t = "x" + std::to_string(k + 1);
    fresh.push_back(t);
    q.sections.push_back(t);
    q.cost[t] = Money(rng.range(0, config.max_cost * 100), 100);
  }
  for (const auto& i : q.agents) {
    if (i == focus) continue;
    for (const auto& t : fresh) {
      if (rng.chance(35)) q.usage[i].insert(t);
    }
  }
  int extra_agents = rng.range(0, 2);
  for (int k = 0; k < extra_agents; ++k) {
    AgentId id = "z" + std::to_string(k + 1);
    std::set<SectionId> usage;
    for (const auto& t : fresh) {
      if (rng.chance(50)) usage.insert(t);
    }
    if (usage.empty()) usage.insert(fresh[rng.below(static_cast<int>(fresh.size()))]);
    q.agents.push_back(id);
    q.usage[id] = std::move(usage);
    if (!blocks.empty() && rng.chance(50)) {
      blocks[rng.below(static_cast<int>(blocks.size()))].push_back(id);
    } else {
      blocks.push_back({id});
    }
  }
  // Cover leftover fresh sections.
  std::set<SectionId> covered;
  for (const auto& [i, usage] : q.usage) covered.insert(usage.begin(), usage.end());
  for (const auto& t : fresh) {
    if (!covered.count(t)) {
      std::vector<AgentId> candidates;
      for (const auto& i : q.agents) {
        if (i != focus) candidates.push_back(i);
      }
      if (candidates.empty()) {
        // single-agent world: drop the section again
        q.sections.erase(std::find(q.sections.begin(), q.sections.end(), t));
        q.cost.erase(t);
      } else {
        q.usage[candidates[rng.below(static_cast<int>(candidates.size()))]].insert(t);
      }
    }
  }

  AxiomInstance inst;
  inst.axiom = Axiom::IIOC;
  inst.problem = std::move(p);
  inst.structure = std::move(s);
  inst.problem2 = std::move(q);
  inst.structure2 = CoalitionStructure(std::move(blocks));
  inst.focus_agent = focus;
  return inst;
}

AxiomInstance random_cioc(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p = random_problem(rng, config);
  CoalitionStructure s = random_structure(rng, p);
  int focus = rng.below(s.size());
  auto sections = union_sections(p, s.blocks()[focus]);

  auto [base, base_structure] =
      restrict_problem(p, std::optional<CoalitionStructure>(s), sections);
  HighwayProblem q = base;
  std::vector<std::vector<AgentId>> blocks = base_structure->blocks();
  // Locate the focus block in the restricted structure (it survives whole).
  std::set<AgentId> focus_members(s.blocks()[focus].begin(), s.blocks()[focus].end());
  int focus2 = -1;
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    if (std::set<AgentId>(blocks[b].begin(), blocks[b].end()) == focus_members) focus2 = b;
  }

  int extra_sections = rng.range(1, 3);
  std::vector<SectionId> fresh;
  for (int k = 0; k < extra_sections; ++k) {
    SectionId t = "x" + std::to_string(k + 1);
    fresh.push_back(t);
    q.sections.push_back(t);
    q.cost[t] = Money(rng.range(0, config.max_cost * 100), 100);
  }
  for (const auto& i : q.agents) {
    if (focus_members.count(i)) continue;  // keep the focus union's sections fixed
    for (const auto& t : fresh) {
      if (rng.chance(35)) q.usage[i].insert(t);
    }
  }
  int extra_agents = rng.range(0, 2);
  for (int k = 0; k < extra_agents; ++k) {
    AgentId id = "z" + std::to_string(k + 1);
    std::set<SectionId> usage;
    for (const auto& t : fresh) {
      if (rng.chance(50)) usage.insert(t);
    }
    if (usage.empty()) usage.insert(fresh[rng.below(static_cast<int>(fresh.size()))]);
    q.agents.push_back(id);
    q.usage[id] = std::move(usage);
    std::vector<int> extendable;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      if (b != focus2) extendable.push_back(b);
    }
    if (!extendable.empty() && rng.chance(50)) {
      blocks[extendable[rng.below(static_cast<int>(extendable.size()))]].push_back(id);
    } else {
      blocks.push_back({id});
    }
  }
  std::set<SectionId> covered;
  for (const auto& [i, usage] : q.usage) covered.insert(usage.begin(), usage.end());
  for (const auto& t : fresh) {
    if (!covered.count(t)) {
      std::vector<AgentId> candidates;
      for (const auto& i : q.agents) {
        if (!focus_members.count(i)) candidates.push_back(i);
      }
      if (candidates.empty()) {
        q.sections.erase(std::find(q.sections.begin(), q.sections.end(), t));
        q.cost.erase(t);
      } else {
        q.usage[candidates[rng.below(static_cast<int>(candidates.size()))]].insert(t);
      }
    }
  }

  AxiomInstance inst;
  inst.axiom = Axiom::CIOC;
  inst.problem = std::move(p);
  inst.structure = std::move(s);
  inst.problem2 = std::move(q);
  inst.structure2 = CoalitionStructure(std::move(blocks));
  inst.focus_union = focus;
  inst.focus_union2 = focus2;
  return inst;
}

AxiomInstance random_cpea(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p = random_problem(rng, config);
  CoalitionStructure s = random_structure(rng, p);
  const AgentId focus = p.agents[rng.below(static_cast<int>(p.agents.size()))];
  HighwayProblem q = p;
  SectionId t = "xnew";
  q.sections.push_back(t);
  q.cost[t] = Money(rng.range(0, config.max_cost * 100), 100);
  q.usage[focus].insert(t);

  AxiomInstance inst;
  inst.axiom = Axiom::CPEA;
  inst.problem = std::move(p);
  inst.structure = s;
  inst.problem2 = std::move(q);
  inst.structure2 = std::move(s);
  inst.focus_agent = focus;
  inst.new_section = t;
  return inst;
}

AxiomInstance random_cpeu(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p = random_problem(rng, config);
  CoalitionStructure s = random_structure(rng, p);
  int focus = rng.below(s.size());
  const auto& block = s.blocks()[focus];
  HighwayProblem q = p;
  SectionId t = "xnew";
  q.sections.push_back(t);
  q.cost[t] = Money(rng.range(0, config.max_cost * 100), 100);
  // Between one and all members use the prolongation.
  int users = rng.range(1, static_cast<int>(block.size()));
  std::vector<AgentId> shuffled = block;
  for (int i = static_cast<int>(shuffled.size()) - 1; i > 0; --i) {
    std::swap(shuffled[i], shuffled[rng.below(i + 1)]);
  }
  for (int k = 0; k < users; ++k) q.usage[shuffled[k]].insert(t);

  AxiomInstance inst;
  inst.axiom = Axiom::CPEU;
  inst.problem = std::move(p);
  inst.structure = s;
  inst.problem2 = std::move(q);
  inst.structure2 = std::move(s);
  inst.focus_union = focus;
  inst.focus_union2 = focus;
  inst.new_section = t;
  return inst;
}

}  // namespace

AxiomInstance random_instance(Axiom axiom, Rng& rng, const GeneratorConfig& config) {
  switch (axiom) {
    case Axiom::PO: {
      HighwayProblem p = random_problem(rng, config);
      CoalitionStructure s = random_structure(rng, p);
      return make_single(Axiom::PO, std::move(p), std::move(s));
    }
    case Axiom::ETPA: return random_etpa(rng, config);
    case Axiom::ETPU: return random_etpu(rng, config);
    case Axiom::IIOC: return random_iioc(rng, config);
    case Axiom::CIOC: return random_cioc(rng, config);
    case Axiom::PSSA: return random_pssa(rng, config);
    case Axiom::PSSU: return random_pssu(rng, config);
    case Axiom::CPEA: return random_cpea(rng, config);
    case Axiom::CPEU: return random_cpeu(rng, config);
  }
  throw std::logic_error("unreachable");
}

bool expected_satisfied(ValueKind kind, Axiom axiom) {
  switch (axiom) {
    case Axiom::PO:
    case Axiom::ETPA:
    case Axiom::CPEA:
      return true;
    case Axiom::ETPU:
      return is_coalitional(kind);
    case Axiom::IIOC:
      return kind == ValueKind::Shapley || kind == ValueKind::Owen;
    case Axiom::CIOC:
      return kind == ValueKind::Shapley || kind == ValueKind::Owen ||
             kind == ValueKind::ShapleyTijs;
    case Axiom::PSSA:
      return kind == ValueKind::Tijs || kind == ValueKind::CoalitionalTijs ||
             kind == ValueKind::ShapleyTijs;
    case Axiom::PSSU:
      return kind == ValueKind::CoalitionalTijs;
    case Axiom::CPEU:
      return kind != ValueKind::Tijs;
  }
  return false;
}

const MatrixCell& SatisfactionMatrix::cell(ValueKind kind, Axiom axiom) const {
  for (const auto& c : cells) {
    if (c.value == kind && c.axiom == axiom) return c;
  }
  throw std::out_of_range("no such matrix cell");
}

std::vector<const MatrixCell*> SatisfactionMatrix::unexpected_violations() const {
  std::vector<const MatrixCell*> out;
  for (const auto& c : cells) {
    if (c.violation_found && expected_satisfied(c.value, c.axiom)) out.push_back(&c);
  }
  return out;
}

SatisfactionMatrix satisfaction_matrix(const std::vector<ValueKind>& values, int trials,
                                       std::uint64_t seed, const GeneratorConfig& config) {
  SatisfactionMatrix matrix;
  for (ValueKind kind : values) {
    ValueFn fn = value_fn(kind);
    for (Axiom axiom : kAllAxioms) {
      MatrixCell cell;
      cell.value = kind;
      cell.axiom = axiom;
      // Per-cell stream so cells are independent of evaluation order.
      std::uint64_t cell_seed =
          seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(kind) * 16 +
                                           static_cast<std::uint64_t>(axiom) + 1));
      Rng rng(cell_seed);
      for (int trial = 0; trial < trials; ++trial) {
        AxiomInstance instance = random_instance(axiom, rng, config);
        Verdict verdict = check_axiom(instance, fn);
        ++cell.trials;
        if (!verdict.passed) {
          cell.violation_found = true;
          cell.witness = verdict.witness;
          cell.counterexample = std::move(instance);
          break;
        }
      }
      matrix.cells.push_back(std::move(cell));
    }
  }
  return matrix;
}

// ---- JSON fixtures -------------------------------------------------------

namespace {

json problem_to_json(const HighwayProblem& p) {
  json j;
  j["agents"] = p.agents;
  j["sections"] = p.sections;
  json costs = json::object();
  for (const auto& [t, c] : p.cost) costs[t] = format_fraction(c);
  j["costs"] = std::move(costs);
  json usage = json::object();
  for (const auto& [i, sections] : p.usage) {
    usage[i] = std::vector<SectionId>(sections.begin(), sections.end());
  }
  j["usage"] = std::move(usage);
  return j;
}

HighwayProblem problem_from_json(const json& j) {
  HighwayProblem p;
  p.agents = j.at("agents").get<std::vector<AgentId>>();
  p.sections = j.at("sections").get<std::vector<SectionId>>();
  for (const auto& [t, c] : j.at("costs").items()) p.cost[t] = parse_money(c.get<std::string>());
  for (const auto& [i, sections] : j.at("usage").items()) {
    auto list = sections.get<std::vector<SectionId>>();
    p.usage[i] = std::set<SectionId>(list.begin(), list.end());
  }
  return p;
}

json structure_to_json(const CoalitionStructure& s) {
  json j = json::array();
  for (const auto& block : s.blocks()) j.push_back(block);
  return j;
}

CoalitionStructure structure_from_json(const json& j) {
  return CoalitionStructure(j.get<std::vector<std::vector<AgentId>>>());
}

}  // namespace

std::string instance_to_json(const AxiomInstance& instance) {
  json j;
  j["axiom"] = axiom_name(instance.axiom);
  j["problem"] = problem_to_json(instance.problem);
  j["structure"] = structure_to_json(instance.structure);
  if (instance.problem2) j["problem2"] = problem_to_json(*instance.problem2);
  if (instance.structure2) j["structure2"] = structure_to_json(*instance.structure2);
  if (instance.focus_agent) j["focus_agent"] = *instance.focus_agent;
  if (instance.focus_union) j["focus_union"] = *instance.focus_union;
  if (instance.focus_union2) j["focus_union2"] = *instance.focus_union2;
  if (instance.new_section) j["new_section"] = *instance.new_section;
  return j.dump(2);
}

AxiomInstance instance_from_json(const std::string& text) {
  json j = json::parse(text);
  AxiomInstance instance;
  instance.axiom = parse_axiom(j.at("axiom").get<std::string>());
  instance.problem = problem_from_json(j.at("problem"));
  instance.structure = structure_from_json(j.at("structure"));
  if (j.contains("problem2")) instance.problem2 = problem_from_json(j.at("problem2"));
  if (j.contains("structure2")) instance.structure2 = structure_from_json(j.at("structure2"));
  if (j.contains("focus_agent")) instance.focus_agent = j.at("focus_agent").get<AgentId>();
  if (j.contains("focus_union")) instance.focus_union = j.at("focus_union").get<int>();
  if (j.contains("focus_union2")) instance.focus_union2 = j.at("focus_union2").get<int>();
  if (j.contains("new_section")) instance.new_section = j.at("new_section").get<SectionId>();
  return instance;
}

}  // namespace tollgame
