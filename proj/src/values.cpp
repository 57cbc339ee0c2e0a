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

#include "tollgame/values.hpp"

#include <algorithm>
#include <stdexcept>

namespace tollgame {

namespace {

std::string union_key(int index) { return "u" + std::to_string(index); }

// Proportional split of a union total over members' shared costs, with the
// exclusive part billed at face value. The 0/0 corner (no shared cost in
// the union) contributes nothing; the residual vanishes with it.
struct WithinSplit {
  Money ratio;  // (total - c^e(a)) / sum of members' c^s
  bool zero = false;
};

WithinSplit within_split(const Money& union_total, const Money& ce_a, const Money& cs_sum) {
  WithinSplit split;
  if (cs_sum == 0) {
    split.zero = true;
    split.ratio = Money(0);
  } else {
    split.ratio = (union_total - ce_a) / cs_sum;
  }
  return split;
}

}  // namespace

ValueKind parse_value_kind(const std::string& name) {
  if (name == "shapley") return ValueKind::Shapley;
  if (name == "tijs") return ValueKind::Tijs;
  if (name == "owen") return ValueKind::Owen;
  if (name == "coalitional-tijs") return ValueKind::CoalitionalTijs;
  if (name == "shapley-tijs") return ValueKind::ShapleyTijs;
  throw std::invalid_argument("unknown value: " + name);
}

std::string value_kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::Shapley: return "shapley";
    case ValueKind::Tijs: return "tijs";
    case ValueKind::Owen: return "owen";
    case ValueKind::CoalitionalTijs: return "coalitional-tijs";
    case ValueKind::ShapleyTijs: return "shapley-tijs";
  }
  return "?";
}

bool is_coalitional(ValueKind kind) {
  return kind == ValueKind::Owen || kind == ValueKind::CoalitionalTijs ||
         kind == ValueKind::ShapleyTijs;
}

ExplicitValueResult shapley_closed(const HighwayProblem& problem) {
  ProblemIndex ix = index_problem(problem);
  ExplicitValueResult result;
  for (const auto& t : problem.sections) {
    int ti = ix.section_index.at(t);
    result.tolls.section[t] = ix.cost[ti] / Money(static_cast<int>(ix.users[ti].size()));
  }
  for (const auto& i : problem.agents) {
    Money v(0);
    for (const auto& t : problem.usage.at(i)) v += result.tolls.section.at(t);
    result.allocation.values[i] = v;
  }
  return result;
}

ExplicitValueResult tijs_closed(const HighwayProblem& problem) {
  SectionClassification cls = classify_sections(problem);
  Money denom(0);
  for (const auto& i : problem.agents) denom += cls.shared_cost.at(i);
  Money ratio = denom == 0 ? Money(0) : cls.shared_total / denom;

  ExplicitValueResult result;
  for (const auto& t : problem.sections) {
    result.tolls.section[t] =
        cls.exclusive.count(t) ? problem.cost.at(t) : ratio * problem.cost.at(t);
  }
  for (const auto& i : problem.agents) {
    result.allocation.values[i] = cls.exclusive_cost.at(i) + ratio * cls.shared_cost.at(i);
  }
  return result;
}

ExplicitValueResult owen_closed(const HighwayProblem& problem,
                                const CoalitionStructure& structure) {
  QuotientView qv = quotient(problem, structure);
  ExplicitValueResult result;
  result.tolls.per_union = true;
  result.allocation.union_totals = std::vector<Money>(structure.size(), Money(0));

  for (const auto& t : problem.sections) {
    Money cost = problem.cost.at(t);
    int unions_on_t = static_cast<int>(qv.using_unions.at(t).size());
    for (int a : qv.using_unions.at(t)) {
      int members = qv.member_counts.at(t).at(a);
      result.tolls.by_union[union_key(a)][t] =
          cost / (Money(unions_on_t) * Money(members));
    }
  }
  for (int a = 0; a < structure.size(); ++a) {
    for (const auto& i : structure.blocks()[a]) {
      Money v(0);
      for (const auto& t : problem.usage.at(i)) v += result.tolls.by_union.at(union_key(a)).at(t);
      result.allocation.values[i] = v;
      (*result.allocation.union_totals)[a] += v;
    }
  }
  return result;
}

namespace {

// Quotient-level Tijs union totals: exclusive cost plus the shared pool
// split in proportion to each union's shared cost. A zero shared-cost sum
// forces all shared sections to zero cost, so the pool term vanishes.
std::vector<Money> quotient_tijs_totals(const QuotientView& qv) {
  Money denom(0);
  for (const auto& c : qv.shared_cost) denom += c;
  std::vector<Money> totals(qv.shared_cost.size());
  for (size_t a = 0; a < totals.size(); ++a) {
    totals[a] = qv.exclusive_cost[a];
    if (denom != 0) totals[a] += qv.shared_total * qv.shared_cost[a] / denom;
  }
  return totals;
}

ExplicitValueResult split_union_totals(const HighwayProblem& problem,
                                       const CoalitionStructure& structure,
                                       const std::vector<Money>& union_totals) {
  SectionClassification cls = classify_sections(problem);
  ExplicitValueResult result;
  result.tolls.per_union = true;
  result.allocation.union_totals = std::vector<Money>(structure.size(), Money(0));

  for (int a = 0; a < structure.size(); ++a) {
    const auto& block = structure.blocks()[a];
    Money ce_a(0), cs_sum(0);
    for (const auto& i : block) {
      ce_a += cls.exclusive_cost.at(i);
      cs_sum += cls.shared_cost.at(i);
    }
    WithinSplit split = within_split(union_totals[a], ce_a, cs_sum);

    auto& tolls = result.tolls.by_union[union_key(a)];
    std::set<SectionId> block_sections;
    for (const auto& i : block) {
      block_sections.insert(problem.usage.at(i).begin(), problem.usage.at(i).end());
    }
    for (const auto& t : block_sections) {
      tolls[t] = cls.exclusive.count(t) ? problem.cost.at(t) : split.ratio * problem.cost.at(t);
    }
    for (const auto& i : block) {
      Money v = cls.exclusive_cost.at(i) + split.ratio * cls.shared_cost.at(i);
      result.allocation.values[i] = v;
      (*result.allocation.union_totals)[a] += v;
    }
  }
  return result;
}

}  // namespace

ExplicitValueResult coalitional_tijs_closed(const HighwayProblem& problem,
                                            const CoalitionStructure& structure) {
  QuotientView qv = quotient(problem, structure);
  return split_union_totals(problem, structure, quotient_tijs_totals(qv));
}

ExplicitValueResult shapley_tijs_closed(const HighwayProblem& problem,
                                        const CoalitionStructure& structure) {
  QuotientView qv = quotient(problem, structure);
  std::vector<Money> owen_totals(structure.size(), Money(0));
  for (int a = 0; a < structure.size(); ++a) {
    for (const auto& t : qv.union_usage[a]) {
      owen_totals[a] +=
          problem.cost.at(t) / Money(static_cast<int>(qv.using_unions.at(t).size()));
    }
  }
  return split_union_totals(problem, structure, owen_totals);
}

ExplicitValueResult compute_value(ValueKind kind, const HighwayProblem& problem,
                                  const CoalitionStructure& structure) {
  switch (kind) {
    case ValueKind::Shapley: return shapley_closed(problem);
    case ValueKind::Tijs: return tijs_closed(problem);
    case ValueKind::Owen: return owen_closed(problem, structure);
    case ValueKind::CoalitionalTijs: return coalitional_tijs_closed(problem, structure);
    case ValueKind::ShapleyTijs: return shapley_tijs_closed(problem, structure);
  }
  throw std::logic_error("unreachable");
}

Money AggregatedProblem::total_cost() const {
  Money total(0);
  for (const auto& [t, c] : cost) total += c;
  return total;
}

void AggregatedProblem::check() const {
  if (sections.empty()) throw std::invalid_argument("aggregated problem has no sections");
  std::set<SectionId> section_set;
  for (const auto& t : sections) {
    if (!section_set.insert(t).second) throw std::invalid_argument("duplicate section " + t);
    auto it = cost.find(t);
    if (it == cost.end()) throw std::invalid_argument("missing cost for section " + t);
    if (it->second < 0) throw std::invalid_argument("negative cost for section " + t);
  }
  std::map<SectionId, long long> users;
  std::set<std::string> labels;
  for (const auto& p : profiles) {
    if (p.multiplicity <= 0) {
      throw std::invalid_argument("profile " + p.label + " has non-positive multiplicity");
    }
    if (p.usage.empty()) throw std::invalid_argument("profile " + p.label + " has empty usage");
    if (!labels.insert(p.label).second) {
      throw std::invalid_argument("duplicate profile label " + p.label);
    }
    for (const auto& t : p.usage) {
      if (!section_set.count(t)) {
        throw std::invalid_argument("profile " + p.label + " uses unknown section " + t);
      }
      users[t] += p.multiplicity;
    }
  }
  for (const auto& t : sections) {
    if (users[t] == 0) throw std::invalid_argument("uncovered section " + t);
  }
}

std::pair<HighwayProblem, CoalitionStructure> AggregatedProblem::expand() const {
  check();
  HighwayProblem problem;
  problem.sections = sections;
  problem.cost = cost;
  std::map<std::string, std::vector<AgentId>> labelled_blocks;
  std::vector<std::vector<AgentId>> own_blocks;
  std::vector<std::string> label_order;
  for (const auto& p : profiles) {
    for (long long k = 0; k < p.multiplicity; ++k) {
      AgentId id = p.label + "#" + std::to_string(k);
      problem.agents.push_back(id);
      problem.usage[id] = p.usage;
      if (p.union_label) {
        if (!labelled_blocks.count(*p.union_label)) label_order.push_back(*p.union_label);
        labelled_blocks[*p.union_label].push_back(id);
      } else {
        own_blocks.push_back({id});
      }
    }
  }
  std::vector<std::vector<AgentId>> blocks;
  for (const auto& label : label_order) blocks.push_back(labelled_blocks.at(label));
  for (auto& b : own_blocks) blocks.push_back(std::move(b));
  return {std::move(problem), CoalitionStructure(std::move(blocks))};
}

Money AggregatedValueResult::total(const AggregatedProblem& problem) const {
  Money sum(0);
  for (size_t p = 0; p < per_vehicle.size(); ++p) {
    sum += per_vehicle[p] * Money(problem.profiles[p].multiplicity);
  }
  return sum;
}

namespace {

// Multiplicity-weighted counting for the aggregated closed forms.
struct AggCounts {
  std::map<SectionId, Money> users;          // |N_t|
  std::map<SectionId, Money> unions;         // |script-A_t|
  std::set<SectionId> agent_exclusive;       // K^e (one user)
  std::set<SectionId> quotient_exclusive;    // K_P^e (one union)
  // explicit unions
  std::vector<std::string> union_labels;
  std::map<std::string, std::map<SectionId, Money>> union_members;  // |N_t^a|
  std::map<std::string, std::set<SectionId>> union_usage;           // T(P_a)
  // agent-level cost scalars per profile
  std::vector<Money> ce, cs;
  Money shared_total;  // c^s(N)
  Money cs_weighted;   // sum over all vehicles of c^s(i)
  // quotient-level scalars
  std::map<std::string, Money> q_ce, q_cs;  // per explicit union
  std::vector<Money> own_q_ce, own_q_cs;    // per own-union profile (single vehicle)
  Money q_shared_total;                     // c_P^s(M)
  Money q_cs_sum;                           // sum over all unions of c_P^s(b)
};

AggCounts count(const AggregatedProblem& problem) {
  problem.check();
  AggCounts c;
  for (const auto& p : problem.profiles) {
    Money mult(p.multiplicity);
    for (const auto& t : p.usage) {
      c.users[t] += mult;
      if (p.union_label) {
        auto [it, inserted] = c.union_members[*p.union_label].emplace(t, Money(0));
        it->second += mult;
        c.union_usage[*p.union_label].insert(t);
      } else {
        c.unions[t] += mult;  // each vehicle is its own union
      }
    }
    if (p.union_label &&
        std::find(c.union_labels.begin(), c.union_labels.end(), *p.union_label) ==
            c.union_labels.end()) {
      c.union_labels.push_back(*p.union_label);
    }
  }
  for (const auto& [label, usage] : c.union_usage) {
    for (const auto& t : usage) c.unions[t] += 1;
  }
  for (const auto& t : problem.sections) {
    if (c.users.at(t) == 1) c.agent_exclusive.insert(t);
    if (c.unions.at(t) == 1) c.quotient_exclusive.insert(t);
    if (c.users.at(t) > 1) c.shared_total += problem.cost.at(t);
    if (c.unions.at(t) > 1) c.q_shared_total += problem.cost.at(t);
  }
  c.ce.resize(problem.profiles.size());
  c.cs.resize(problem.profiles.size());
  c.own_q_ce.resize(problem.profiles.size());
  c.own_q_cs.resize(problem.profiles.size());
  for (size_t p = 0; p < problem.profiles.size(); ++p) {
    const auto& profile = problem.profiles[p];
    Money ce(0), cs(0), qce(0), qcs(0);
    for (const auto& t : profile.usage) {
      const Money& cost = problem.cost.at(t);
      if (c.agent_exclusive.count(t)) ce += cost; else cs += cost;
      if (c.quotient_exclusive.count(t)) qce += cost; else qcs += cost;
    }
    c.ce[p] = ce;
    c.cs[p] = cs;
    c.cs_weighted += cs * Money(profile.multiplicity);
    if (!profile.union_label) {
      c.own_q_ce[p] = qce;
      c.own_q_cs[p] = qcs;
      c.q_cs_sum += qcs * Money(profile.multiplicity);
    }
  }
  for (const auto& [label, usage] : c.union_usage) {
    Money qce(0), qcs(0);
    for (const auto& t : usage) {
      const Money& cost = problem.cost.at(t);
      if (c.quotient_exclusive.count(t)) qce += cost; else qcs += cost;
    }
    c.q_ce[label] = qce;
    c.q_cs[label] = qcs;
    c.q_cs_sum += qcs;
  }
  return c;
}

}  // namespace

AggregatedValueResult shapley_closed(const AggregatedProblem& problem) {
  AggCounts counts = count(problem);
  AggregatedValueResult result;
  for (const auto& t : problem.sections) {
    result.tolls.section[t] = problem.cost.at(t) / counts.users.at(t);
  }
  for (const auto& p : problem.profiles) {
    Money v(0);
    for (const auto& t : p.usage) v += result.tolls.section.at(t);
    result.per_vehicle.push_back(v);
    result.group_totals[p.union_label.value_or(p.label)] += v * Money(p.multiplicity);
  }
  return result;
}

AggregatedValueResult tijs_closed(const AggregatedProblem& problem) {
  AggCounts counts = count(problem);
  Money ratio = counts.cs_weighted == 0 ? Money(0) : counts.shared_total / counts.cs_weighted;
  AggregatedValueResult result;
  for (const auto& t : problem.sections) {
    result.tolls.section[t] = counts.agent_exclusive.count(t)
                                  ? problem.cost.at(t)
                                  : ratio * problem.cost.at(t);
  }
  for (size_t p = 0; p < problem.profiles.size(); ++p) {
    Money v = counts.ce[p] + ratio * counts.cs[p];
    result.per_vehicle.push_back(v);
    const auto& profile = problem.profiles[p];
    result.group_totals[profile.union_label.value_or(profile.label)] +=
        v * Money(profile.multiplicity);
  }
  return result;
}

AggregatedValueResult owen_closed(const AggregatedProblem& problem) {
  AggCounts counts = count(problem);
  AggregatedValueResult result;
  result.tolls.per_union = true;
  for (size_t p = 0; p < problem.profiles.size(); ++p) {
    const auto& profile = problem.profiles[p];
    std::string group = profile.union_label.value_or(profile.label);
    auto& tolls = result.tolls.by_union[group];
    Money v(0);
    for (const auto& t : profile.usage) {
      Money members = profile.union_label ? counts.union_members.at(*profile.union_label).at(t)
                                          : Money(1);
      Money toll = problem.cost.at(t) / (counts.unions.at(t) * members);
      tolls[t] = toll;
      v += toll;
    }
    result.per_vehicle.push_back(v);
    result.group_totals[group] += v * Money(profile.multiplicity);
  }
  return result;
}

namespace {

AggregatedValueResult split_agg_union_totals(const AggregatedProblem& problem,
                                             const AggCounts& counts,
                                             const std::map<std::string, Money>& union_totals,
                                             const std::vector<Money>& own_per_vehicle) {
  AggregatedValueResult result;
  result.tolls.per_union = true;

  // Within-union ratios for explicit unions.
  std::map<std::string, Money> ratio;
  for (const auto& label : counts.union_labels) {
    Money ce_a(0), cs_sum(0);
    for (size_t p = 0; p < problem.profiles.size(); ++p) {
      const auto& profile = problem.profiles[p];
      if (profile.union_label && *profile.union_label == label) {
        ce_a += counts.ce[p] * Money(profile.multiplicity);
        cs_sum += counts.cs[p] * Money(profile.multiplicity);
      }
    }
    ratio[label] = cs_sum == 0 ? Money(0) : (union_totals.at(label) - ce_a) / cs_sum;
  }

  for (size_t p = 0; p < problem.profiles.size(); ++p) {
    const auto& profile = problem.profiles[p];
    if (profile.union_label) {
      const std::string& label = *profile.union_label;
      Money v = counts.ce[p] + ratio.at(label) * counts.cs[p];
      result.per_vehicle.push_back(v);
      result.group_totals[label] += v * Money(profile.multiplicity);
      auto& tolls = result.tolls.by_union[label];
      for (const auto& t : profile.usage) {
        tolls[t] = counts.agent_exclusive.count(t) ? problem.cost.at(t)
                                                   : ratio.at(label) * problem.cost.at(t);
      }
    } else {
      // Singleton unions: the vehicle receives its union total.
      const Money& v = own_per_vehicle[p];
      result.per_vehicle.push_back(v);
      result.group_totals[profile.label] += v * Money(profile.multiplicity);
    }
  }
  return result;
}

}  // namespace

AggregatedValueResult coalitional_tijs_closed(const AggregatedProblem& problem) {
  AggCounts counts = count(problem);
  Money qratio = counts.q_cs_sum == 0 ? Money(0) : counts.q_shared_total / counts.q_cs_sum;

  std::map<std::string, Money> union_totals;
  for (const auto& label : counts.union_labels) {
    union_totals[label] = counts.q_ce.at(label) + qratio * counts.q_cs.at(label);
  }
  std::vector<Money> own(problem.profiles.size(), Money(0));
  for (size_t p = 0; p < problem.profiles.size(); ++p) {
    if (!problem.profiles[p].union_label) {
      own[p] = counts.own_q_ce[p] + qratio * counts.own_q_cs[p];
    }
  }
  AggregatedValueResult result = split_agg_union_totals(problem, counts, union_totals, own);
  // Singleton-union toll entries: exclusive at face value, shared at the
  // quotient ratio.
  for (size_t p = 0; p < problem.profiles.size(); ++p) {
    const auto& profile = problem.profiles[p];
    if (profile.union_label) continue;
    auto& tolls = result.tolls.by_union[profile.label];
    for (const auto& t : profile.usage) {
      tolls[t] = counts.quotient_exclusive.count(t) ? problem.cost.at(t)
                                                    : qratio * problem.cost.at(t);
    }
  }
  return result;
}

AggregatedValueResult shapley_tijs_closed(const AggregatedProblem& problem) {
  AggCounts counts = count(problem);

  std::map<std::string, Money> union_totals;
  for (const auto& label : counts.union_labels) {
    Money psi(0);
    for (const auto& t : counts.union_usage.at(label)) {
      psi += problem.cost.at(t) / counts.unions.at(t);
    }
    union_totals[label] = psi;
  }
  std::vector<Money> own(problem.profiles.size(), Money(0));
  for (size_t p = 0; p < problem.profiles.size(); ++p) {
    const auto& profile = problem.profiles[p];
    if (!profile.union_label) {
      Money psi(0);
      for (const auto& t : profile.usage) psi += problem.cost.at(t) / counts.unions.at(t);
      own[p] = psi;
    }
  }
  AggregatedValueResult result = split_agg_union_totals(problem, counts, union_totals, own);
  for (size_t p = 0; p < problem.profiles.size(); ++p) {
    const auto& profile = problem.profiles[p];
    if (profile.union_label) continue;
    auto& tolls = result.tolls.by_union[profile.label];
    for (const auto& t : profile.usage) {
      tolls[t] = problem.cost.at(t) / counts.unions.at(t);
    }
  }
  return result;
}

AggregatedValueResult compute_value(ValueKind kind, const AggregatedProblem& problem) {
  switch (kind) {
    case ValueKind::Shapley: return shapley_closed(problem);
    case ValueKind::Tijs: return tijs_closed(problem);
    case ValueKind::Owen: return owen_closed(problem);
    case ValueKind::CoalitionalTijs: return coalitional_tijs_closed(problem);
    case ValueKind::ShapleyTijs: return shapley_tijs_closed(problem);
  }
  throw std::logic_error("unreachable");
}

}  // namespace tollgame
