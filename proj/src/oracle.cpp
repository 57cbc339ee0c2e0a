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

#include "tollgame/oracle.hpp"

#include <sstream>
#include <stdexcept>


namespace tollgame {

namespace {

BigInt factorial(int n) {
  BigInt r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  BigInt r(1);
  for (int i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// Iterate sub-masks of `mask` (including 0 and mask itself).
template <typename F>
void for_each_submask(std::uint32_t mask, F&& fn) {
  std::uint32_t sub = mask;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

struct UnionMasks {
  std::vector<std::uint32_t> block_mask;  // per union
  std::vector<int> union_of;              // per player
};

UnionMasks union_masks(const TUGame& game, const CoalitionStructure& structure) {
  std::map<AgentId, int> index;
  for (int k = 0; k < game.n(); ++k) index[game.players[k]] = k;
  UnionMasks um;
  um.block_mask.assign(structure.size(), 0);
  um.union_of.assign(game.n(), -1);
  int assigned = 0;
  for (int a = 0; a < structure.size(); ++a) {
    for (const auto& i : structure.blocks()[a]) {
      auto it = index.find(i);
      if (it == index.end()) {
        throw std::invalid_argument("union member " + i + " is not a player of the game");
      }
      um.block_mask[a] |= (1u << it->second);
      um.union_of[it->second] = a;
      ++assigned;
    }
  }
  if (assigned != game.n()) {
    throw std::invalid_argument("coalition structure does not cover all players");
  }
  return um;
}

// Tijs machinery on an anonymous characteristic table.
struct TijsParts {
  std::vector<Money> utopia;   // M_i
  std::vector<Money> lower;    // m_i
};

TijsParts tijs_parts(const std::vector<Money>& charfn, int n) {
  std::uint32_t full = (n >= 32) ? 0 : ((1u << n) - 1);
  TijsParts parts;
  parts.utopia.resize(n);
  parts.lower.resize(n);
  for (int i = 0; i < n; ++i) {
    parts.utopia[i] = charfn[full] - charfn[full & ~(1u << i)];
  }
  for (int i = 0; i < n; ++i) {
    bool first = true;
    Money best(0);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      if (!(mask & (1u << i))) continue;
      Money value = charfn[mask];
      for (int j = 0; j < n; ++j) {
        if (j != i && (mask & (1u << j))) value -= parts.utopia[j];
      }
      if (first || value < best) {
        best = value;
        first = false;
      }
    }
    parts.lower[i] = best;
  }
  return parts;
}

// m + alpha*(M - m) with alpha from efficiency over the given total.
// Returns {vector, degenerate}.
std::pair<std::vector<Money>, bool> compromise(const TijsParts& parts, const Money& total) {
  Money sum_lower(0), sum_span(0);
  for (size_t i = 0; i < parts.lower.size(); ++i) {
    sum_lower += parts.lower[i];
    sum_span += parts.utopia[i] - parts.lower[i];
  }
  if (sum_span == 0) {
    return {parts.lower, true};
  }
  Money alpha = (total - sum_lower) / sum_span;
  std::vector<Money> out(parts.lower.size());
  for (size_t i = 0; i < parts.lower.size(); ++i) {
    out[i] = parts.lower[i] + alpha * (parts.utopia[i] - parts.lower[i]);
  }
  return {out, false};
}

}  // namespace

void TUGame::check() const {
  if (n() > 31) throw std::invalid_argument("too many players for an explicit table");
  if (charfn.size() != (static_cast<size_t>(1) << n())) {
    throw std::invalid_argument("characteristic table has the wrong size");
  }
  if (charfn[0] != 0) throw std::invalid_argument("c(empty) must be 0");
}

TUGame to_tu_game(const HighwayProblem& problem, int cap) {
  ProblemIndex ix = index_problem(problem);
  if (ix.agent_count() > cap) {
    std::ostringstream msg;
    msg << "agent count " << ix.agent_count() << " exceeds the oracle cap " << cap;
    throw std::invalid_argument(msg.str());
  }
  int n = ix.agent_count();
  TUGame game;
  game.players = problem.agents;
  game.charfn.assign(static_cast<size_t>(1) << n, Money(0));

  // per-agent section bitmask (section count can exceed 64 in principle,
  // but oracle instances are small; use per-agent index lists directly)
  std::vector<char> used(ix.section_count(), 0);
  for (std::uint32_t mask = 1; mask < game.charfn.size(); ++mask) {
    std::fill(used.begin(), used.end(), 0);
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        for (int t : ix.usage[i]) used[t] = 1;
      }
    }
    Money total(0);
    for (int t = 0; t < ix.section_count(); ++t) {
      if (used[t]) total += ix.cost[t];
    }
    game.charfn[mask] = total;
  }
  return game;
}

bool is_concave(const TUGame& game) {
  game.check();
  int n = game.n();
  std::uint32_t full = (1u << n) - 1;
  for (int i = 0; i < n; ++i) {
    std::uint32_t rest = full & ~(1u << i);
    bool ok = true;
    for_each_submask(rest, [&](std::uint32_t t_mask) {
      if (!ok) return;
      Money margin_t = game.cost(t_mask | (1u << i)) - game.cost(t_mask);
      for_each_submask(t_mask, [&](std::uint32_t s_mask) {
        if (!ok) return;
        Money margin_s = game.cost(s_mask | (1u << i)) - game.cost(s_mask);
        if (margin_t > margin_s) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

bool is_monotone(const TUGame& game) {
  game.check();
  std::uint32_t size = static_cast<std::uint32_t>(game.charfn.size());
  // Adding one player never decreases cost <=> monotone on the lattice.
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    for (int i = 0; i < game.n(); ++i) {
      if (!(mask & (1u << i)) && game.cost(mask | (1u << i)) < game.cost(mask)) return false;
    }
  }
  return true;
}

Allocation shapley(const TUGame& game) {
  game.check();
  int n = game.n();
  BigInt n_fact = factorial(n);
  std::vector<BigInt> fact(n + 1);
  for (int k = 0; k <= n; ++k) fact[k] = factorial(k);

  Allocation out;
  std::uint32_t full = (1u << n) - 1;
  for (int i = 0; i < n; ++i) {
    Money phi(0);
    std::uint32_t rest = full & ~(1u << i);
    for_each_submask(rest, [&](std::uint32_t s_mask) {
      int s = __builtin_popcount(s_mask);
      Money weight(fact[s] * fact[n - s - 1], n_fact);
      phi += weight * (game.cost(s_mask | (1u << i)) - game.cost(s_mask));
    });
    out.values[game.players[i]] = phi;
  }
  return out;
}

Allocation tijs(const TUGame& game) {
  game.check();
  if (!is_concave(game)) throw std::invalid_argument("Tijs value requires a concave game");
  TijsParts parts = tijs_parts(game.charfn, game.n());
  auto [vec, degenerate] = compromise(parts, game.charfn.back());
  Allocation out;
  out.degenerate_alpha = degenerate;
  for (int i = 0; i < game.n(); ++i) out.values[game.players[i]] = vec[i];
  return out;
}

Allocation owen(const TUGame& game, const CoalitionStructure& structure) {
  game.check();
  UnionMasks um = union_masks(game, structure);
  int n = game.n();
  int unions = structure.size();

  Allocation out;
  out.union_totals = std::vector<Money>(unions, Money(0));
  for (int i = 0; i < n; ++i) {
    int a = um.union_of[i];
    std::uint32_t inside = um.block_mask[a] & ~(1u << i);
    int p_a = __builtin_popcount(um.block_mask[a]);

    std::uint32_t outside_unions = ((1u << unions) - 1) & ~(1u << a);
    Money phi(0);
    for_each_submask(outside_unions, [&](std::uint32_t h_mask) {
      int h = __builtin_popcount(h_mask);
      std::uint32_t r_mask = 0;
      for (int b = 0; b < unions; ++b) {
        if (h_mask & (1u << b)) r_mask |= um.block_mask[b];
      }
      Money outer_weight(BigInt(1), BigInt(unions) * binomial(unions - 1, h));
      for_each_submask(inside, [&](std::uint32_t s_mask) {
        int s = __builtin_popcount(s_mask);
        Money weight = outer_weight / Money(BigInt(p_a) * binomial(p_a - 1, s));
        std::uint32_t base = r_mask | s_mask;
        phi += weight * (game.cost(base | (1u << i)) - game.cost(base));
      });
    });
    out.values[game.players[i]] = phi;
    (*out.union_totals)[a] += phi;
  }
  return out;
}

Allocation coalitional_tijs(const TUGame& game, const CoalitionStructure& structure) {
  game.check();
  if (!is_concave(game)) {
    throw std::invalid_argument("coalitional Tijs value requires a concave game");
  }
  UnionMasks um = union_masks(game, structure);
  int n = game.n();
  int unions = structure.size();
  std::uint32_t full = (1u << n) - 1;

  // Quotient game over unions, then its Tijs value for the union totals.
  std::vector<Money> quotient_fn(static_cast<size_t>(1) << unions, Money(0));
  for (std::uint32_t h_mask = 1; h_mask < quotient_fn.size(); ++h_mask) {
    std::uint32_t members = 0;
    for (int b = 0; b < unions; ++b) {
      if (h_mask & (1u << b)) members |= um.block_mask[b];
    }
    quotient_fn[h_mask] = game.cost(members);
  }
  TijsParts quotient_parts = tijs_parts(quotient_fn, unions);
  auto [union_totals, quotient_degenerate] = compromise(quotient_parts, game.cost(full));

  // Within each union: utopia payoffs as usual, lower payoffs minimized over
  // the family P(a) = unions of whole outside blocks plus a subset of P_a.
  std::vector<Money> utopia(n);
  for (int i = 0; i < n; ++i) utopia[i] = game.cost(full) - game.cost(full & ~(1u << i));

  Allocation out;
  out.degenerate_alpha = quotient_degenerate;
  out.union_totals = std::vector<Money>(unions, Money(0));
  for (int a = 0; a < unions; ++a) {
    std::uint32_t block = um.block_mask[a];
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (block & (1u << i)) members.push_back(i);
    }
    std::uint32_t outside_unions = ((1u << unions) - 1) & ~(1u << a);

    std::vector<Money> lower(members.size());
    for (size_t k = 0; k < members.size(); ++k) {
      int i = members[k];
      bool first = true;
      Money best(0);
      for_each_submask(outside_unions, [&](std::uint32_t l_mask) {
        std::uint32_t r_mask = 0;
        for (int b = 0; b < unions; ++b) {
          if (l_mask & (1u << b)) r_mask |= um.block_mask[b];
        }
        for_each_submask(block & ~(1u << i), [&](std::uint32_t t_mask) {
          std::uint32_t s_mask = r_mask | t_mask | (1u << i);
          Money value = game.cost(s_mask);
          for (int j = 0; j < n; ++j) {
            if (j != i && (s_mask & (1u << j))) value -= utopia[j];
          }
          if (first || value < best) {
            best = value;
            first = false;
          }
        });
      });
      lower[k] = best;
    }

    Money sum_lower(0), sum_span(0);
    for (size_t k = 0; k < members.size(); ++k) {
      sum_lower += lower[k];
      sum_span += utopia[members[k]] - lower[k];
    }
    if (sum_span == 0) {
      out.degenerate_alpha = true;
      for (size_t k = 0; k < members.size(); ++k) {
        out.values[game.players[members[k]]] = lower[k];
        (*out.union_totals)[a] += lower[k];
      }
    } else {
      Money alpha = (union_totals[a] - sum_lower) / sum_span;
      for (size_t k = 0; k < members.size(); ++k) {
        Money v = lower[k] + alpha * (utopia[members[k]] - lower[k]);
        out.values[game.players[members[k]]] = v;
        (*out.union_totals)[a] += v;
      }
    }
  }
  return out;
}

Allocation shapley_tijs_ref(const HighwayProblem& problem, const CoalitionStructure& structure,
                            int cap) {
  TUGame game = to_tu_game(problem, cap);
  Allocation owen_alloc = owen(game, structure);
  SectionClassification cls = classify_sections(problem);

  Allocation out;
  out.union_totals = std::vector<Money>(structure.size(), Money(0));
  for (int a = 0; a < structure.size(); ++a) {
    const auto& block = structure.blocks()[a];
    Money psi_a = (*owen_alloc.union_totals)[a];
    Money ce_a(0), cs_a(0);
    for (const auto& i : block) {
      ce_a += cls.exclusive_cost.at(i);
      cs_a += cls.shared_cost.at(i);
    }
    for (const auto& i : block) {
      Money v = cls.exclusive_cost.at(i);
      if (cs_a != 0) {
        v += (psi_a - ce_a) * cls.shared_cost.at(i) / cs_a;
      }
      out.values[i] = v;
      (*out.union_totals)[a] += v;
    }
  }
  return out;
}

std::set<AgentId> null_players(const TUGame& game) {
  game.check();
  std::set<AgentId> result;
  std::uint32_t full = (1u << game.n()) - 1;
  for (int i = 0; i < game.n(); ++i) {
    bool is_null = true;
    std::uint32_t rest = full & ~(1u << i);
    for_each_submask(rest, [&](std::uint32_t s_mask) {
      if (is_null && game.cost(s_mask | (1u << i)) != game.cost(s_mask)) is_null = false;
    });
    if (is_null) result.insert(game.players[i]);
  }
  return result;
}

std::set<std::pair<AgentId, AgentId>> symmetric_pairs(const TUGame& game) {
  game.check();
  std::set<std::pair<AgentId, AgentId>> result;
  std::uint32_t full = (1u << game.n()) - 1;
  for (int i = 0; i < game.n(); ++i) {
    for (int j = i + 1; j < game.n(); ++j) {
      bool symmetric = true;
      std::uint32_t rest = full & ~(1u << i) & ~(1u << j);
      for_each_submask(rest, [&](std::uint32_t s_mask) {
        if (symmetric && game.cost(s_mask | (1u << i)) != game.cost(s_mask | (1u << j))) {
          symmetric = false;
        }
      });
      if (symmetric) result.insert({game.players[i], game.players[j]});
    }
  }
  return result;
}

}  // namespace tollgame
