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
// Brute-force computation of allocation rules on explicit TU cost games.
// Everything here is exponential in the player count and exists to verify
// the closed forms; it is not a production path.

#ifndef TOLLGAME_ORACLE_HPP
#define TOLLGAME_ORACLE_HPP

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "tollgame/model.hpp"

namespace tollgame {

inline constexpr int kDefaultAgentCap = 12;

/// Explicit cost TU game: players plus the full characteristic table over
/// all 2^n coalitions (bitmask-indexed, position k = players[k]).
struct TUGame {
  std::vector<AgentId> players;
  std::vector<Money> charfn;  // size 1 << n, charfn[0] == 0

  int n() const { return static_cast<int>(players.size()); }
  const Money& cost(std::uint32_t mask) const { return charfn[mask]; }
  void check() const;  // table size and c(empty)=0
};

/// Tabulates the cost game associated with a highway problem. Errors if the
/// agent count exceeds `cap`.
TUGame to_tu_game(const HighwayProblem& problem, int cap = kDefaultAgentCap);

/// Exhaustive check of the defining inequalities.
bool is_concave(const TUGame& game);
bool is_monotone(const TUGame& game);

Allocation shapley(const TUGame& game);

/// Tijs value via utopia/lower payoffs; the game must be concave.
/// A vanishing efficiency denominator returns the lower payoffs with
/// degenerate_alpha set.
Allocation tijs(const TUGame& game);

/// Owen value via the double sum over outside-union coalitions and
/// within-union coalitions.
Allocation owen(const TUGame& game, const CoalitionStructure& structure);

/// Coalitional Tijs value: Tijs on the quotient game for union totals, then
/// the union-restricted utopia/lower payoff machinery inside each union.
Allocation coalitional_tijs(const TUGame& game, const CoalitionStructure& structure);

/// Shapley-Tijs reference: union totals from brute-force Owen, split inside
/// each union proportionally to shared-section costs.
Allocation shapley_tijs_ref(const HighwayProblem& problem, const CoalitionStructure& structure,
                            int cap = kDefaultAgentCap);

std::set<AgentId> null_players(const TUGame& game);
std::set<std::pair<AgentId, AgentId>> symmetric_pairs(const TUGame& game);

}  // namespace tollgame

#endif  // TOLLGAME_ORACLE_HPP
