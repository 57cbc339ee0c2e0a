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

#include "tollgame/generator.hpp"

#include <algorithm>

namespace tollgame {

HighwayProblem random_problem(Rng& rng, const GeneratorConfig& config) {
  HighwayProblem p;
  int n = rng.range(1, config.max_agents);
  int k = rng.range(1, config.max_sections);
  for (int t = 0; t < k; ++t) p.sections.push_back("t" + std::to_string(t + 1));
  for (int i = 0; i < n; ++i) p.agents.push_back("a" + std::to_string(i + 1));

  for (const auto& t : p.sections) {
    if (config.allow_zero_cost && rng.chance(5)) {
      p.cost[t] = Money(0);
    } else {
      p.cost[t] = Money(rng.range(0, config.max_cost * 100), 100);
    }
  }
  for (const auto& i : p.agents) {
    auto& usage = p.usage[i];
    for (const auto& t : p.sections) {
      if (rng.chance(40)) usage.insert(t);
    }
    if (usage.empty()) usage.insert(p.sections[rng.below(k)]);
  }
  // Cover sections nobody picked.
  std::set<SectionId> covered;
  for (const auto& [i, usage] : p.usage) covered.insert(usage.begin(), usage.end());
  for (const auto& t : p.sections) {
    if (!covered.count(t)) p.usage[p.agents[rng.below(n)]].insert(t);
  }
  return p;
}

CoalitionStructure random_structure(Rng& rng, const HighwayProblem& problem) {
  int n = static_cast<int>(problem.agents.size());
  int blocks = rng.range(1, n);
  std::vector<std::vector<AgentId>> partition(blocks);
  // Guarantee no empty block: first `blocks` agents seed distinct blocks.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  for (int i = 0; i < n; ++i) {
    int b = i < blocks ? i : rng.below(blocks);
    partition[b].push_back(problem.agents[order[i]]);
  }
  return CoalitionStructure(std::move(partition));
}

std::set<int> random_merge(Rng& rng, const CoalitionStructure& structure) {
  int unions = structure.size();
  std::set<int> merge;
  int size = rng.range(2, unions);
  while (static_cast<int>(merge.size()) < size) merge.insert(rng.below(unions));
  return merge;
}

}  // namespace tollgame
