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
// Shared hand-sized instances used across the test suites.

#ifndef TOLLGAME_TESTS_FIXTURES_HPP
#define TOLLGAME_TESTS_FIXTURES_HPP

#include <string>

#include "tollgame/model.hpp"

namespace tollgame::testfix {

// Three agents on three sections with costs (6, 12, 3); agent 1 uses t1,
// agent 2 uses t1+t2, agent 3 uses t2+t3.
inline HighwayProblem fix_a() {
  HighwayProblem p;
  p.agents = {"1", "2", "3"};
  p.sections = {"t1", "t2", "t3"};
  p.cost = {{"t1", Money(6)}, {"t2", Money(12)}, {"t3", Money(3)}};
  p.usage = {{"1", {"t1"}}, {"2", {"t1", "t2"}}, {"3", {"t2", "t3"}}};
  return p;
}

// Three agents on two sections costing 6 each; agents 2 and 3 use both.
inline HighwayProblem fix_b() {
  HighwayProblem p;
  p.agents = {"1", "2", "3"};
  p.sections = {"t1", "t2"};
  p.cost = {{"t1", Money(6)}, {"t2", Money(6)}};
  p.usage = {{"1", {"t1"}}, {"2", {"t1", "t2"}}, {"3", {"t1", "t2"}}};
  return p;
}

// Three agents sharing a single section of cost 6.
inline HighwayProblem fix_c() {
  HighwayProblem p;
  p.agents = {"1", "2", "3"};
  p.sections = {"t"};
  p.cost = {{"t", Money(6)}};
  p.usage = {{"1", {"t"}}, {"2", {"t"}}, {"3", {"t"}}};
  return p;
}

inline CoalitionStructure fix_c_structure() {
  return CoalitionStructure({{"1", "2"}, {"3"}});
}

// 104 agents in singleton unions over two unit-cost sections: agents 1 and 2
// use t1, everyone else uses t2.
inline HighwayProblem fix_d() {
  HighwayProblem p;
  p.sections = {"t1", "t2"};
  p.cost = {{"t1", Money(1)}, {"t2", Money(1)}};
  for (int a = 1; a <= 104; ++a) {
    AgentId id = std::to_string(a);
    p.agents.push_back(id);
    p.usage[id] = {a <= 2 ? "t1" : "t2"};
  }
  return p;
}

inline CoalitionStructure fix_d_structure() {
  std::vector<std::vector<AgentId>> blocks;
  for (int a = 1; a <= 104; ++a) blocks.push_back({std::to_string(a)});
  return CoalitionStructure(std::move(blocks));
}

}  // namespace tollgame::testfix

#endif  // TOLLGAME_TESTS_FIXTURES_HPP
