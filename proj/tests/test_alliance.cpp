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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "tollgame/alliance.hpp"
#include "tollgame/generator.hpp"
#include "tollgame/verification.hpp"

using namespace tollgame;
using namespace tollgame::testfix;

TEST_CASE("owen alliance on a three-way shared section") {
  // Three singleton unions on one section of cost 6; unions 0 and 1 merge.
  HighwayProblem c = fix_c();
  CoalitionStructure s = CoalitionStructure::singletons(c);
  AllianceReport report = owen_alliance(c, s, {0, 1});
  CHECK(report.pre_sum == Money(4));
  CHECK(report.post_total == Money(3));
  CHECK(report.delta == Money(-1));
  CHECK(report.inequality_holds);
  CHECK(report.strict);
  CHECK(report.witnesses == std::vector<SectionId>{"t"});
}

TEST_CASE("owen alliance with disjoint sections is neutral") {
  HighwayProblem p;
  p.agents = {"1", "2"};
  p.sections = {"t1", "t2"};
  p.cost = {{"t1", Money(2)}, {"t2", Money(3)}};
  p.usage = {{"1", {"t1"}}, {"2", {"t2"}}};
  CoalitionStructure s = CoalitionStructure::singletons(p);
  AllianceReport report = owen_alliance(p, s, {0, 1});
  CHECK(report.delta == Money(0));
  CHECK(!report.strict);
  CHECK(report.witnesses.empty());
}

TEST_CASE("owen alliance on the 104-union instance") {
  HighwayProblem d = fix_d();
  CoalitionStructure s = fix_d_structure();
  AllianceReport report = owen_alliance(d, s, {0, 1, 2, 3});
  CHECK(report.pre_sum == Money(1) + Money(2, 102));
  CHECK(report.post_total == Money(1) + Money(1, 101));
  CHECK(report.delta < 0);
  CHECK(report.inequality_holds);
}

TEST_CASE("coalitional tijs alliance on the 104-union instance") {
  HighwayProblem d = fix_d();
  CoalitionStructure s = fix_d_structure();
  AllianceReport report = coalitional_tijs_alliance(d, s, {0, 1, 2, 3});
  CHECK(!report.theorem_applicable);  // t1 becomes exclusive to the alliance
  CHECK(report.pre_sum == Money(1, 13));
  CHECK(report.post_total == Money(102, 101));
  CHECK(report.delta > 0);  // the alliance pays more
}

TEST_CASE("coalitional tijs alliance under the theorem hypothesis") {
  // Unions 0 and 1 merge; the shared section keeps an outside user, so no
  // section becomes exclusive and the inequality binds strictly.
  HighwayProblem c = fix_c();
  CoalitionStructure s = CoalitionStructure::singletons(c);
  AllianceReport report = coalitional_tijs_alliance(c, s, {0, 1});
  CHECK(report.theorem_applicable);
  CHECK(report.pre_sum == Money(4));
  CHECK(report.post_total == Money(3));
  CHECK(report.inequality_holds);
  CHECK(report.strict);
}

TEST_CASE("coalitional tijs alliance with disjoint exclusive sections") {
  HighwayProblem p;
  p.agents = {"1", "2", "3"};
  p.sections = {"t1", "t2", "t3"};
  p.cost = {{"t1", Money(2)}, {"t2", Money(3)}, {"t3", Money(4)}};
  p.usage = {{"1", {"t1"}}, {"2", {"t2"}}, {"3", {"t3"}}};
  CoalitionStructure s = CoalitionStructure::singletons(p);
  AllianceReport report = coalitional_tijs_alliance(p, s, {0, 1});
  CHECK(report.theorem_applicable);  // exclusive stays exclusive, no shared->exclusive flip
  CHECK(report.delta == Money(0));
  CHECK(!report.strict);
}

TEST_CASE("shapley tijs alliance mirrors owen totals") {
  HighwayProblem c = fix_c();
  CoalitionStructure s = CoalitionStructure::singletons(c);
  AllianceReport owen_report = owen_alliance(c, s, {0, 1});
  AllianceReport st_report = shapley_tijs_alliance(c, s, {0, 1});
  CHECK(st_report.value == ValueKind::ShapleyTijs);
  CHECK(st_report.pre_sum == owen_report.pre_sum);
  CHECK(st_report.post_total == owen_report.post_total);
}

TEST_CASE("zero-cost witness sections do not count as strict") {
  // The only section shared inside the merge costs 0: delta must be 0 and
  // the strictness flags must agree.
  HighwayProblem p;
  p.agents = {"1", "2", "3"};
  p.sections = {"free", "t"};
  p.cost = {{"free", Money(0)}, {"t", Money(8)}};
  p.usage = {{"1", {"free"}}, {"2", {"free"}}, {"3", {"free", "t"}}};
  CoalitionStructure s = CoalitionStructure::singletons(p);
  AllianceReport report = owen_alliance(p, s, {0, 1});
  CHECK(report.delta == Money(0));
  CHECK(!report.strict);

  AllianceReport ct = coalitional_tijs_alliance(p, s, {0, 1});
  CHECK(ct.theorem_applicable);
  CHECK(ct.delta == Money(0));
  CHECK(!ct.strict);
}

TEST_CASE("alliance reports agree with recomputed union totals") {
  Rng rng(555);
  GeneratorConfig config;
  for (int trial = 0; trial < 40; ++trial) {
    HighwayProblem p = random_problem(rng, config);
    if (p.agents.size() < 2) continue;
    CoalitionStructure s = random_structure(rng, p);
    if (s.size() < 2) continue;
    std::set<int> merge = random_merge(rng, s);
    CoalitionStructure merged = merge_unions(s, merge);
    AllianceView view = classify_alliance(p, s, merged);

    for (ValueKind kind :
         {ValueKind::Owen, ValueKind::CoalitionalTijs, ValueKind::ShapleyTijs}) {
      AllianceReport report = alliance_report(kind, p, s, merge);
      ValueKind totals_kind = kind == ValueKind::ShapleyTijs ? ValueKind::Owen : kind;
      auto before = compute_value(totals_kind, p, s);
      auto after = compute_value(totals_kind, p, merged);
      Money pre(0);
      for (int a : merge) pre += (*before.allocation.union_totals)[a];
      CHECK(report.pre_sum == pre);
      CHECK(report.post_total == (*after.allocation.union_totals)[view.merged_index]);
      CHECK(report.delta == report.post_total - report.pre_sum);
    }
  }
}

TEST_CASE("alliance theorems hold with exact strictness on random merges") {
  GeneratorConfig config;
  SuiteReport report = alliance_theorem_suite(80, 13579, config);
  CHECK(report.ok());
  if (!report.ok()) {
    for (const auto& f : report.failures) MESSAGE(f);
  }
}

TEST_CASE("invalid merges are rejected") {
  HighwayProblem c = fix_c();
  CoalitionStructure s = CoalitionStructure::singletons(c);
  CHECK_THROWS_AS(owen_alliance(c, s, {0}), std::invalid_argument);
  CHECK_THROWS_AS(owen_alliance(c, s, {0, 7}), std::invalid_argument);
  CHECK_THROWS_AS(alliance_report(ValueKind::Shapley, c, s, {0, 1}), std::invalid_argument);
}
