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
#include "tollgame/generator.hpp"
#include "tollgame/model.hpp"
#include "tollgame/oracle.hpp"

using namespace tollgame;
using namespace tollgame::testfix;

TEST_CASE("money parsing and rounding") {
  CHECK(parse_money("1.90") == Money(19, 10));
  CHECK(parse_money("0") == Money(0));
  CHECK(parse_money("3/4") == Money(3, 4));
  CHECK(parse_money("-0.5") == Money(-1, 2));
  CHECK_THROWS_AS(parse_money("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_money("1/0"), std::invalid_argument);

  // fraction digits with leading zeros must parse as decimal, not octal
  CHECK(parse_money("2.09") == Money(209, 100));
  CHECK(parse_money("1.074") == Money(1074, 1000));
  CHECK(parse_money("0.005") == Money(5, 1000));

  CHECK(round_nearest(Money(1005, 1000), 2) == Money(101, 100));  // half up
  CHECK(round_nearest(Money(1004, 1000), 2) == Money(1, 1));
  CHECK(round_ceil(Money(1001, 1000), 2) == Money(101, 100));
  CHECK(round_ceil(Money(1, 1), 2) == Money(1, 1));
  CHECK(format_fixed(Money(19, 10), 2) == "1.90");
  CHECK(format_exact(Money(3, 4)) == "0.75");
  CHECK(format_exact(Money(1, 3)) == "1/3");
  CHECK(format_exact(Money(102, 101)) == "102/101");
}

TEST_CASE("validate accepts FIX-A and reports specific violations") {
  CHECK(validate(fix_a()).ok());

  HighwayProblem empty_usage = fix_a();
  empty_usage.usage["1"].clear();
  auto report = validate(empty_usage);
  CHECK(!report.ok());
  CHECK(report.to_string().find("empty usage") != std::string::npos);

  HighwayProblem uncovered = fix_a();
  uncovered.sections.push_back("t4");
  uncovered.cost["t4"] = Money(1);
  report = validate(uncovered);
  CHECK(!report.ok());
  CHECK(report.to_string().find("uncovered section") != std::string::npos);

  HighwayProblem negative = fix_a();
  negative.cost["t1"] = Money(-1);
  CHECK(!validate(negative).ok());

  HighwayProblem unknown = fix_a();
  unknown.usage["1"].insert("nope");
  CHECK(!validate(unknown).ok());
}

TEST_CASE("coalition_cost") {
  HighwayProblem p = fix_a();
  CHECK(coalition_cost(p, {"1", "2"}) == Money(18));
  CHECK(coalition_cost(p, {}) == Money(0));
  CHECK(coalition_cost(p, {"1", "2", "3"}) == Money(21));
  CHECK_THROWS_AS(coalition_cost(p, {"9"}), std::invalid_argument);
}

TEST_CASE("classify_sections on the fixtures") {
  SectionClassification cls = classify_sections(fix_a());
  CHECK(cls.exclusive == std::set<SectionId>{"t3"});
  CHECK(cls.shared == std::set<SectionId>{"t1", "t2"});
  CHECK(cls.exclusive_cost.at("1") == Money(0));
  CHECK(cls.exclusive_cost.at("2") == Money(0));
  CHECK(cls.exclusive_cost.at("3") == Money(3));
  CHECK(cls.shared_cost.at("1") == Money(6));
  CHECK(cls.shared_cost.at("2") == Money(18));
  CHECK(cls.shared_cost.at("3") == Money(12));
  CHECK(cls.shared_total == Money(18));

  HighwayProblem single;
  single.agents = {"1"};
  single.sections = {"t"};
  single.cost = {{"t", Money(5)}};
  single.usage = {{"1", {"t"}}};
  SectionClassification scls = classify_sections(single);
  CHECK(scls.exclusive == std::set<SectionId>{"t"});
  CHECK(scls.shared.empty());

  SectionClassification bcls = classify_sections(fix_b());
  CHECK(bcls.exclusive.empty());
  CHECK(bcls.shared == std::set<SectionId>{"t1", "t2"});
}

TEST_CASE("restrict_problem basics") {
  HighwayProblem p = fix_a();

  auto [r1, s1] = restrict_problem(p, std::nullopt, {"t1"});
  CHECK(r1.agents == std::vector<AgentId>{"1", "2"});
  CHECK(r1.usage.at("1") == std::set<SectionId>{"t1"});
  CHECK(r1.usage.at("2") == std::set<SectionId>{"t1"});
  CHECK(r1.cost.at("t1") == Money(6));

  auto [r2, s2] = restrict_problem(p, std::nullopt, {"t1", "t2", "t3"});
  CHECK(r2 == p);

  CoalitionStructure structure({{"1", "2"}, {"3"}});
  auto [r3, s3] = restrict_problem(p, structure, {"t3"});
  CHECK(r3.agents == std::vector<AgentId>{"3"});
  REQUIRE(s3.has_value());
  CHECK(s3->blocks() == std::vector<std::vector<AgentId>>{{"3"}});

  CHECK_THROWS_AS(restrict_problem(p, std::nullopt, {}), std::invalid_argument);
}

TEST_CASE("restriction composes") {
  Rng rng(7);
  GeneratorConfig config;
  for (int trial = 0; trial < 50; ++trial) {
    HighwayProblem p = random_problem(rng, config);
    CoalitionStructure s = random_structure(rng, p);
    // pick a random non-empty chain keep2 subset of keep1 subset of K
    std::set<SectionId> keep1, keep2;
    for (const auto& t : p.sections) {
      if (rng.chance(70)) keep1.insert(t);
    }
    if (keep1.empty()) keep1.insert(p.sections[0]);
    for (const auto& t : keep1) {
      if (rng.chance(60)) keep2.insert(t);
    }
    if (keep2.empty()) keep2.insert(*keep1.begin());

    auto [mid, mid_s] = restrict_problem(p, s, keep1);
    auto [two_step, two_step_s] = restrict_problem(mid, mid_s, keep2);
    auto [one_step, one_step_s] = restrict_problem(p, s, keep2);
    CHECK(two_step == one_step);
    CHECK(two_step_s->same_partition(*one_step_s));
  }
}

TEST_CASE("quotient views") {
  HighwayProblem c = fix_c();
  QuotientView qv = quotient(c, fix_c_structure());
  CHECK(qv.using_unions.at("t") == std::set<int>{0, 1});
  CHECK(qv.member_counts.at("t").at(0) == 2);
  CHECK(qv.member_counts.at("t").at(1) == 1);
  CHECK(qv.shared == std::set<SectionId>{"t"});
  CHECK(qv.exclusive.empty());

  // Singleton structure reproduces the agent-level classification.
  HighwayProblem a = fix_a();
  QuotientView qa = quotient(a, CoalitionStructure::singletons(a));
  SectionClassification cls = classify_sections(a);
  CHECK(qa.exclusive == cls.exclusive);
  CHECK(qa.shared == cls.shared);
  CHECK(qa.shared_total == cls.shared_total);

  QuotientView qp = quotient(a, CoalitionStructure({{"1", "2"}, {"3"}}));
  CHECK(qp.exclusive == std::set<SectionId>{"t1", "t3"});
  CHECK(qp.shared == std::set<SectionId>{"t2"});
  CHECK(qp.quotient_cost({0}) == Money(18));
  CHECK(qp.quotient_cost({0, 1}) == Money(21));

  CoalitionStructure bad({{"1"}, {"2"}});
  CHECK_THROWS_AS(quotient(a, bad), std::invalid_argument);
}

TEST_CASE("merge_unions") {
  CoalitionStructure s({{"1"}, {"2"}, {"3"}});
  CoalitionStructure merged = merge_unions(s, {0, 1});
  CHECK(merged.blocks() == std::vector<std::vector<AgentId>>{{"1", "2"}, {"3"}});

  CoalitionStructure d = fix_d_structure();
  CoalitionStructure dm = merge_unions(d, {0, 1, 2, 3});
  CHECK(dm.size() == 101);
  CHECK(dm.blocks()[0].size() == 4);

  CoalitionStructure all = merge_unions(s, {0, 1, 2});
  CHECK(all.size() == 1);

  CHECK_THROWS_AS(merge_unions(s, {0}), std::invalid_argument);
  CHECK_THROWS_AS(merge_unions(s, {0, 9}), std::invalid_argument);
}

TEST_CASE("classify_alliance") {
  HighwayProblem d = fix_d();
  CoalitionStructure ds = fix_d_structure();
  CoalitionStructure dm = merge_unions(ds, {0, 1, 2, 3});
  AllianceView view = classify_alliance(d, ds, dm);
  CHECK(view.se == std::set<SectionId>{"t1"});
  CHECK(view.ss == std::set<SectionId>{"t2"});
  CHECK(view.ee.empty());
  CHECK(view.merging_user_count.at("t1") == 2);
  CHECK(view.merging_user_count.at("t2") == 2);

  HighwayProblem c = fix_c();
  CoalitionStructure cs = CoalitionStructure::singletons(c);
  CoalitionStructure cm = merge_unions(cs, {0, 1});
  AllianceView cview = classify_alliance(c, cs, cm);
  CHECK(cview.ss == std::set<SectionId>{"t"});
  CHECK(cview.post_using_unions.at("t").size() == 2);

  // Disjoint individually-exclusive sections stay exclusive.
  HighwayProblem p;
  p.agents = {"1", "2"};
  p.sections = {"t1", "t2"};
  p.cost = {{"t1", Money(2)}, {"t2", Money(3)}};
  p.usage = {{"1", {"t1"}}, {"2", {"t2"}}};
  CoalitionStructure ps = CoalitionStructure::singletons(p);
  AllianceView pview = classify_alliance(p, ps, merge_unions(ps, {0, 1}));
  CHECK(pview.ee == std::set<SectionId>{"t1", "t2"});
  CHECK(pview.se.empty());

  // Not a single-merge relation.
  CHECK_THROWS_AS(classify_alliance(c, cs, cs), std::invalid_argument);
}

TEST_CASE("merge count identity on random instances") {
  Rng rng(99);
  GeneratorConfig config;
  for (int trial = 0; trial < 60; ++trial) {
    HighwayProblem p = random_problem(rng, config);
    if (p.agents.size() < 2) continue;
    CoalitionStructure s = random_structure(rng, p);
    if (s.size() < 2) continue;
    std::set<int> merge = random_merge(rng, s);
    CoalitionStructure merged = merge_unions(s, merge);
    AllianceView view = classify_alliance(p, s, merged);
    QuotientView before = quotient(p, s);
    for (const auto& [t, count] : view.merging_user_count) {
      CHECK(count >= 1);
      int before_count = static_cast<int>(before.using_unions.at(t).size());
      int after_count = static_cast<int>(view.post_using_unions.at(t).size());
      CHECK(after_count == before_count - count + 1);
    }
  }
}

TEST_CASE("highway games are concave and monotone") {
  Rng rng(1234);
  GeneratorConfig config;
  for (int trial = 0; trial < 40; ++trial) {
    HighwayProblem p = random_problem(rng, config);
    TUGame game = to_tu_game(p);
    CHECK(is_concave(game));
    CHECK(is_monotone(game));
  }
}

TEST_CASE("quotient partitions are consistent") {
  Rng rng(31);
  GeneratorConfig config;
  for (int trial = 0; trial < 40; ++trial) {
    HighwayProblem p = random_problem(rng, config);
    CoalitionStructure s = random_structure(rng, p);
    SectionClassification cls = classify_sections(p);
    QuotientView qv = quotient(p, s);
    for (const auto& t : p.sections) {
      CHECK((cls.exclusive.count(t) + cls.shared.count(t)) == 1);
      CHECK((qv.exclusive.count(t) + qv.shared.count(t)) == 1);
    }
    // A section shared between unions is shared between agents.
    for (const auto& t : qv.shared) CHECK(cls.shared.count(t) == 1);
  }
}
