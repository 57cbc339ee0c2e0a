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
// End-to-end acceptance suite. Each criterion prints a single PASS/FAIL
// line; run `acceptance` for all of them or `acceptance --criterion N` for
// one. The reference fare tables are the published values for the bundled
// dataset; comparisons use the stated tolerances, exact arithmetic inside.

#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "tollgame/alliance.hpp"
#include "tollgame/axioms.hpp"
#include "tollgame/pipeline.hpp"
#include "tollgame/verification.hpp"

using namespace tollgame;

namespace {

const std::string kDataDir = TOLLGAME_DATA_DIR;

struct Criterion {
  int number;
  std::string summary;
  std::function<bool(std::ostream&)> run;
};

using Row = std::array<const char*, 4>;  // section, value per class

// Reference fares for the bundled dataset, two decimals, one row per
// section, columns light / heavy1 / heavy2.
const std::vector<Row> kBaselineTijs = {
    {"AC-Ma", "1.68", "1.79", "1.82"}, {"Ma-Or", "1.97", "2.09", "2.12"},
    {"Or-Si", "1.27", "1.34", "1.36"}, {"Si-Sa", "1.11", "1.18", "1.20"},
    {"Sa-Pa", "2.10", "2.24", "2.28"}, {"Pa-Cr", "0.76", "0.82", "0.85"},
    {"Cr-Cl", "0.62", "0.66", "0.66"}, {"Cl-Cu", "0.97", "1.04", "1.07"},
    {"Cu-Po", "1.18", "1.28", "1.31"}, {"Po-Vl", "1.28", "1.36", "1.38"},
    {"Vl-Mo", "1.87", "1.89", "1.96"}, {"Mo-Vg", "2.59", "2.73", "2.80"}};

const std::vector<Row> kGroupedOwen = {
    {"AC-Ma", "1.98", "4.78", "0.75"}, {"Ma-Or", "3.18", "7.87", "1.21"},
    {"Or-Si", "1.88", "4.18", "0.85"}, {"Si-Sa", "1.83", "4.53", "0.70"},
    {"Sa-Pa", "2.52", "5.72", "0.95"}, {"Pa-Cr", "1.11", "2.71", "0.80"},
    {"Cr-Cl", "0.79", "1.59", "0.20"}, {"Cl-Cu", "1.32", "3.22", "0.55"},
    {"Cu-Po", "1.42", "3.62", "0.60"}, {"Po-Vl", "1.15", "2.85", "0.45"},
    {"Vl-Mo", "1.77", "2.07", "1.65"}, {"Mo-Vg", "1.14", "2.94", "0.80"}};

const std::vector<Row> kGroupedCoalitionalTijs = {
    {"AC-Ma", "1.73", "1.84", "0.85"}, {"Ma-Or", "2.02", "2.14", "0.99"},
    {"Or-Si", "1.30", "1.37", "0.64"}, {"Si-Sa", "1.13", "1.20", "0.56"},
    {"Sa-Pa", "2.15", "2.29", "1.07"}, {"Pa-Cr", "0.78", "0.84", "0.40"},
    {"Cr-Cl", "0.64", "0.68", "0.31"}, {"Cl-Cu", "0.99", "1.07", "0.50"},
    {"Cu-Po", "1.21", "1.31", "0.61"}, {"Po-Vl", "1.31", "1.39", "0.65"},
    {"Vl-Mo", "1.92", "1.93", "0.92"}, {"Mo-Vg", "2.65", "2.80", "1.31"}};

const std::vector<Row> kGroupedShapleyTijs = {
    {"AC-Ma", "1.98", "4.78", "0.83"}, {"Ma-Or", "3.18", "7.87", "0.97"},
    {"Or-Si", "1.88", "4.18", "0.62"}, {"Si-Sa", "1.83", "4.53", "0.55"},
    {"Sa-Pa", "2.52", "5.72", "1.04"}, {"Pa-Cr", "1.11", "2.71", "0.39"},
    {"Cr-Cl", "0.79", "1.59", "0.30"}, {"Cl-Cu", "1.32", "3.22", "0.49"},
    {"Cu-Po", "1.42", "3.62", "0.60"}, {"Po-Vl", "1.15", "2.85", "0.63"},
    {"Vl-Mo", "1.77", "2.07", "0.90"}, {"Mo-Vg", "1.14", "2.94", "1.28"}};

const std::vector<Row> kScaledShapley = {
    {"AC-Ma", "1.90", "3.30", "6.30"}, {"Ma-Or", "3.05", "5.40", "10.20"},
    {"Or-Si", "1.80", "2.95", "6.35"}, {"Si-Sa", "1.75", "3.10", "5.90"},
    {"Sa-Pa", "2.40", "4.00", "7.80"}, {"Pa-Cr", "1.05", "1.85", "5.05"},
    {"Cr-Cl", "0.75", "1.15", "1.95"}, {"Cl-Cu", "1.25", "2.20", "4.40"},
    {"Cu-Po", "1.35", "2.45", "4.85"}, {"Po-Vl", "1.10", "1.95", "3.75"},
    {"Vl-Mo", "1.70", "1.85", "8.45"}, {"Mo-Vg", "1.10", "2.00", "5.20"}};

const std::vector<Row> kScaledTijs = {
    {"AC-Ma", "1.78", "1.89", "2.01"}, {"Ma-Or", "2.09", "2.22", "2.35"},
    {"Or-Si", "1.35", "1.42", "1.52"}, {"Si-Sa", "1.17", "1.25", "1.33"},
    {"Sa-Pa", "2.22", "2.36", "2.53"}, {"Pa-Cr", "0.81", "0.87", "0.99"},
    {"Cr-Cl", "0.66", "0.70", "0.74"}, {"Cl-Cu", "1.03", "1.11", "1.20"},
    {"Cu-Po", "1.25", "1.35", "1.46"}, {"Po-Vl", "1.35", "1.44", "1.53"},
    {"Vl-Mo", "1.98", "1.99", "2.30"}, {"Mo-Vg", "2.74", "2.90", "3.18"}};

const std::vector<Row> kScaledOwen = {
    {"AC-Ma", "1.98", "4.78", "3.00"}, {"Ma-Or", "3.18", "7.87", "4.81"},
    {"Or-Si", "1.88", "4.17", "3.41"}, {"Si-Sa", "1.83", "4.52", "2.81"},
    {"Sa-Pa", "2.52", "5.72", "3.80"}, {"Pa-Cr", "1.11", "2.70", "3.20"},
    {"Cr-Cl", "0.79", "1.59", "0.80"}, {"Cl-Cu", "1.32", "3.21", "2.20"},
    {"Cu-Po", "1.42", "3.62", "2.40"}, {"Po-Vl", "1.15", "2.85", "1.80"},
    {"Vl-Mo", "1.77", "2.07", "6.60"}, {"Mo-Vg", "1.14", "2.94", "3.20"}};

const std::vector<Row> kScaledCoalitionalTijs = {
    {"AC-Ma", "1.73", "1.83", "3.34"}, {"Ma-Or", "2.02", "2.15", "3.90"},
    {"Or-Si", "1.30", "1.37", "2.52"}, {"Si-Sa", "1.13", "1.21", "2.20"},
    {"Sa-Pa", "2.15", "2.29", "4.21"}, {"Pa-Cr", "0.78", "0.84", "1.65"},
    {"Cr-Cl", "0.64", "0.67", "1.21"}, {"Cl-Cu", "0.99", "1.07", "1.99"},
    {"Cu-Po", "1.21", "1.31", "2.44"}, {"Po-Vl", "1.31", "1.39", "2.54"},
    {"Vl-Mo", "1.92", "1.93", "3.83"}, {"Mo-Vg", "2.65", "2.80", "5.26"}};

const std::vector<Row> kScaledShapleyTijs = {
    {"AC-Ma", "1.98", "4.78", "3.32"}, {"Ma-Or", "3.18", "7.87", "3.87"},
    {"Or-Si", "1.88", "4.17", "2.51"}, {"Si-Sa", "1.83", "4.52", "2.19"},
    {"Sa-Pa", "2.52", "5.72", "4.18"}, {"Pa-Cr", "1.11", "2.70", "1.64"},
    {"Cr-Cl", "0.79", "1.59", "1.21"}, {"Cl-Cu", "1.32", "3.21", "1.97"},
    {"Cu-Po", "1.42", "3.62", "2.43"}, {"Po-Vl", "1.15", "2.85", "2.52"},
    {"Vl-Mo", "1.77", "2.07", "3.80"}, {"Mo-Vg", "1.14", "2.94", "5.23"}};

ClassTariffTable load_ap9() { return parse_tariff_file(kDataDir + "/ap9.csv"); }

PipelineProblem ap9_problem(const UnionSpec& unions, bool scale_top_level) {
  ClassTariffTable table = load_ap9();
  LevelCostMatrix levels = build_level_costs(table);
  if (scale_top_level) levels = scale_level(levels, 2, Money(4));
  return build_problem(levels, table, unions);
}

// Counts entries whose nearest-2dp rounding differs from the reference by
// more than 0.01, and reports the worst offender.
struct TableDiff {
  int compared = 0;
  int mismatched = 0;
  Money worst = Money(0);
  std::string worst_cell;

  void note(const SectionId& section, const std::string& cls, const Money& computed,
            const Money& reference) {
    ++compared;
    Money dev = round_nearest(computed, 2) - reference;
    if (dev < 0) dev = -dev;
    if (dev > Money(1, 100)) {
      ++mismatched;
      if (dev > worst) {
        worst = dev;
        worst_cell = section + "/" + cls + " computed " + format_fixed(computed, 2) +
                     " reference " + format_fixed(reference, 2);
      }
    }
  }
};

TableDiff compare_table(const TollTable& tolls, const std::vector<Row>& reference) {
  TableDiff diff;
  for (size_t r = 0; r < reference.size(); ++r) {
    const SectionId section = reference[r][0];
    for (size_t c = 0; c < 3; ++c) {
      diff.note(section, tolls.classes[c], tolls.exact.at(section)[c],
                parse_money(reference[r][c + 1]));
    }
  }
  return diff;
}

bool criterion_shapley_identity(std::ostream& out) {
  ClassTariffTable table = load_ap9();
  PipelineProblem problem = ap9_problem(UnionSpec::none(), false);
  TollTable tolls = toll_table(problem, ValueKind::Shapley, Rounding::None);
  int exact = 0;
  int total = 0;
  for (const auto& s : table.sections) {
    for (size_t c = 0; c < table.classes.size(); ++c) {
      ++total;
      if (tolls.exact.at(s)[c] == table.fare.at(s)[c]) ++exact;
    }
  }
  out << exact << "/" << total << " fares exactly equal to the published tariffs";
  return exact == total;
}

bool criterion_tijs_table(std::ostream& out) {
  PipelineProblem problem = ap9_problem(UnionSpec::none(), false);
  TollTable tolls = toll_table(problem, ValueKind::Tijs, Rounding::Nearest2);
  TableDiff diff = compare_table(tolls, kBaselineTijs);
  out << (diff.compared - diff.mismatched) << "/" << diff.compared << " within 0.01";
  if (diff.mismatched) out << "; worst " << format_fixed(diff.worst, 2) << " at " << diff.worst_cell;
  return diff.mismatched == 0;
}

bool criterion_grouped_tables(std::ostream& out) {
  PipelineProblem problem = ap9_problem(UnionSpec::class_block("heavy2"), false);
  struct Case {
    ValueKind kind;
    const std::vector<Row>* reference;
  };
  Case cases[] = {{ValueKind::Owen, &kGroupedOwen},
                  {ValueKind::CoalitionalTijs, &kGroupedCoalitionalTijs},
                  {ValueKind::ShapleyTijs, &kGroupedShapleyTijs}};
  bool ok = true;
  for (const auto& c : cases) {
    TollTable tolls = toll_table(problem, c.kind, Rounding::Nearest2);
    TableDiff diff = compare_table(tolls, *c.reference);
    out << value_kind_name(c.kind) << " " << (diff.compared - diff.mismatched) << "/"
        << diff.compared;
    if (diff.mismatched) {
      out << " (worst " << format_fixed(diff.worst, 2) << " at " << diff.worst_cell << ")";
      ok = false;
    }
    out << "; ";
  }
  return ok;
}

bool criterion_scaled_tables(std::ostream& out) {
  PipelineProblem baseline = ap9_problem(UnionSpec::none(), true);
  PipelineProblem grouped = ap9_problem(UnionSpec::class_block("heavy2"), true);
  struct Case {
    const PipelineProblem* problem;
    ValueKind kind;
    const std::vector<Row>* reference;
  };
  Case cases[] = {{&baseline, ValueKind::Shapley, &kScaledShapley},
                  {&baseline, ValueKind::Tijs, &kScaledTijs},
                  {&grouped, ValueKind::Owen, &kScaledOwen},
                  {&grouped, ValueKind::CoalitionalTijs, &kScaledCoalitionalTijs},
                  {&grouped, ValueKind::ShapleyTijs, &kScaledShapleyTijs}};
  bool ok = true;
  for (const auto& c : cases) {
    TollTable tolls = toll_table(*c.problem, c.kind, Rounding::Nearest2);
    TableDiff diff = compare_table(tolls, *c.reference);
    out << value_kind_name(c.kind) << " " << (diff.compared - diff.mismatched) << "/"
        << diff.compared;
    if (diff.mismatched) {
      out << " (worst " << format_fixed(diff.worst, 2) << " at " << diff.worst_cell << ")";
      ok = false;
    }
    out << "; ";
  }
  return ok;
}

bool criterion_counterexample_exactness(std::ostream& out) {
  using tollgame::testfix::fix_d;
  using tollgame::testfix::fix_d_structure;
  HighwayProblem d = fix_d();
  CoalitionStructure structure = fix_d_structure();
  auto pre = coalitional_tijs_closed(d, structure);
  Money pre_sum(0);
  for (int a = 0; a < 4; ++a) pre_sum += (*pre.allocation.union_totals)[a];
  CoalitionStructure merged = merge_unions(structure, {0, 1, 2, 3});
  auto post = coalitional_tijs_closed(d, merged);
  Money post_total = (*post.allocation.union_totals)[0];
  out << "pre-merge sum " << format_fraction(pre_sum) << ", post-merge total "
      << format_fraction(post_total);
  return pre_sum == Money(1, 13) && post_total == Money(102, 101);
}

bool criterion_oracle_equivalence(std::ostream& out) {
  GeneratorConfig config;  // |N| <= 6, |K| <= 6, costs in [0, 20]
  SuiteReport report = oracle_equivalence_suite(200, 42, config);
  out << "5 values x " << report.trials << " instances, " << report.checks << " comparisons";
  if (!report.ok()) out << "; first failure: " << report.failures.front();
  return report.ok();
}

bool criterion_alliance_theorems(std::ostream& out) {
  GeneratorConfig config;
  SuiteReport report = alliance_theorem_suite(200, 42, config);
  out << report.trials << " merges, " << report.checks << " inequality/strictness checks";
  if (!report.ok()) out << "; first failure: " << report.failures.front();
  return report.ok();
}

bool criterion_axiom_matrix(std::ostream& out) {
  GeneratorConfig config;
  config.max_agents = 5;
  config.max_sections = 5;
  std::vector<ValueKind> values = {ValueKind::Shapley, ValueKind::Tijs, ValueKind::Owen,
                                   ValueKind::CoalitionalTijs, ValueKind::ShapleyTijs};
  SatisfactionMatrix matrix = satisfaction_matrix(values, 500, 20260810, config);
  auto unexpected = matrix.unexpected_violations();
  bool ok = unexpected.empty();
  out << "500 trials/cell over " << matrix.cells.size() << " cells";
  if (!ok) {
    out << "; violation at " << value_kind_name(unexpected.front()->value) << "/"
        << axiom_name(unexpected.front()->axiom);
  }

  // Frozen counterexamples exist and still falsify for every expected-fail
  // cell.
  int fixtures = 0;
  for (ValueKind v : values) {
    for (Axiom a : kAllAxioms) {
      if (expected_satisfied(v, a)) continue;
      auto path = std::filesystem::path(kDataDir) / "counterexamples" /
                  (value_kind_name(v) + "_" + axiom_name(a) + ".json");
      if (!std::filesystem::exists(path)) {
        out << "; missing fixture " << path.filename().string();
        ok = false;
        continue;
      }
      std::ifstream in(path);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      AxiomInstance inst = instance_from_json(buffer.str());
      Verdict verdict = check_axiom(inst, value_fn(v));
      if (verdict.passed) {
        out << "; stale fixture " << path.filename().string();
        ok = false;
      } else {
        ++fixtures;
      }
    }
  }
  out << "; " << fixtures << " counterexample fixtures replayed";
  return ok;
}

bool criterion_reduction_lattice(std::ostream& out) {
  GeneratorConfig config;
  SuiteReport report = reduction_lattice_suite(100, 42, config);
  out << report.trials << " instances, " << report.checks << " equalities";
  if (!report.ok()) out << "; first failure: " << report.failures.front();
  return report.ok();
}

bool criterion_revenue_recovery(std::ostream& out) {
  bool ok = true;
  for (bool scaled : {false, true}) {
    for (const auto& spec : {UnionSpec::none(), UnionSpec::class_block("heavy2")}) {
      PipelineProblem problem = ap9_problem(spec, scaled);
      for (ValueKind kind : {ValueKind::Shapley, ValueKind::Tijs, ValueKind::Owen,
                             ValueKind::CoalitionalTijs, ValueKind::ShapleyTijs}) {
        TollTable ceil = toll_table(problem, kind, Rounding::Ceil2);
        if (ceil.revenue() < ceil.total_cost) {
          out << value_kind_name(kind) << (scaled ? " (scaled)" : "") << " under-recovers; ";
          ok = false;
        }
      }
    }
  }
  // Document the nearest-2dp deviation on the baseline scenario.
  PipelineProblem problem = ap9_problem(UnionSpec::none(), false);
  TollTable nearest = toll_table(problem, ValueKind::Tijs, Rounding::Nearest2);
  out << "ceil revenue >= total cost in 20/20 scenarios; nearest-2dp deviation on the "
      << "baseline Tijs table: " << format_fixed(nearest.deviation(), 2);
  return ok;
}

int run_criteria(const std::vector<Criterion>& criteria, int which) {
  int failures = 0;
  for (const auto& criterion : criteria) {
    if (which != 0 && criterion.number != which) continue;
    auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool passed = false;
    try {
      passed = criterion.run(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    std::cout << (passed ? "[PASS]" : "[FAIL]") << " criterion " << criterion.number << ": "
              << criterion.summary << " — " << detail.str() << " [" << elapsed << " ms]\n";
    if (!passed) ++failures;
  }
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      which = std::stoi(argv[++i]);
    } else if (arg == "--help") {
      std::cout << "usage: acceptance [--criterion N]\n";
      return 0;
    }
  }

  std::vector<Criterion> criteria = {
      {1, "baseline Shapley fares equal the published tariffs exactly",
       criterion_shapley_identity},
      {2, "baseline Tijs fares match the reference table within 0.01", criterion_tijs_table},
      {3, "heavy2-block Owen/coalitional-Tijs/Shapley-Tijs fares match the reference tables "
          "within 0.01",
       criterion_grouped_tables},
      {4, "level-2 x4 fare tables match the reference tables within 0.01",
       criterion_scaled_tables},
      {5, "104-union merge totals are exactly 1/13 before and 102/101 after",
       criterion_counterexample_exactness},
      {6, "closed forms equal the brute-force oracles exactly on 200 random instances",
       criterion_oracle_equivalence},
      {7, "alliance inequalities and strictness conditions hold on 200 random merges",
       criterion_alliance_theorems},
      {8, "axiom matrix clean at 500 trials/cell and counterexample fixtures replay",
       criterion_axiom_matrix},
      {9, "reduction lattice holds exactly on 100 random instances",
       criterion_reduction_lattice},
      {10, "ceil-rounded tables recover the total cost in every scenario",
       criterion_revenue_recovery},
  };

  int failures = run_criteria(criteria, which);
  return failures == 0 ? 0 : 1;
}
