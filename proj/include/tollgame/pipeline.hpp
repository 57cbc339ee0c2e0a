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
// Traffic-table ingestion, level decomposition of sections into stacked
// subsections, aggregated problem construction per union scenario, and
// rounded toll tables.

#ifndef TOLLGAME_PIPELINE_HPP
#define TOLLGAME_PIPELINE_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tollgame/values.hpp"

namespace tollgame {

/// Thrown on malformed or invalid pipeline input; the CLI maps it to the
/// validation exit code.
struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-section traffic volumes and published fares for the ordered vehicle
/// classes. Fares must be non-decreasing across classes within a row (level
/// costs would otherwise go negative); volumes are non-negative with at
/// least one vehicle per row.
struct ClassTariffTable {
  std::vector<std::string> classes;  // header order
  std::vector<SectionId> sections;   // row order
  std::map<SectionId, std::vector<long long>> volume;  // ADI per class
  std::map<SectionId, std::vector<Money>> fare;        // fare per class

  void check() const;  // throws PipelineError
};

/// Header: section,adi_<class>...,fare_<class>... with matching class lists.
ClassTariffTable parse_tariff_csv(std::istream& in);
ClassTariffTable parse_tariff_file(const std::string& path);

/// Fixed cost of each (section, level): level 0 carries the base fare times
/// all traffic, level l>0 the fare increment times the traffic of classes
/// >= l.
struct LevelCostMatrix {
  std::vector<SectionId> sections;
  int levels = 0;
  std::map<SectionId, std::vector<Money>> entries;

  const Money& at(const SectionId& section, int level) const;
};

LevelCostMatrix build_level_costs(const ClassTariffTable& table);

/// Multiplies one level's entries by a positive factor.
LevelCostMatrix scale_level(const LevelCostMatrix& levels, int level, const Money& factor);

struct UnionSpec {
  enum class Kind { None, ClassBlock, File };
  Kind kind = Kind::None;
  std::string class_name;  // ClassBlock
  /// File: union id -> profiles (section, class) assigned to it.
  std::map<std::string, std::vector<std::pair<SectionId, std::string>>> assignments;

  static UnionSpec none();
  static UnionSpec class_block(const std::string& class_name);
  /// Text format: one line per union, "union_id: section:class[,section:class...]",
  /// or the single line "class-block:<class>". Blank lines and '#' comments
  /// are skipped.
  static UnionSpec parse_file(const std::string& path);
  /// Command-line spec: "none", "class-block:<class>", or "file:<path>".
  static UnionSpec parse(const std::string& text);
};

/// Aggregated problem over subsections plus the (section, class) grid needed
/// to render fares. Subsection ids are "<section>/<level>".
struct PipelineProblem {
  AggregatedProblem aggregated;
  std::vector<SectionId> base_sections;
  std::vector<std::string> classes;
  /// profile index per (section, class); -1 when the class has no traffic.
  std::map<SectionId, std::vector<int>> profile_of;
  std::map<SectionId, std::vector<long long>> volume;
};

SectionId subsection_id(const SectionId& section, int level);

PipelineProblem build_problem(const LevelCostMatrix& levels, const ClassTariffTable& table,
                              const UnionSpec& unions);

/// Fares per (base section, class) under one value concept, exact and
/// rounded, with the revenue bookkeeping used by the recovery check.
struct TollTable {
  ValueKind value = ValueKind::Shapley;
  Rounding rounding = Rounding::None;
  std::vector<SectionId> sections;
  std::vector<std::string> classes;
  std::map<SectionId, std::vector<Money>> exact;    // per-vehicle fares
  std::map<SectionId, std::vector<Money>> rounded;  // after `rounding`
  std::map<SectionId, std::vector<long long>> volume;
  std::map<SectionId, std::vector<char>> present;   // zero-traffic cells are absent
  Money total_cost;  // C(K), exact

  /// Sum of rounded fare x volume over all present cells.
  Money revenue() const;
  /// revenue() - total_cost.
  Money deviation() const;
};

TollTable toll_table(const PipelineProblem& problem, ValueKind value, Rounding rounding);

std::string render_csv(const TollTable& table);
std::string render_markdown(const TollTable& table);
std::string render_json(const TollTable& table);

}  // namespace tollgame

#endif  // TOLLGAME_PIPELINE_HPP
