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

#include "tollgame/pipeline.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tollgame {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void ClassTariffTable::check() const {
  if (classes.empty()) throw PipelineError("tariff table has no vehicle classes");
  if (sections.empty()) throw PipelineError("no data rows");
  for (const auto& s : sections) {
    const auto& adi = volume.at(s);
    const auto& f = fare.at(s);
    if (adi.size() != classes.size() || f.size() != classes.size()) {
      throw PipelineError("row " + s + ": column count mismatch");
    }
    long long total = 0;
    for (size_t c = 0; c < classes.size(); ++c) {
      if (adi[c] < 0) {
        throw PipelineError("row " + s + ", column adi_" + classes[c] + ": negative volume");
      }
      total += adi[c];
      if (f[c] < 0) {
        throw PipelineError("row " + s + ", column fare_" + classes[c] + ": negative fare");
      }
      if (c > 0 && f[c] < f[c - 1]) {
        throw PipelineError("row " + s + ", column fare_" + classes[c] + ": non-monotone fares");
      }
    }
    if (total == 0) throw PipelineError("row " + s + ": no traffic in any class");
  }
}

ClassTariffTable parse_tariff_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw PipelineError("empty file");
  std::vector<std::string> header = split(trim(line), ',');
  if (header.empty() || trim(header[0]) != "section") {
    throw PipelineError("header must start with 'section'");
  }
  std::vector<std::string> adi_classes, fare_classes;
  for (size_t k = 1; k < header.size(); ++k) {
    std::string h = trim(header[k]);
    if (h.rfind("adi_", 0) == 0) {
      if (!fare_classes.empty()) throw PipelineError("adi_* columns must precede fare_*");
      adi_classes.push_back(h.substr(4));
    } else if (h.rfind("fare_", 0) == 0) {
      fare_classes.push_back(h.substr(5));
    } else {
      throw PipelineError("unknown header column: " + h);
    }
  }
  if (adi_classes.empty() || adi_classes != fare_classes) {
    throw PipelineError("adi_* and fare_* class lists must match");
  }

  ClassTariffTable table;
  table.classes = adi_classes;
  size_t expected = 1 + 2 * table.classes.size();
  int row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<std::string> fields = split(t, ',');
    if (fields.size() != expected) {
      throw PipelineError("row " + std::to_string(row_number) + ": expected " +
                          std::to_string(expected) + " fields, got " +
                          std::to_string(fields.size()));
    }
    SectionId section = trim(fields[0]);
    if (section.empty()) throw PipelineError("row " + std::to_string(row_number) + ": empty section id");
    if (table.volume.count(section)) {
      throw PipelineError("row " + std::to_string(row_number) + ": duplicate section " + section);
    }
    std::vector<long long> adi;
    std::vector<Money> fares;
    for (size_t c = 0; c < table.classes.size(); ++c) {
      std::string field = trim(fields[1 + c]);
      try {
        size_t pos = 0;
        long long v = std::stoll(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
        adi.push_back(v);
      } catch (const std::exception&) {
        throw PipelineError("row " + std::to_string(row_number) + ", column adi_" +
                            table.classes[c] + ": malformed integer '" + field + "'");
      }
    }
    for (size_t c = 0; c < table.classes.size(); ++c) {
      std::string field = trim(fields[1 + table.classes.size() + c]);
      try {
        fares.push_back(parse_money(field));
      } catch (const std::exception&) {
        throw PipelineError("row " + std::to_string(row_number) + ", column fare_" +
                            table.classes[c] + ": malformed amount '" + field + "'");
      }
    }
    table.sections.push_back(section);
    table.volume[section] = std::move(adi);
    table.fare[section] = std::move(fares);
  }
  if (table.sections.empty()) throw PipelineError("no data rows");
  table.check();
  return table;
}

ClassTariffTable parse_tariff_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PipelineError("cannot open " + path);
  return parse_tariff_csv(in);
}

const Money& LevelCostMatrix::at(const SectionId& section, int level) const {
  auto it = entries.find(section);
  if (it == entries.end() || level < 0 || level >= static_cast<int>(it->second.size())) {
    throw PipelineError("no level cost entry for " + section + " level " +
                        std::to_string(level));
  }
  return it->second[level];
}

LevelCostMatrix build_level_costs(const ClassTariffTable& table) {
  table.check();
  LevelCostMatrix matrix;
  matrix.sections = table.sections;
  matrix.levels = static_cast<int>(table.classes.size());
  for (const auto& s : table.sections) {
    const auto& adi = table.volume.at(s);
    const auto& fare = table.fare.at(s);
    std::vector<Money> row;
    for (int l = 0; l < matrix.levels; ++l) {
      long long tail = 0;
      for (size_t c = l; c < adi.size(); ++c) tail += adi[c];
      Money increment = l == 0 ? fare[0] : fare[l] - fare[l - 1];
      row.push_back(increment * Money(tail));
    }
    matrix.entries[s] = std::move(row);
  }
  return matrix;
}

LevelCostMatrix scale_level(const LevelCostMatrix& levels, int level, const Money& factor) {
  if (level < 0 || level >= levels.levels) {
    throw PipelineError("level index " + std::to_string(level) + " out of range");
  }
  if (factor <= 0) throw PipelineError("scale factor must be positive");
  LevelCostMatrix out = levels;
  for (auto& [s, row] : out.entries) row[level] *= factor;
  return out;
}

UnionSpec UnionSpec::none() { return UnionSpec{}; }

UnionSpec UnionSpec::class_block(const std::string& class_name) {
  UnionSpec spec;
  spec.kind = Kind::ClassBlock;
  spec.class_name = class_name;
  return spec;
}

UnionSpec UnionSpec::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PipelineError("cannot open union spec " + path);
  UnionSpec spec;
  spec.kind = Kind::File;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("class-block:", 0) == 0) {
      return class_block(trim(t.substr(12)));
    }
    auto colon = t.find(':');
    if (colon == std::string::npos) throw PipelineError("malformed union line: " + t);
    std::string id = trim(t.substr(0, colon));
    if (id.empty()) throw PipelineError("empty union id in line: " + t);
    auto& members = spec.assignments[id];
    for (const auto& part : split(t.substr(colon + 1), ',')) {
      std::string m = trim(part);
      if (m.empty()) continue;
      auto sep = m.rfind(':');
      if (sep == std::string::npos) {
        throw PipelineError("malformed union member '" + m + "' (want section:class)");
      }
      members.emplace_back(trim(m.substr(0, sep)), trim(m.substr(sep + 1)));
    }
    if (members.empty()) throw PipelineError("union " + id + " has no members");
  }
  if (spec.assignments.empty()) throw PipelineError("union spec has no unions");
  return spec;
}

UnionSpec UnionSpec::parse(const std::string& text) {
  if (text == "none") return none();
  if (text.rfind("class-block:", 0) == 0) return class_block(text.substr(12));
  if (text.rfind("file:", 0) == 0) return parse_file(text.substr(5));
  throw PipelineError("unknown union spec '" + text +
                      "' (want none, class-block:<class>, or file:<path>)");
}

SectionId subsection_id(const SectionId& section, int level) {
  return section + "/" + std::to_string(level);
}

PipelineProblem build_problem(const LevelCostMatrix& levels, const ClassTariffTable& table,
                              const UnionSpec& unions) {
  table.check();
  int class_count = static_cast<int>(table.classes.size());
  if (levels.levels != class_count) {
    throw PipelineError("level matrix does not match the class count");
  }

  std::map<std::pair<SectionId, std::string>, std::string> assigned;
  if (unions.kind == UnionSpec::Kind::ClassBlock) {
    bool known = false;
    for (const auto& c : table.classes) known |= (c == unions.class_name);
    if (!known) throw PipelineError("unknown class in union spec: " + unions.class_name);
    for (const auto& s : table.sections) {
      assigned[{s, unions.class_name}] = unions.class_name;
    }
  } else if (unions.kind == UnionSpec::Kind::File) {
    for (const auto& [id, members] : unions.assignments) {
      for (const auto& [section, cls] : members) {
        if (!table.volume.count(section)) {
          throw PipelineError("union " + id + " references unknown section " + section);
        }
        bool known = false;
        for (const auto& c : table.classes) known |= (c == cls);
        if (!known) throw PipelineError("union " + id + " references unknown class " + cls);
        auto [it, inserted] = assigned.emplace(std::make_pair(section, cls), id);
        if (!inserted) {
          throw PipelineError("profile " + section + ":" + cls + " assigned to two unions");
        }
      }
    }
  }

  PipelineProblem out;
  out.base_sections = table.sections;
  out.classes = table.classes;
  out.volume = table.volume;

  // Subsections in section-major, level-minor order; a level exists while
  // some class at or above it has traffic.
  for (const auto& s : table.sections) {
    const auto& adi = table.volume.at(s);
    for (int l = 0; l < class_count; ++l) {
      long long tail = 0;
      for (size_t c = l; c < adi.size(); ++c) tail += adi[c];
      if (tail == 0) continue;
      SectionId sub = subsection_id(s, l);
      out.aggregated.sections.push_back(sub);
      out.aggregated.cost[sub] = levels.at(s, l);
    }
  }
  for (const auto& s : table.sections) {
    auto& row = out.profile_of[s];
    row.assign(class_count, -1);
    for (int c = 0; c < class_count; ++c) {
      long long adi = table.volume.at(s)[c];
      if (adi == 0) continue;
      AggProfile profile;
      profile.label = s + "|" + table.classes[c];
      profile.multiplicity = adi;
      for (int l = 0; l <= c; ++l) profile.usage.insert(subsection_id(s, l));
      auto it = assigned.find({s, table.classes[c]});
      if (it != assigned.end()) profile.union_label = it->second;
      row[c] = static_cast<int>(out.aggregated.profiles.size());
      out.aggregated.profiles.push_back(std::move(profile));
    }
  }
  out.aggregated.check();
  return out;
}

Money TollTable::revenue() const {
  Money sum(0);
  for (const auto& s : sections) {
    const auto& r = rounded.at(s);
    const auto& v = volume.at(s);
    const auto& ok = present.at(s);
    for (size_t c = 0; c < r.size(); ++c) {
      if (ok[c]) sum += r[c] * Money(v[c]);
    }
  }
  return sum;
}

Money TollTable::deviation() const { return revenue() - total_cost; }

TollTable toll_table(const PipelineProblem& problem, ValueKind value, Rounding rounding) {
  AggregatedValueResult result = compute_value(value, problem.aggregated);

  TollTable table;
  table.value = value;
  table.rounding = rounding;
  table.sections = problem.base_sections;
  table.classes = problem.classes;
  table.volume = problem.volume;
  table.total_cost = problem.aggregated.total_cost();
  for (const auto& s : problem.base_sections) {
    const auto& row = problem.profile_of.at(s);
    auto& exact = table.exact[s];
    auto& rounded = table.rounded[s];
    auto& present = table.present[s];
    for (size_t c = 0; c < problem.classes.size(); ++c) {
      if (row[c] < 0) {
        exact.push_back(Money(0));
        rounded.push_back(Money(0));
        present.push_back(0);
      } else {
        Money fare = result.per_vehicle[row[c]];
        exact.push_back(fare);
        rounded.push_back(apply_rounding(fare, rounding));
        present.push_back(1);
      }
    }
  }
  return table;
}

namespace {

std::string cell_text(const TollTable& table, const SectionId& s, size_t c) {
  if (!table.present.at(s)[c]) return "-";
  const Money& v = table.rounded.at(s)[c];
  return table.rounding == Rounding::None ? format_exact(v) : format_fixed(v, 2);
}

}  // namespace

std::string render_csv(const TollTable& table) {
  std::ostringstream out;
  out << "section";
  for (const auto& c : table.classes) out << ",fare_" << c;
  out << "\n";
  for (const auto& s : table.sections) {
    out << s;
    for (size_t c = 0; c < table.classes.size(); ++c) out << "," << cell_text(table, s, c);
    out << "\n";
  }
  out << "# value=" << value_kind_name(table.value) << " rounding="
      << rounding_name(table.rounding) << " total_cost=" << format_exact(table.total_cost)
      << " revenue=" << format_exact(table.revenue())
      << " deviation=" << format_exact(table.deviation()) << "\n";
  return out.str();
}

std::string render_markdown(const TollTable& table) {
  std::ostringstream out;
  out << "| section |";
  for (const auto& c : table.classes) out << " " << c << " |";
  out << "\n|---|";
  for (size_t c = 0; c < table.classes.size(); ++c) out << "---|";
  out << "\n";
  for (const auto& s : table.sections) {
    out << "| " << s << " |";
    for (size_t c = 0; c < table.classes.size(); ++c) out << " " << cell_text(table, s, c) << " |";
    out << "\n";
  }
  out << "\nvalue: " << value_kind_name(table.value)
      << ", rounding: " << rounding_name(table.rounding)
      << ", total cost: " << format_exact(table.total_cost)
      << ", revenue: " << format_exact(table.revenue())
      << ", deviation: " << format_exact(table.deviation()) << "\n";
  return out.str();
}

std::string render_json(const TollTable& table) {
  nlohmann::json j;
  j["value"] = value_kind_name(table.value);
  j["rounding"] = rounding_name(table.rounding);
  j["classes"] = table.classes;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : table.sections) {
    nlohmann::json row;
    row["section"] = s;
    nlohmann::json fares = nlohmann::json::array();
    for (size_t c = 0; c < table.classes.size(); ++c) {
      if (!table.present.at(s)[c]) {
        fares.push_back(nullptr);
        continue;
      }
      const Money& exact = table.exact.at(s)[c];
      const Money& rounded = table.rounded.at(s)[c];
      nlohmann::json cell;
      cell["num"] = numerator(exact).str();
      cell["den"] = denominator(exact).str();
      cell["decimal"] = format_fixed(rounded, 2);
      fares.push_back(std::move(cell));
    }
    row["fares"] = std::move(fares);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["total_cost"] = {{"num", numerator(table.total_cost).str()},
                     {"den", denominator(table.total_cost).str()}};
  Money revenue = table.revenue();
  Money deviation = table.deviation();
  j["revenue"] = {{"num", numerator(revenue).str()}, {"den", denominator(revenue).str()}};
  j["deviation"] = {{"num", numerator(deviation).str()},
                    {"den", denominator(deviation).str()},
                    {"decimal", format_fixed(deviation, 2)}};
  return j.dump(2);
}

}  // namespace tollgame
