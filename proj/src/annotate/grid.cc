// Copyright 2026 The retrace Authors.
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

#include "retrace/annotate/grid.h"

#include <cstdlib>
#include <set>
#include <tuple>

#include "retrace/common/error.h"
#include "retrace/common/strings.h"

namespace retrace::annotate {

namespace {

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("decision grid: bad " + what + " '" + s + "'");
  }
}

// "0.3" -> 3. Only one decimal digit is meaningful in the grid.
int parse_tenths(const std::string& s) {
  std::string t = trim(s);
  if (t.size() == 3 && t[0] == '0' && t[1] == '.' && t[2] >= '1' && t[2] <= '9') {
    return t[2] - '0';
  }
  throw ValidationError("decision grid: inner value must be 0.1..0.9, got '" +
                        s + "'");
}

Macro macro_for_column(int column) {
  if (column <= 3) return Macro::kReviewing;
  if (column <= 5) return Macro::kAffecting;
  return Macro::kReferring;
}

}  // namespace

std::string_view macro_name(Macro m) {
  switch (m) {
    case Macro::kReviewing:
      return "reviewing";
    case Macro::kAffecting:
      return "affecting";
    case Macro::kReferring:
      return "referring";
  }
  return "";
}

Macro parse_macro(std::string_view name) {
  std::string n = to_lower(trim(name));
  if (n == "reviewing") return Macro::kReviewing;
  if (n == "affecting") return Macro::kAffecting;
  if (n == "referring") return Macro::kReferring;
  throw ValidationError("unknown macro category '" + std::string(name) + "'");
}

std::string Priority::str() const {
  return std::to_string(tenths_ / 10) + "." + std::to_string(tenths_ % 10);
}

DecisionGrid DecisionGrid::from_table(const csv::Table& table) {
  DecisionGrid grid;
  std::set<std::string> names;
  std::set<std::tuple<int, int, int>> cells;
  for (const auto& row : table.rows) {
    GridEntry e;
    e.function = to_lower(trim(table.get(row, "function")));
    e.macro = parse_macro(table.get(row, "macro"));
    e.column = parse_int(trim(table.get(row, "column")), "column");
    e.column_label = to_lower(trim(table.get(row, "column_label")));
    e.row = parse_int(trim(table.get(row, "row")), "row");
    e.inner_tenths = parse_tenths(table.get(row, "inner"));
    if (e.function.empty()) throw ValidationError("decision grid: empty function");
    if (e.column < 1 || e.column > 8) {
      throw ValidationError("decision grid: column out of range for " + e.function);
    }
    if (e.row < 10 || e.row > 50 || e.row % 10 != 0) {
      throw ValidationError("decision grid: row must be 10..50 for " + e.function);
    }
    if (macro_for_column(e.column) != e.macro) {
      throw ValidationError("decision grid: macro does not own column for " +
                            e.function);
    }
    if (!names.insert(e.function).second) {
      throw ValidationError("decision grid: duplicate function " + e.function);
    }
    if (!cells.insert({e.row, e.column, e.inner_tenths}).second) {
      throw ValidationError("decision grid: duplicate cell for " + e.function);
    }
    grid.entries_.push_back(std::move(e));
  }
  if (grid.entries_.empty()) throw ValidationError("decision grid is empty");
  return grid;
}

DecisionGrid DecisionGrid::load(const std::filesystem::path& path) {
  return from_table(csv::read_file(path));
}

DecisionGrid DecisionGrid::load_default() {
  return load(default_data_dir() / "decision_grid.csv");
}

const GridEntry* DecisionGrid::find(std::string_view function) const {
  std::string key = to_lower(trim(function));
  for (const auto& e : entries_) {
    if (e.function == key) return &e;
  }
  return nullptr;
}

Priority DecisionGrid::priority(std::string_view function) const {
  const GridEntry* e = find(function);
  if (!e) {
    throw LookupError("citation function '" + std::string(function) +
                      "' is not in the decision grid");
  }
  return e->priority();
}

std::string DecisionGrid::resolve_intent(
    std::span<const std::string> candidates) const {
  if (candidates.empty()) {
    throw ValidationError("resolve_intent needs at least one candidate");
  }
  const GridEntry* best = nullptr;
  for (const auto& c : candidates) {
    const GridEntry* e = find(c);
    if (!e) {
      throw LookupError("citation function '" + c +
                        "' is not in the decision grid");
    }
    if (!best || e->priority() < best->priority()) best = e;
  }
  return best->function;
}

}  // namespace retrace::annotate
