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

#ifndef RETRACE_ANNOTATE_GRID_H_
#define RETRACE_ANNOTATE_GRID_H_

#include <compare>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retrace/common/csv.h"

namespace retrace::annotate {

enum class Macro { kReviewing, kAffecting, kReferring };

std::string_view macro_name(Macro m);
Macro parse_macro(std::string_view name);

// Citation-function priority: row score + column score + inner value.
// Held in exact tenths so that sums like 11.2 compare without rounding.
class Priority {
 public:
  constexpr explicit Priority(int tenths) : tenths_(tenths) {}
  constexpr int tenths() const { return tenths_; }
  double value() const { return tenths_ / 10.0; }
  std::string str() const;  // "11.2"
  constexpr auto operator<=>(const Priority&) const = default;

 private:
  int tenths_;
};

struct GridEntry {
  std::string function;      // CiTO function name, lowercase
  Macro macro;
  int column;                // 1..8
  std::string column_label;  // "consistent with", "cited entity", ...
  int row;                   // 10, 20, 30, 40 or 50
  int inner_tenths;          // 1..6, the bracketed value times ten

  Priority priority() const {
    return Priority(row * 10 + column * 10 + inner_tenths);
  }
};

// The citation-function decision table. Loaded from a CSV transcription
// (`function,macro,column,column_label,row,inner`) and validated on load:
// every function appears once and every (row, column, inner) cell is
// distinct, which makes priorities collision-free.
class DecisionGrid {
 public:
  static DecisionGrid from_table(const csv::Table& table);
  static DecisionGrid load(const std::filesystem::path& path);
  // The transcription bundled under data/.
  static DecisionGrid load_default();

  const std::vector<GridEntry>& entries() const { return entries_; }
  const GridEntry* find(std::string_view function) const;
  bool contains(std::string_view function) const { return find(function); }

  // Throws LookupError for functions outside the grid.
  Priority priority(std::string_view function) const;

  // The candidate with the smallest priority. A singleton resolves to itself.
  // Throws ValidationError on an empty set and LookupError on unknown names.
  std::string resolve_intent(std::span<const std::string> candidates) const;

 private:
  std::vector<GridEntry> entries_;
};

}  // namespace retrace::annotate

#endif  // RETRACE_ANNOTATE_GRID_H_
