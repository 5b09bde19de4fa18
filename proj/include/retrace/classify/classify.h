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

#ifndef RETRACE_CLASSIFY_CLASSIFY_H_
#define RETRACE_CLASSIFY_CLASSIFY_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace retrace::classify {

enum class Provenance { kIssnScimago, kIsbnLccArea, kIsbnLccCategory, kManualPending, kManual };

std::string_view provenance_name(Provenance p);

struct SubjectAssignment {
  std::set<std::string> areas;
  std::set<std::string> categories;
  Provenance provenance = Provenance::kManualPending;
  std::string reason;  // why an item is pending

  bool pending() const { return provenance == Provenance::kManualPending; }
};

struct CategoryEntry {
  std::string category;
  std::string parent_area;
  bool operator<(const CategoryEntry& o) const {
    return std::tie(category, parent_area) < std::tie(o.category, o.parent_area);
  }
};

// Bundled lookup snapshots. Every label is stored lowercase and trimmed.
struct MappingTables {
  std::map<std::string, SubjectAssignment> journals;            // canonical ISSN
  std::map<std::string, std::string> lcc_disciplines;           // prefix -> discipline
  std::map<std::string, std::set<std::string>> areas;           // label -> areas
  std::map<std::string, std::set<CategoryEntry>> categories;    // label -> entries
  std::map<std::string, std::string> isbn_lcc;                  // canonical ISBN -> LCC
  std::map<std::string, SubjectAssignment> manual;              // doi -> assignment

  // Reads scimago_journals.csv (`issn,areas,categories`), lcc_disciplines.csv
  // (`prefix,discipline`), scimago_areas.csv (`label,area`),
  // scimago_categories.csv (`label,category,parent_area`) and isbn_lcc.csv
  // (`isbn,lcc`) from `dir`, plus manual.csv (`doi,areas,categories`) when
  // present. Throws ConfigError for a missing file and ValidationError for
  // malformed rows.
  static MappingTables load(const std::filesystem::path& dir);
};

SubjectAssignment classify_by_issn(std::string_view issn, const MappingTables& tables);

// Alphabetic head of an LCC call number: "RC360" -> "RC".
std::string lcc_prefix(std::string_view lcc);

// 1) LCC prefix -> discipline; 2) discipline equal to an area label -> that
// area and "<area> (miscellaneous)"; 3) else equal to a category label ->
// that category and its parent area; 4) else manual-pending. A label that
// resolves to more than one area or category is also manual-pending.
SubjectAssignment map_lcc(std::string_view isbn, const MappingTables& tables);

// Dispatches each `;`-separated identifier to the ISSN or ISBN path and
// merges the hits. Empty input is manual-pending; a malformed identifier
// throws ValidationError naming it.
SubjectAssignment classify_venue(std::string_view source_id, const MappingTables& tables);

struct ClassifyStats {
  long entities = 0;
  long assigned = 0;
  long pending = 0;
};

// Reads the harvest CSV, appends `area` and `category` (`;`-separated) and
// writes `<out stem>.pending.csv` (`doi,source_id,reason`).
ClassifyStats classify_file(const std::filesystem::path& in,
                            const std::filesystem::path& tables_dir,
                            const std::filesystem::path& out);

}  // namespace retrace::classify

#endif  // RETRACE_CLASSIFY_CLASSIFY_H_
