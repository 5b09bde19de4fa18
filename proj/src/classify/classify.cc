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

#include "retrace/classify/classify.h"

#include <tuple>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"

namespace retrace::classify {

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kIssnScimago:
      return "issn-scimago";
    case Provenance::kIsbnLccArea:
      return "isbn-lcc-area";
    case Provenance::kIsbnLccCategory:
      return "isbn-lcc-category";
    case Provenance::kManualPending:
      return "manual-pending";
    case Provenance::kManual:
      return "manual";
  }
  return "manual-pending";
}

namespace {

std::string label(std::string_view s) { return to_lower(collapse_whitespace(s)); }

std::set<std::string> label_set(std::string_view cell) {
  std::set<std::string> out;
  for (const auto& v : csv::split_multi(cell)) out.insert(label(v));
  return out;
}

csv::Table read_table(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError("missing mapping table " + path.string());
  }
  return csv::read_file(path);
}

SubjectAssignment pending(std::string reason) {
  SubjectAssignment a;
  a.provenance = Provenance::kManualPending;
  a.reason = std::move(reason);
  return a;
}

}  // namespace

MappingTables MappingTables::load(const std::filesystem::path& dir) {
  MappingTables t;
  {
    csv::Table j = read_table(dir / "scimago_journals.csv");
    std::size_t issn = j.column("issn"), areas = j.column("areas"),
                cats = j.column("categories");
    for (std::size_t r = 0; r < j.rows.size(); ++r) {
      const auto& row = j.rows[r];
      if (!is_valid_issn(row[issn])) {
        throw ValidationError("scimago_journals.csv row " + std::to_string(r + 1) +
                              ": invalid ISSN '" + row[issn] + "'");
      }
      SubjectAssignment a;
      a.areas = label_set(row[areas]);
      a.categories = label_set(row[cats]);
      a.provenance = Provenance::kIssnScimago;
      t.journals[canonical_issn(row[issn])] = std::move(a);
    }
  }
  {
    csv::Table l = read_table(dir / "lcc_disciplines.csv");
    std::size_t prefix = l.column("prefix"), disc = l.column("discipline");
    for (const auto& row : l.rows) {
      std::string p = trim(row[prefix]);
      bool ok = !p.empty() && p.size() <= 3;
      for (char c : p) ok = ok && c >= 'A' && c <= 'Z';
      if (!ok) throw ValidationError("LCC prefix must be 1-3 uppercase letters: '" + p + "'");
      t.lcc_disciplines[p] = label(row[disc]);
    }
  }
  {
    csv::Table a = read_table(dir / "scimago_areas.csv");
    std::size_t lab = a.column("label"), area = a.column("area");
    for (const auto& row : a.rows) t.areas[label(row[lab])].insert(label(row[area]));
  }
  {
    csv::Table c = read_table(dir / "scimago_categories.csv");
    std::size_t lab = c.column("label"), cat = c.column("category"),
                parent = c.column("parent_area");
    for (const auto& row : c.rows) {
      t.categories[label(row[lab])].insert({label(row[cat]), label(row[parent])});
    }
  }
  {
    csv::Table i = read_table(dir / "isbn_lcc.csv");
    std::size_t isbn = i.column("isbn"), lcc = i.column("lcc");
    for (const auto& row : i.rows) t.isbn_lcc[canonical_isbn(row[isbn])] = trim(row[lcc]);
  }
  if (std::filesystem::exists(dir / "manual.csv")) {
    csv::Table m = csv::read_file(dir / "manual.csv");
    std::size_t doi = m.column("doi"), areas = m.column("areas"),
                cats = m.column("categories");
    for (const auto& row : m.rows) {
      SubjectAssignment a;
      a.areas = label_set(row[areas]);
      a.categories = label_set(row[cats]);
      a.provenance = Provenance::kManual;
      t.manual[normalize_doi(row[doi])] = std::move(a);
    }
  }
  return t;
}

SubjectAssignment classify_by_issn(std::string_view issn, const MappingTables& tables) {
  auto it = tables.journals.find(canonical_issn(issn));
  if (it == tables.journals.end()) return pending("ISSN not in the journal index");
  return it->second;
}

std::string lcc_prefix(std::string_view lcc) {
  std::string out;
  for (char c : trim(lcc)) {
    char u = (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
    if (u < 'A' || u > 'Z') break;
    out.push_back(u);
  }
  return out;
}

SubjectAssignment map_lcc(std::string_view isbn, const MappingTables& tables) {
  auto code = tables.isbn_lcc.find(canonical_isbn(isbn));
  if (code == tables.isbn_lcc.end()) return pending("ISBN not in the LCC snapshot");
  std::string prefix = lcc_prefix(code->second);
  auto disc = tables.lcc_disciplines.find(prefix);
  if (disc == tables.lcc_disciplines.end()) {
    return pending("LCC prefix '" + prefix + "' has no discipline");
  }
  const std::string& discipline = disc->second;

  if (auto a = tables.areas.find(discipline); a != tables.areas.end()) {
    if (a->second.size() != 1) return pending("discipline '" + discipline + "' matches several areas");
    SubjectAssignment out;
    const std::string& area = *a->second.begin();
    out.areas = {area};
    out.categories = {area + " (miscellaneous)"};
    out.provenance = Provenance::kIsbnLccArea;
    return out;
  }
  if (auto c = tables.categories.find(discipline); c != tables.categories.end()) {
    if (c->second.size() != 1) {
      return pending("discipline '" + discipline + "' matches several categories");
    }
    SubjectAssignment out;
    out.areas = {c->second.begin()->parent_area};
    out.categories = {c->second.begin()->category};
    out.provenance = Provenance::kIsbnLccCategory;
    return out;
  }
  return pending("discipline '" + discipline + "' matches no area or category");
}

SubjectAssignment classify_venue(std::string_view source_id, const MappingTables& tables) {
  std::vector<std::string> ids = csv::split_multi(source_id);
  if (ids.empty()) return pending("no venue identifier");
  SubjectAssignment merged;
  std::string reasons;
  bool found = false;
  for (const auto& raw : ids) {
    auto id = parse_venue_id(raw);
    if (!id) throw ValidationError("malformed venue identifier '" + raw + "'");
    SubjectAssignment a = id->kind == VenueIdKind::kIssn ? classify_by_issn(id->value, tables)
                                                         : map_lcc(id->value, tables);
    if (a.pending()) {
      if (!reasons.empty()) reasons += "; ";
      reasons += a.reason;
      continue;
    }
    if (!found) merged.provenance = a.provenance;
    found = true;
    merged.areas.insert(a.areas.begin(), a.areas.end());
    merged.categories.insert(a.categories.begin(), a.categories.end());
  }
  if (!found) return pending(reasons);
  return merged;
}

ClassifyStats classify_file(const std::filesystem::path& in,
                            const std::filesystem::path& tables_dir,
                            const std::filesystem::path& out) {
  MappingTables tables = MappingTables::load(tables_dir);
  csv::Table t = csv::read_file(in);
  std::size_t doi = t.column("doi");
  std::size_t source = t.column("source_id");
  csv::Row header = t.header;
  header.push_back("area");
  header.push_back("category");
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  csv::Writer w(out, header);
  std::filesystem::path pending_path = out;
  pending_path.replace_extension(".pending.csv");
  csv::Writer p(pending_path, {"doi", "source_id", "reason"});

  ClassifyStats stats;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    csv::Row row = t.rows[r];
    row.resize(t.header.size());
    SubjectAssignment a;
    auto manual = tables.manual.find(normalize_doi(row[doi]));
    if (manual != tables.manual.end()) {
      a = manual->second;
    } else {
      try {
        a = classify_venue(row[source], tables);
      } catch (const ValidationError& e) {
        throw DecodeError(std::string(e.what()) + " for " + row[doi], r);
      }
    }
    ++stats.entities;
    if (a.pending()) {
      ++stats.pending;
      p.write({row[doi], row[source], a.reason});
    } else {
      ++stats.assigned;
    }
    row.push_back(csv::join_multi({a.areas.begin(), a.areas.end()}));
    row.push_back(csv::join_multi({a.categories.begin(), a.categories.end()}));
    w.write(row);
  }
  return stats;
}

}  // namespace retrace::classify
