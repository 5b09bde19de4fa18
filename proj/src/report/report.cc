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

#include "retrace/report/report.h"

#include <algorithm>
#include <array>
#include <set>

#include <json.hpp>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"

namespace retrace::report {

using nlohmann::json;

namespace {

int parse_int(const std::string& s, const char* what) {
  std::string t = trim(s);
  try {
    std::size_t used = 0;
    int v = std::stoi(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string("bad ") + what + " '" + s + "'");
  }
}

int sentiment_slot(const std::string& s) {
  if (s == "positive") return 0;
  if (s == "negative") return 1;
  if (s == "neutral") return 2;
  throw ValidationError("unknown sentiment '" + s + "'");
}

std::string group_key(const CitationRow& c, const std::map<std::string, int>& years,
                      const PeriodConfig& periods, Grouping grouping) {
  if (grouping == Grouping::kSection) {
    return c.section.empty() ? "unknown" : c.section;
  }
  auto it = years.find(c.doi);
  if (it == years.end()) return "unknown";
  if (grouping == Grouping::kYear) return std::to_string(it->second);
  return std::string(period_label(partition_period(it->second, periods)));
}

double ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void write_crosstab(const std::filesystem::path& dir, const std::string& stem,
                    const std::string& label_name, const CrossTab& tab) {
  csv::Writer w(dir / (stem + ".csv"),
                {"group", label_name, "positive", "negative", "neutral", "total",
                 "positive_pct", "negative_pct", "neutral_pct"});
  json groups = json::array();
  for (const auto& [group, rows] : tab.cells) {
    std::array<long, 3> all{0, 0, 0};
    json jrows = json::array();
    auto emit = [&](const std::string& label, const std::array<long, 3>& c) {
      long total = c[0] + c[1] + c[2];
      w.write({group, label, std::to_string(c[0]), std::to_string(c[1]),
               std::to_string(c[2]), std::to_string(total),
               percent_half_up(c[0], total), percent_half_up(c[1], total),
               percent_half_up(c[2], total)});
      jrows.push_back({{label_name, label},
                       {"positive", c[0]},
                       {"negative", c[1]},
                       {"neutral", c[2]},
                       {"total", total},
                       {"positive_share", ratio(c[0], total)},
                       {"negative_share", ratio(c[1], total)},
                       {"neutral_share", ratio(c[2], total)}});
    };
    for (const auto& [label, c] : rows) {
      for (int i = 0; i < 3; ++i) all[i] += c[i];
      emit(label, c);
    }
    emit("(all)", all);
    groups.push_back({{"group", group}, {"rows", jrows}});
  }
  write_text_file(dir / (stem + ".json"), json{{"groups", groups}}.dump(2) + "\n");
}

}  // namespace

std::vector<EntityRow> load_entities(const std::filesystem::path& path) {
  csv::Table t = csv::read_file(path);
  std::size_t doi = t.column("doi");
  std::size_t year = t.column("year");
  std::optional<std::size_t> area;
  if (t.has_column("area")) area = t.column("area");
  std::vector<EntityRow> out;
  for (const auto& row : t.rows) {
    if (row.size() < t.header.size()) throw DecodeError("short entity row", out.size());
    EntityRow e;
    e.doi = normalize_doi(row[doi]);
    e.year = parse_int(row[year], "year");
    if (area) e.areas = csv::split_multi(row[*area]);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CitationRow> load_annotations(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& citations) {
  csv::Table t = csv::read_file(path);
  std::size_t doi = t.column("doi");
  std::size_t index = t.column("pointer_index");
  std::size_t intent = t.column("intext_citation.intent");
  std::size_t sentiment = t.column("intext_citation.sentiment");
  std::size_t mentioned = t.column("retraction_mentioned");

  std::map<std::pair<std::string, int>, std::string> sections;
  if (citations) {
    csv::Table c = csv::read_file(*citations);
    std::size_t cdoi = c.column("doi");
    std::size_t csec = c.column("intext_citation.section");
    std::map<std::string, int> seen;
    for (const auto& row : c.rows) {
      std::string d = normalize_doi(row[cdoi]);
      sections[{d, seen[d]++}] = section_kind(row[csec]);
    }
  }

  std::vector<CitationRow> out;
  for (const auto& row : t.rows) {
    if (row.size() < t.header.size()) {
      throw DecodeError("short annotation row", out.size());
    }
    CitationRow c;
    c.doi = normalize_doi(row[doi]);
    c.pointer_index = parse_int(row[index], "pointer_index");
    c.intent = to_lower(trim(row[intent]));
    c.sentiment = to_lower(trim(row[sentiment]));
    std::string m = to_lower(trim(row[mentioned]));
    if (m != "yes" && m != "no" && !m.empty()) {
      throw ValidationError("retraction_mentioned must be yes or no, got '" + m + "'");
    }
    c.retraction_mentioned = m == "yes";
    if (citations) {
      auto it = sections.find({c.doi, c.pointer_index});
      if (it != sections.end()) c.section = it->second;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string section_kind(std::string_view value) {
  std::size_t colon = value.find(':');
  return trim(value.substr(0, colon));
}

std::vector<YearMentions> yearly_mentions(const std::vector<EntityRow>& entities,
                                          const std::vector<CitationRow>& citations) {
  std::set<std::string> mentioning;
  for (const auto& c : citations) {
    if (c.retraction_mentioned) mentioning.insert(c.doi);
  }
  std::map<int, YearMentions> by_year;
  for (const auto& e : entities) {
    auto& row = by_year.try_emplace(e.year, YearMentions{e.year, 0, 0}).first->second;
    if (mentioning.count(e.doi)) {
      ++row.mentioning;
    } else {
      ++row.not_mentioning;
    }
  }
  std::vector<YearMentions> out;
  for (const auto& [year, row] : by_year) out.push_back(row);
  return out;
}

std::map<Period, std::vector<AreaShare>> area_report(
    const std::vector<EntityRow>& entities, const PeriodConfig& periods,
    std::size_t top_n) {
  std::map<Period, std::map<std::string, long>> counts;
  for (const auto& e : entities) {
    Period p = partition_period(e.year, periods);
    if (p == Period::kOutOfRange) continue;
    for (const auto& a : e.areas) ++counts[p][a];
  }
  std::map<Period, std::vector<AreaShare>> out;
  for (const auto& [period, by_area] : counts) {
    long denominator = 0;
    std::vector<std::pair<std::string, long>> ranked(by_area.begin(), by_area.end());
    for (const auto& [a, n] : ranked) denominator += n;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    std::vector<AreaShare> rows;
    long others = 0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (i < top_n) {
        rows.push_back({ranked[i].first, ranked[i].second, denominator});
      } else {
        others += ranked[i].second;
      }
    }
    if (others > 0) rows.push_back({"Others", others, denominator});
    out[period] = std::move(rows);
  }
  return out;
}

long CrossTab::total() const {
  long n = 0;
  for (const auto& [g, rows] : cells) {
    for (const auto& [l, c] : rows) n += c[0] + c[1] + c[2];
  }
  return n;
}

Grouping parse_grouping(std::string_view name) {
  if (name == "period") return Grouping::kPeriod;
  if (name == "year") return Grouping::kYear;
  if (name == "section") return Grouping::kSection;
  throw ValidationError("grouping must be period, year or section");
}

CrossTab intent_sentiment(const std::vector<CitationRow>& citations,
                          const std::map<std::string, int>& year_by_doi,
                          const PeriodConfig& periods, Grouping grouping) {
  CrossTab tab;
  for (const auto& c : citations) {
    auto& cell = tab.cells[group_key(c, year_by_doi, periods, grouping)][c.intent];
    ++cell[sentiment_slot(c.sentiment)];
  }
  return tab;
}

CrossTab section_sentiment(const std::vector<CitationRow>& citations,
                           const std::map<std::string, int>& year_by_doi,
                           const PeriodConfig& periods, Grouping grouping) {
  CrossTab tab;
  for (const auto& c : citations) {
    std::string section = c.section.empty() ? "unknown" : c.section;
    auto& cell = tab.cells[group_key(c, year_by_doi, periods, grouping)][section];
    ++cell[sentiment_slot(c.sentiment)];
  }
  return tab;
}

void write_report(const std::filesystem::path& dir,
                  const std::vector<EntityRow>& entities,
                  const std::vector<CitationRow>& citations,
                  const PeriodConfig& periods, Grouping grouping) {
  periods.validate();
  std::filesystem::create_directories(dir);
  std::map<std::string, int> year_by_doi;
  for (const auto& e : entities) year_by_doi[e.doi] = e.year;

  // Yearly mentions.
  auto years = yearly_mentions(entities, citations);
  {
    csv::Writer w(dir / "yearly_mentions.csv",
                  {"year", "mentioning", "not_mentioning", "total", "percentage"});
    json rows = json::array();
    for (const auto& y : years) {
      w.write({std::to_string(y.year), std::to_string(y.mentioning),
               std::to_string(y.not_mentioning), std::to_string(y.total()),
               percent_half_up(y.mentioning, y.total())});
      rows.push_back({{"year", y.year},
                      {"mentioning", y.mentioning},
                      {"not_mentioning", y.not_mentioning},
                      {"total", y.total()},
                      {"share", ratio(y.mentioning, y.total())}});
    }
    write_text_file(dir / "yearly_mentions.json", json{{"years", rows}}.dump(2) + "\n");
  }

  // Areas by period.
  {
    auto areas = area_report(entities, periods);
    csv::Writer w(dir / "areas_by_period.csv", {"period", "area", "count", "share_pct"});
    json jperiods = json::array();
    for (const auto& [period, rows] : areas) {
      json jrows = json::array();
      for (const auto& a : rows) {
        w.write({std::string(period_label(period)), a.area, std::to_string(a.count),
                 percent_half_up(a.count, a.denominator)});
        jrows.push_back({{"area", a.area},
                         {"count", a.count},
                         {"share", ratio(a.count, a.denominator)}});
      }
      jperiods.push_back(
          {{"period", std::string(period_label(period))}, {"areas", jrows}});
    }
    write_text_file(dir / "areas_by_period.json",
                    json{{"periods", jperiods}}.dump(2) + "\n");
  }

  write_crosstab(dir, "intent_sentiment", "intent",
                 intent_sentiment(citations, year_by_doi, periods, grouping));
  write_crosstab(dir, "sections", "section",
                 section_sentiment(citations, year_by_doi, periods, grouping));

  // Corpus totals.
  std::map<std::string, long> sentiments, intents, sections, areas;
  std::set<std::string> mentioning;
  for (const auto& c : citations) {
    ++sentiments[c.sentiment];
    ++intents[c.intent];
    if (!c.section.empty()) ++sections[c.section];
    if (c.retraction_mentioned) mentioning.insert(c.doi);
  }
  long with_area = 0;
  for (const auto& e : entities) {
    if (!e.areas.empty()) ++with_area;
    for (const auto& a : e.areas) ++areas[a];
  }
  long yes = 0;
  for (const auto& e : entities) yes += mentioning.count(e.doi) ? 1 : 0;
  json summary{{"entities", entities.size()},
               {"entities_with_area", with_area},
               {"mention", {{"yes", yes}, {"no", static_cast<long>(entities.size()) - yes}}},
               {"citations", citations.size()},
               {"sentiment", sentiments},
               {"intent", intents},
               {"section", sections},
               {"area", areas},
               {"periods",
                {periods.publication, periods.partial, periods.full, periods.end}}};
  write_text_file(dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace retrace::report
