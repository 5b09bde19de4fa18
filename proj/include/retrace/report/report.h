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

#ifndef RETRACE_REPORT_REPORT_H_
#define RETRACE_REPORT_REPORT_H_

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "retrace/report/period.h"

namespace retrace::report {

struct EntityRow {
  std::string doi;
  int year = 0;
  std::vector<std::string> areas;
};

struct CitationRow {
  std::string doi;
  int pointer_index = 0;
  std::string intent;
  std::string sentiment;
  bool retraction_mentioned = false;
  std::string section;  // section kind; empty when unknown
};

// classified.csv: needs doi, year and area (`;`-separated).
std::vector<EntityRow> load_entities(const std::filesystem::path& path);
// annotated.csv (export header). When `citations` is given, the section of
// each row is joined from the extraction output by (doi, pointer index).
std::vector<CitationRow> load_annotations(
    const std::filesystem::path& path,
    const std::optional<std::filesystem::path>& citations = std::nullopt);

// Kind part of an extraction section value: "middle section: Methods and
// data" -> "middle section".
std::string section_kind(std::string_view value);

struct YearMentions {
  int year;
  long mentioning;
  long not_mentioning;
  long total() const { return mentioning + not_mentioning; }
};

// Entity roll-up: an entity mentions the retraction when any of its
// annotated citations does. Years without entities are omitted.
std::vector<YearMentions> yearly_mentions(const std::vector<EntityRow>& entities,
                                          const std::vector<CitationRow>& citations);

struct AreaShare {
  std::string area;  // "Others" for the remainder bucket
  long count;
  long denominator;  // area assignments in the period
};

// Per period, the top_n areas by assignment count (ties by label) and an
// "Others" bucket for the rest when non-empty. Multi-area entities count
// once per area; shares are over area assignments.
std::map<Period, std::vector<AreaShare>> area_report(
    const std::vector<EntityRow>& entities, const PeriodConfig& periods,
    std::size_t top_n = 10);

// Rows of one cross-tabulation, keyed by (group, label). Sentiment counts in
// positive/negative/neutral order.
struct CrossTab {
  std::map<std::string, std::map<std::string, std::array<long, 3>>> cells;
  long total() const;
};

enum class Grouping { kPeriod, kYear, kSection };
Grouping parse_grouping(std::string_view name);

// Intent x sentiment and section x sentiment per group.
CrossTab intent_sentiment(const std::vector<CitationRow>& citations,
                          const std::map<std::string, int>& year_by_doi,
                          const PeriodConfig& periods, Grouping grouping);
CrossTab section_sentiment(const std::vector<CitationRow>& citations,
                           const std::map<std::string, int>& year_by_doi,
                           const PeriodConfig& periods, Grouping grouping);

// Writes yearly_mentions, areas_by_period, intent_sentiment and sections
// (CSV with two-decimal half-up percentages, JSON at full precision) plus
// summary.json with corpus totals.
void write_report(const std::filesystem::path& out_dir,
                  const std::vector<EntityRow>& entities,
                  const std::vector<CitationRow>& citations,
                  const PeriodConfig& periods, Grouping grouping = Grouping::kPeriod);

}  // namespace retrace::report

#endif  // RETRACE_REPORT_REPORT_H_
