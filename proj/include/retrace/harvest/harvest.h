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

#ifndef RETRACE_HARVEST_HARVEST_H_
#define RETRACE_HARVEST_HARVEST_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retrace/harvest/transport.h"

namespace retrace::harvest {

struct CitationRecord {
  std::string citing_doi;
  std::string cited_doi;
  std::string creation_date;  // YYYY, YYYY-MM or YYYY-MM-DD

  bool operator==(const CitationRecord&) const = default;
};

struct EntityMetadata {
  std::string doi;
  int year = 0;  // 0 when the index has no year
  std::string title;
  std::string source_id;  // `;`-separated "issn:..."/"isbn:..." in canonical form
  std::string source_title;
  std::optional<std::string> abstract;
};

struct MetadataMiss {
  std::string doi;
  std::string reason;
};

struct MetadataResult {
  std::vector<EntityMetadata> records;  // input order
  std::vector<MetadataMiss> misses;     // input order
  std::vector<std::string> warnings;    // dropped malformed venue ids
};

struct RetractionStatus {
  std::string doi;
  bool retracted = false;
  std::optional<std::string> nature;
};

// Valid ISO-8601 calendar date at year, month or day precision, year >= 1000.
bool valid_creation_date(std::string_view date);
int creation_year(std::string_view date);

// Decodes a citations response body. Records whose cited DOI differs from
// the seed are dropped; the rest are deduplicated on (citing, cited) keeping
// the earliest creation date and sorted by creation date then citing DOI.
// Throws DecodeError with the offending record index.
std::vector<CitationRecord> parse_citations(std::string_view body, std::string_view seed_doi);

std::vector<CitationRecord> fetch_citations(std::string_view seed_doi, Client& client);

// Requests `/metadata/<doi>__<doi>...` in batches of `page_size`, at most
// `concurrency` batches in flight. A failed batch turns every DOI in it into
// a miss; DOIs absent from a response are misses too.
MetadataResult fetch_metadata(const std::vector<std::string>& dois, Client& client,
                              std::size_t page_size = 10, int concurrency = 4);

// Offline snapshot `doi,retracted,nature`; `retracted` is yes/no, true/false
// or 1/0. Duplicate rows merge, retracted if any row says so.
class RetractionDb {
 public:
  static RetractionDb load(const std::filesystem::path& path);
  RetractionStatus status(std::string_view doi) const;
  std::vector<RetractionStatus> lookup(const std::vector<std::string>& dois) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, RetractionStatus> entries_;
};

struct HarvestOptions {
  double rate_per_second = 1.0;  // ignored for fixtures
  RetryPolicy retry;
  int concurrency = 4;
  std::size_t page_size = 10;
  std::optional<std::filesystem::path> record_to;  // live mode only
};

// Fixture path or http(s) URL.
std::unique_ptr<Transport> make_transport(const std::string& endpoint,
                                          const HarvestOptions& options);

struct HarvestSummary {
  std::size_t citations = 0;
  std::size_t entities = 0;
  std::size_t with_source_id = 0;
  std::size_t with_source_title = 0;
  std::size_t retracted = 0;
  std::size_t misses = 0;
};

extern const char kHarvestHeader[];

// Writes `doi,year,title,source_id,source_title,retracted` in citation order
// and `<out stem>.misses.csv` (`doi,reason`). Misses keep a row with the
// creation year and empty metadata.
HarvestSummary run_harvest(std::string_view seed_doi, const std::string& endpoint,
                           const std::filesystem::path& out,
                           const std::filesystem::path& retraction_db,
                           const HarvestOptions& options = {});

}  // namespace retrace::harvest

#endif  // RETRACE_HARVEST_HARVEST_H_
