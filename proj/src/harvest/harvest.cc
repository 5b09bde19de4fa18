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

#include "retrace/harvest/harvest.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <set>
#include <thread>

#include <json.hpp>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"

namespace retrace::harvest {

using nlohmann::json;

const char kHarvestHeader[] = "doi,year,title,source_id,source_title,retracted";

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::string string_field(const json& obj, const char* key) {
  if (!obj.contains(key) || obj[key].is_null()) return "";
  if (obj[key].is_string()) return obj[key].get<std::string>();
  return obj[key].dump();
}

// COCI prefixes identifiers with "coci => " in some releases.
std::string clean_doi(std::string s) {
  std::size_t arrow = s.find("=>");
  if (arrow != std::string::npos) s = s.substr(arrow + 2);
  return normalize_doi(s);
}

}  // namespace

bool valid_creation_date(std::string_view date) {
  std::vector<std::string> parts = split(trim(date), '-');
  if (parts.empty() || parts.size() > 3) return false;
  int y, m = 1, d = 1;
  if (parts[0].size() != 4 || !parse_int(parts[0], y) || y < 1000) return false;
  if (parts.size() >= 2 && (parts[1].size() != 2 || !parse_int(parts[1], m) || m < 1 || m > 12)) {
    return false;
  }
  if (parts.size() == 3) {
    if (parts[2].size() != 2 || !parse_int(parts[2], d)) return false;
    static constexpr int kDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    int max = m == 2 && !leap ? 28 : kDays[m - 1];
    if (d < 1 || d > max) return false;
  }
  return true;
}

int creation_year(std::string_view date) {
  int y = 0;
  std::string t = trim(date);
  if (t.size() < 4 || !parse_int(std::string_view(t).substr(0, 4), y)) return 0;
  return y;
}

std::vector<CitationRecord> parse_citations(std::string_view body, std::string_view seed_doi) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    throw DecodeError("citations response is not a JSON array", 0);
  }
  std::string seed = normalize_doi(seed_doi);
  std::map<std::pair<std::string, std::string>, CitationRecord> unique;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& r = doc[i];
    if (!r.is_object() || !r.contains("citing") || !r.contains("cited")) {
      throw DecodeError("citation record lacks citing/cited", i);
    }
    CitationRecord c{clean_doi(string_field(r, "citing")), clean_doi(string_field(r, "cited")),
                     trim(string_field(r, "creation"))};
    if (!is_valid_doi(c.citing_doi) || !is_valid_doi(c.cited_doi)) {
      throw DecodeError("invalid DOI in citation record", i);
    }
    if (!valid_creation_date(c.creation_date)) {
      throw DecodeError("invalid creation date '" + c.creation_date + "'", i);
    }
    if (c.citing_doi == c.cited_doi) throw DecodeError("self-citation record", i);
    if (c.cited_doi != seed) continue;
    auto key = std::make_pair(c.citing_doi, c.cited_doi);
    auto it = unique.find(key);
    if (it == unique.end()) {
      unique.emplace(key, std::move(c));
    } else if (c.creation_date < it->second.creation_date) {
      it->second = std::move(c);
    }
  }
  std::vector<CitationRecord> out;
  out.reserve(unique.size());
  for (auto& [_, c] : unique) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const CitationRecord& a, const CitationRecord& b) {
    return std::tie(a.creation_date, a.citing_doi) < std::tie(b.creation_date, b.citing_doi);
  });
  return out;
}

std::vector<CitationRecord> fetch_citations(std::string_view seed_doi, Client& client) {
  std::string seed = normalize_doi(seed_doi);
  if (!is_valid_doi(seed)) throw ValidationError("invalid seed DOI '" + std::string(seed_doi) + "'");
  HttpResponse r = client.get("/citations/" + seed);
  if (r.status == 404) return {};
  if (r.status != 200) {
    throw TransportError("citations request returned HTTP " + std::to_string(r.status));
  }
  return parse_citations(r.body, seed);
}

namespace {

struct BatchOutcome {
  std::map<std::string, EntityMetadata> found;
  std::string error;  // non-empty when the whole batch failed
  std::vector<std::string> warnings;
};

BatchOutcome decode_metadata(const std::string& body) {
  BatchOutcome out;
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    out.error = "metadata response is not a JSON array";
    return out;
  }
  for (const json& r : doc) {
    if (!r.is_object() || !r.contains("doi")) continue;
    EntityMetadata m;
    m.doi = clean_doi(string_field(r, "doi"));
    std::string year = trim(string_field(r, "year"));
    if (!year.empty() && year.front() == '"') year = trim(year.substr(1, year.size() - 2));
    if (!parse_int(year, m.year)) m.year = 0;
    m.title = trim(string_field(r, "title"));
    m.source_title = trim(string_field(r, "source_title"));
    std::vector<std::string> ids;
    for (const auto& raw : csv::split_multi(string_field(r, "source_id"))) {
      auto id = parse_venue_id(raw);
      if (!id) {
        out.warnings.push_back(m.doi + ": dropped malformed venue id '" + raw + "'");
        continue;
      }
      std::string s = (id->kind == VenueIdKind::kIssn ? "issn:" : "isbn:") + id->value;
      if (std::find(ids.begin(), ids.end(), s) == ids.end()) ids.push_back(s);
    }
    m.source_id = csv::join_multi(ids);
    if (r.contains("abstract") && r["abstract"].is_string()) {
      m.abstract = r["abstract"].get<std::string>();
    }
    out.found.emplace(m.doi, std::move(m));
  }
  return out;
}

}  // namespace

MetadataResult fetch_metadata(const std::vector<std::string>& dois, Client& client,
                              std::size_t page_size, int concurrency) {
  if (dois.empty()) throw ValidationError("fetch_metadata needs at least one DOI");
  if (page_size == 0) throw ValidationError("page size must be positive");
  std::vector<std::string> norm;
  norm.reserve(dois.size());
  for (const auto& d : dois) norm.push_back(normalize_doi(d));

  std::size_t batches = (norm.size() + page_size - 1) / page_size;
  std::vector<BatchOutcome> outcomes(batches);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < batches; b = next++) {
      std::size_t lo = b * page_size, hi = std::min(norm.size(), lo + page_size);
      std::vector<std::string> slice(norm.begin() + lo, norm.begin() + hi);
      try {
        HttpResponse r = client.get("/metadata/" + join(slice, "__"));
        if (r.status != 200) {
          outcomes[b].error = "HTTP " + std::to_string(r.status);
        } else {
          outcomes[b] = decode_metadata(r.body);
        }
      } catch (const TransportError& e) {
        outcomes[b].error = e.what();
      }
    }
  };
  int n = std::max(1, std::min<int>(concurrency, static_cast<int>(batches)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  MetadataResult result;
  for (std::size_t i = 0; i < norm.size(); ++i) {
    BatchOutcome& o = outcomes[i / page_size];
    if (!o.error.empty()) {
      result.misses.push_back({norm[i], o.error});
      continue;
    }
    auto it = o.found.find(norm[i]);
    if (it == o.found.end()) {
      result.misses.push_back({norm[i], "not in index"});
    } else {
      result.records.push_back(it->second);
    }
  }
  for (auto& o : outcomes) {
    result.warnings.insert(result.warnings.end(), o.warnings.begin(), o.warnings.end());
  }
  return result;
}

RetractionDb RetractionDb::load(const std::filesystem::path& path) {
  csv::Table t;
  try {
    t = csv::read_file(path);
  } catch (const Error& e) {
    throw ConfigError("unreadable retraction db " + path.string() + ": " + e.what());
  }
  if (!t.has_column("doi") || !t.has_column("retracted")) {
    throw ConfigError("retraction db needs doi and retracted columns: " + path.string());
  }
  std::size_t doi = t.column("doi"), flag = t.column("retracted");
  std::optional<std::size_t> nature;
  if (t.has_column("nature")) nature = t.column("nature");
  RetractionDb db;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    std::string v = to_lower(trim(row[flag]));
    bool retracted;
    if (v == "yes" || v == "true" || v == "1") {
      retracted = true;
    } else if (v == "no" || v == "false" || v == "0") {
      retracted = false;
    } else {
      throw ConfigError("retraction db row " + std::to_string(r + 1) + ": bad flag '" + v + "'");
    }
    std::string key = normalize_doi(row[doi]);
    RetractionStatus& s = db.entries_[key];
    s.doi = key;
    if (retracted) {
      s.retracted = true;
      std::string n = nature && *nature < row.size() ? trim(row[*nature]) : "";
      if (!n.empty()) s.nature = s.nature ? *s.nature + "; " + n : n;
    }
  }
  return db;
}

RetractionStatus RetractionDb::status(std::string_view doi) const {
  std::string key = normalize_doi(doi);
  auto it = entries_.find(key);
  if (it == entries_.end()) return {key, false, std::nullopt};
  return it->second;
}

std::vector<RetractionStatus> RetractionDb::lookup(const std::vector<std::string>& dois) const {
  std::vector<RetractionStatus> out;
  out.reserve(dois.size());
  for (const auto& d : dois) out.push_back(status(d));
  return out;
}

std::unique_ptr<Transport> make_transport(const std::string& endpoint,
                                          const HarvestOptions& options) {
  if (!is_url(endpoint)) return std::make_unique<FixtureTransport>(endpoint);
  std::unique_ptr<Transport> t = std::make_unique<HttpTransport>(endpoint);
  if (options.record_to) t = std::make_unique<RecordingTransport>(std::move(t), *options.record_to);
  return t;
}

HarvestSummary run_harvest(std::string_view seed_doi, const std::string& endpoint,
                           const std::filesystem::path& out,
                           const std::filesystem::path& retraction_db,
                           const HarvestOptions& options) {
  RetractionDb db = RetractionDb::load(retraction_db);
  std::unique_ptr<Transport> transport = make_transport(endpoint, options);
  TokenBucket bucket(is_url(endpoint) ? options.rate_per_second : 0.0);
  RetryPolicy retry = options.retry;
  if (!is_url(endpoint)) retry.max_retries = 0;
  Client client(*transport, bucket, retry);

  std::vector<CitationRecord> citations = fetch_citations(seed_doi, client);
  HarvestSummary summary;
  summary.citations = citations.size();
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  csv::Writer w(out, split(kHarvestHeader, ','));
  std::filesystem::path miss_path = out;
  miss_path.replace_extension(".misses.csv");
  csv::Writer mw(miss_path, {"doi", "reason"});
  if (citations.empty()) return summary;

  std::vector<std::string> dois;
  for (const auto& c : citations) dois.push_back(c.citing_doi);
  MetadataResult meta = fetch_metadata(dois, client, options.page_size, options.concurrency);
  std::map<std::string, const EntityMetadata*> by_doi;
  for (const auto& m : meta.records) by_doi[m.doi] = &m;
  for (const auto& miss : meta.misses) mw.write({miss.doi, miss.reason});

  for (const auto& c : citations) {
    EntityMetadata m;
    if (auto it = by_doi.find(c.citing_doi); it != by_doi.end()) m = *it->second;
    m.doi = c.citing_doi;
    if (m.year == 0) m.year = creation_year(c.creation_date);
    RetractionStatus s = db.status(c.citing_doi);
    w.write({m.doi, std::to_string(m.year), m.title, m.source_id, m.source_title,
             s.retracted ? "yes" : "no"});
    ++summary.entities;
    summary.with_source_id += !m.source_id.empty();
    summary.with_source_title += !m.source_title.empty();
    summary.retracted += s.retracted;
  }
  summary.misses = meta.misses.size();
  return summary;
}

}  // namespace retrace::harvest
