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

#include "retrace/annotate/store.h"

#include <fstream>
#include <mutex>

#include <json.hpp>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"

namespace retrace::annotate {

using nlohmann::json;

std::string_view sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::kPositive:
      return "positive";
    case Sentiment::kNegative:
      return "negative";
    case Sentiment::kNeutral:
      return "neutral";
  }
  return "";
}

Sentiment parse_sentiment(std::string_view name) {
  std::string n = to_lower(trim(name));
  if (n == "positive") return Sentiment::kPositive;
  if (n == "negative") return Sentiment::kNegative;
  if (n == "neutral") return Sentiment::kNeutral;
  throw ValidationError("sentiment must be positive, negative or neutral, got '" +
                        std::string(name) + "'");
}

namespace {

json to_log_json(const Annotation& a) {
  json j;
  j["doi"] = a.key.doi;
  j["pointer_index"] = a.key.pointer_index;
  j["version"] = a.version;
  j["intent"] = a.intent ? json(*a.intent) : json(nullptr);
  j["sentiment"] =
      a.sentiment ? json(std::string(sentiment_name(*a.sentiment))) : json(nullptr);
  j["retraction_mentioned"] =
      a.retraction_mentioned ? json(*a.retraction_mentioned) : json(nullptr);
  j["candidates"] = a.candidates;
  j["annotator"] = a.annotator;
  return j;
}

Annotation from_log_json(const json& j) {
  Annotation a;
  a.key.doi = normalize_doi(j.at("doi").get<std::string>());
  a.key.pointer_index = j.at("pointer_index").get<int>();
  a.version = j.at("version").get<long>();
  if (j.contains("intent") && !j["intent"].is_null()) {
    a.intent = to_lower(trim(j["intent"].get<std::string>()));
  }
  if (j.contains("sentiment") && !j["sentiment"].is_null()) {
    a.sentiment = parse_sentiment(j["sentiment"].get<std::string>());
  }
  if (j.contains("retraction_mentioned") && !j["retraction_mentioned"].is_null()) {
    a.retraction_mentioned = j["retraction_mentioned"].get<bool>();
  }
  if (j.contains("candidates")) {
    for (const auto& c : j["candidates"]) {
      a.candidates.push_back(to_lower(trim(c.get<std::string>())));
    }
  }
  if (j.contains("annotator") && j["annotator"].is_string()) {
    a.annotator = j["annotator"].get<std::string>();
  }
  return a;
}

std::string yes_no(const std::optional<bool>& b) {
  if (!b) return "";
  return *b ? "yes" : "no";
}

}  // namespace

AnnotationStore::AnnotationStore(std::filesystem::path log_path,
                                 const DecisionGrid& grid)
    : log_path_(std::move(log_path)), grid_(grid) {
  if (!std::filesystem::exists(log_path_)) return;
  std::ifstream in(log_path_);
  if (!in) throw ConfigError("cannot read annotation log " + log_path_.string());
  std::string line;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      ++index;
      continue;
    }
    Annotation write;
    try {
      write = from_log_json(json::parse(line));
    } catch (const json::exception& e) {
      throw DecodeError(std::string("annotation log: ") + e.what(), index);
    } catch (const ValidationError& e) {
      throw DecodeError(std::string("annotation log: ") + e.what(), index);
    }
    auto& versions = history_[write.key];
    long expected = versions.empty() ? 1 : versions.back().version + 1;
    if (write.version != expected) {
      throw DecodeError("annotation log: version gap for " + write.key.doi,
                        index);
    }
    Annotation merged = merge(write);
    validate(merged);
    versions.push_back(std::move(merged));
    ++index;
  }
}

Annotation AnnotationStore::merge(const Annotation& write) const {
  Annotation merged = write;
  auto it = history_.find(write.key);
  if (it == history_.end() || it->second.empty()) {
    if (merged.candidates.size() > 0 && !merged.intent) {
      merged.intent = grid_.resolve_intent(merged.candidates);
    }
    return merged;
  }
  const Annotation& prev = it->second.back();
  if (!merged.intent && merged.candidates.empty()) {
    merged.intent = prev.intent;
    merged.candidates = prev.candidates;
  } else if (!merged.intent) {
    merged.intent = grid_.resolve_intent(merged.candidates);
  }
  if (!merged.sentiment) merged.sentiment = prev.sentiment;
  if (!merged.retraction_mentioned) {
    merged.retraction_mentioned = prev.retraction_mentioned;
  }
  if (merged.annotator.empty()) merged.annotator = prev.annotator;
  return merged;
}

void AnnotationStore::validate(const Annotation& a) const {
  if (a.key.doi.empty() || a.key.pointer_index < 0) {
    throw ValidationError("annotation needs a DOI and a non-negative pointer index");
  }
  if (a.intent && !grid_.contains(*a.intent)) {
    throw ValidationError("intent '" + *a.intent + "' is not a grid function");
  }
  if (a.intent && !a.candidates.empty()) {
    std::string resolved = grid_.resolve_intent(a.candidates);
    if (resolved != *a.intent) {
      throw ValidationError("intent '" + *a.intent +
                            "' is not the highest-priority candidate ('" +
                            resolved + "')");
    }
  }
}

long AnnotationStore::record(const Annotation& write) {
  Annotation w = write;
  w.key.doi = normalize_doi(w.key.doi);
  if (w.intent) w.intent = to_lower(trim(*w.intent));
  for (auto& c : w.candidates) c = to_lower(trim(c));

  std::unique_lock lock(mu_);
  auto it = history_.find(w.key);
  long stored = (it == history_.end() || it->second.empty())
                    ? 0
                    : it->second.back().version;
  if (w.version != stored + 1) {
    throw ConflictError("stale annotation version " + std::to_string(w.version) +
                            " for " + w.key.doi + "#" +
                            std::to_string(w.key.pointer_index) +
                            " (stored version " + std::to_string(stored) + ")",
                        stored);
  }
  Annotation merged = merge(w);
  validate(merged);

  if (log_path_.has_parent_path()) {
    std::filesystem::create_directories(log_path_.parent_path());
  }
  std::ofstream out(log_path_, std::ios::app);
  if (!out) throw ConfigError("cannot append to " + log_path_.string());
  // The log records the write as submitted (plus the resolved intent), not
  // the merged state, so replays reproduce the same merges.
  Annotation logged = w;
  if (!logged.intent && !logged.candidates.empty()) logged.intent = merged.intent;
  out << to_log_json(logged).dump() << '\n';
  out.flush();
  if (!out) throw ConfigError("write failed on " + log_path_.string());

  history_[merged.key].push_back(merged);
  write_state_table();
  return merged.version;
}

long AnnotationStore::current_version(const CitationKey& key) const {
  std::shared_lock lock(mu_);
  auto it = history_.find(key);
  return (it == history_.end() || it->second.empty()) ? 0
                                                      : it->second.back().version;
}

std::optional<Annotation> AnnotationStore::current(const CitationKey& key) const {
  std::shared_lock lock(mu_);
  auto it = history_.find(key);
  if (it == history_.end() || it->second.empty()) return std::nullopt;
  return it->second.back();
}

std::vector<Annotation> AnnotationStore::history(const CitationKey& key) const {
  std::shared_lock lock(mu_);
  auto it = history_.find(key);
  if (it == history_.end()) return {};
  return it->second;
}

std::vector<Annotation> AnnotationStore::snapshot() const {
  std::shared_lock lock(mu_);
  std::vector<Annotation> out;
  out.reserve(history_.size());
  for (const auto& [key, versions] : history_) {
    if (!versions.empty()) out.push_back(versions.back());
  }
  return out;
}

void AnnotationStore::export_csv(const std::filesystem::path& path) const {
  csv::Row header(std::begin(kAnnotatedHeader), std::end(kAnnotatedHeader));
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  csv::Writer w(path, header);
  for (const auto& a : snapshot()) {
    w.write({a.key.doi, std::to_string(a.key.pointer_index), a.intent.value_or(""),
             a.sentiment ? std::string(sentiment_name(*a.sentiment)) : "",
             yes_no(a.retraction_mentioned)});
  }
}

void AnnotationStore::write_state_table() const {
  // Caller holds the write lock.
  std::filesystem::path state = log_path_;
  state += ".state.csv";
  csv::Writer w(state, {"doi", "pointer_index", "version", "intent", "sentiment",
                        "retraction_mentioned", "annotator"});
  for (const auto& [key, versions] : history_) {
    if (versions.empty()) continue;
    const Annotation& a = versions.back();
    w.write({key.doi, std::to_string(key.pointer_index), std::to_string(a.version),
             a.intent.value_or(""),
             a.sentiment ? std::string(sentiment_name(*a.sentiment)) : "",
             yes_no(a.retraction_mentioned), a.annotator});
  }
}

}  // namespace retrace::annotate
