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

#include "retrace/annotate/service.h"

#include <map>

#include <httplib.h>

#include "retrace/annotate/mention.h"
#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"

namespace retrace::annotate {

using nlohmann::json;

std::vector<QueueCitation> load_citations(const std::filesystem::path& path) {
  csv::Table t = csv::read_file(path);
  std::size_t doi = t.column("doi");
  std::size_t section = t.column("intext_citation.section");
  std::size_t context = t.column("intext_citation.context");
  std::size_t pointer = t.column("intext_citation.pointer");
  std::map<std::string, int> seen;
  std::vector<QueueCitation> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    if (row.size() < t.header.size()) {
      throw DecodeError("short row in " + path.string(), out.size());
    }
    QueueCitation c;
    c.key.doi = normalize_doi(row[doi]);
    c.key.pointer_index = seen[c.key.doi]++;
    c.section = row[section];
    c.context = row[context];
    c.pointer = row[pointer];
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

json annotation_json(const Annotation& a) {
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

Response error_response(int status, const std::string& message) {
  return {status, json{{"error", message}}};
}

}  // namespace

AnnotationService::AnnotationService(std::vector<QueueCitation> citations,
                                     const DecisionGrid& grid,
                                     AnnotationStore& store,
                                     csv::Table macro_templates)
    : citations_(std::move(citations)),
      grid_(grid),
      store_(store),
      templates_(std::move(macro_templates)) {}

json AnnotationService::queue_item(const QueueCitation& c) const {
  json item;
  item["doi"] = c.key.doi;
  item["pointer_index"] = c.key.pointer_index;
  item["pointer"] = c.pointer;
  item["context"] = c.context;
  item["section"] = c.section;
  item["suggestion"] = {{"retraction_mentioned", mentions_retraction(c.context)}};
  auto current = store_.current(c.key);
  item["version"] = current ? current->version : 0;
  item["current"] = current ? annotation_json(*current) : json(nullptr);
  return item;
}

Response AnnotationService::queue() const {
  for (const auto& c : citations_) {
    auto current = store_.current(c.key);
    if (!current || !current->complete()) {
      json body = queue_item(c);
      body["progress"] = progress().body;
      return {200, body};
    }
  }
  return {200, json{{"done", true}, {"progress", progress().body}}};
}

Response AnnotationService::grid() const {
  json entries = json::array();
  for (const auto& e : grid_.entries()) {
    entries.push_back({{"function", e.function},
                       {"macro", std::string(macro_name(e.macro))},
                       {"column", e.column},
                       {"column_label", e.column_label},
                       {"row", e.row},
                       {"inner", e.inner_tenths / 10.0},
                       {"priority", e.priority().value()}});
  }
  json macros = json::array();
  if (!templates_.header.empty()) {
    for (const auto& row : templates_.rows) {
      json m;
      for (std::size_t i = 0; i < templates_.header.size() && i < row.size(); ++i) {
        m[templates_.header[i]] = row[i];
      }
      macros.push_back(std::move(m));
    }
  }
  return {200, json{{"entries", entries}, {"macros", macros}}};
}

Response AnnotationService::score(const json& request) const {
  if (!request.contains("candidates") || !request["candidates"].is_array()) {
    return error_response(400, "body needs a 'candidates' array");
  }
  std::vector<std::string> candidates;
  for (const auto& c : request["candidates"]) {
    if (!c.is_string()) return error_response(400, "candidates must be strings");
    candidates.push_back(c.get<std::string>());
  }
  try {
    json priorities = json::object();
    for (const auto& c : candidates) {
      priorities[c] = grid_.priority(c).value();
    }
    std::string resolved = grid_.resolve_intent(candidates);
    return {200, json{{"priorities", priorities}, {"intent", resolved}}};
  } catch (const LookupError& e) {
    return error_response(422, e.what());
  } catch (const ValidationError& e) {
    return error_response(400, e.what());
  }
}

Response AnnotationService::annotate(const json& request) {
  Annotation a;
  try {
    a.key.doi = request.at("doi").get<std::string>();
    a.key.pointer_index = request.at("pointer_index").get<int>();
    a.version = request.at("version").get<long>();
    if (request.contains("intent") && !request["intent"].is_null()) {
      a.intent = request["intent"].get<std::string>();
    }
    if (request.contains("sentiment") && !request["sentiment"].is_null()) {
      a.sentiment = parse_sentiment(request["sentiment"].get<std::string>());
    }
    if (request.contains("retraction_mentioned") &&
        !request["retraction_mentioned"].is_null()) {
      a.retraction_mentioned = request["retraction_mentioned"].get<bool>();
    }
    if (request.contains("candidates")) {
      a.candidates = request["candidates"].get<std::vector<std::string>>();
    }
    if (request.contains("annotator") && request["annotator"].is_string()) {
      a.annotator = request["annotator"].get<std::string>();
    }
  } catch (const json::exception& e) {
    return error_response(400, e.what());
  } catch (const ValidationError& e) {
    return error_response(400, e.what());
  }
  try {
    long v = store_.record(a);
    return {200, json{{"version", v}}};
  } catch (const ConflictError& e) {
    json body{{"error", e.what()}, {"current_version", e.current_version()}};
    if (auto cur = store_.current({normalize_doi(a.key.doi), a.key.pointer_index})) {
      body["current"] = annotation_json(*cur);
    }
    return {409, body};
  } catch (const LookupError& e) {
    return error_response(422, e.what());
  } catch (const ValidationError& e) {
    return error_response(422, e.what());
  }
}

Response AnnotationService::progress() const {
  long annotated = 0, partial = 0;
  for (const auto& c : citations_) {
    auto cur = store_.current(c.key);
    if (!cur) continue;
    if (cur->complete()) {
      ++annotated;
    } else {
      ++partial;
    }
  }
  long total = static_cast<long>(citations_.size());
  return {200, json{{"total", total},
                    {"annotated", annotated},
                    {"partial", partial},
                    {"pending", total - annotated - partial}}};
}

void AnnotationService::bind(httplib::Server& server,
                             const std::filesystem::path& ui_dir) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto with_body = [send](httplib::Response& res, const std::string& body,
                          auto&& handler) {
    json request;
    try {
      request = json::parse(body);
    } catch (const json::exception& e) {
      send(res, error_response(400, std::string("invalid JSON: ") + e.what()));
      return;
    }
    send(res, handler(request));
  };
  server.Get("/queue", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, queue());
  });
  server.Get("/grid", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, grid());
  });
  server.Get("/progress",
             [this, send](const httplib::Request&, httplib::Response& res) {
               send(res, progress());
             });
  server.Post("/score", [this, with_body](const httplib::Request& req,
                                          httplib::Response& res) {
    with_body(res, req.body, [this](const json& j) { return score(j); });
  });
  server.Post("/annotations", [this, with_body](const httplib::Request& req,
                                                httplib::Response& res) {
    with_body(res, req.body, [this](const json& j) { return annotate(j); });
  });
  if (!ui_dir.empty()) {
    if (!server.set_mount_point("/", ui_dir.string())) {
      throw ConfigError("cannot mount UI directory " + ui_dir.string());
    }
  }
}

void serve(AnnotationService& service, const std::string& host, int port,
           const std::filesystem::path& ui_dir) {
  httplib::Server server;
  service.bind(server, ui_dir);
  if (!server.listen(host, port)) {
    throw ConfigError("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace retrace::annotate
