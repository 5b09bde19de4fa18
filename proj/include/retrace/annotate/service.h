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

#ifndef RETRACE_ANNOTATE_SERVICE_H_
#define RETRACE_ANNOTATE_SERVICE_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "retrace/annotate/annotation.h"
#include "retrace/annotate/grid.h"
#include "retrace/annotate/store.h"

namespace httplib {
class Server;
}

namespace retrace::annotate {

// One row of the extraction output with its derived key.
struct QueueCitation {
  CitationKey key;
  std::string section;
  std::string context;
  std::string pointer;
};

// Reads `doi,intext_citation.section,intext_citation.context,
// intext_citation.pointer`. The pointer index counts rows per DOI in file
// order.
std::vector<QueueCitation> load_citations(const std::filesystem::path& path);

struct Response {
  int status = 200;
  nlohmann::json body;
};

// The workbench JSON API. Handlers are plain functions of the request body
// so they can be exercised without a socket; `serve` binds them to HTTP.
//
//   GET  /queue        next citation lacking an intent or sentiment
//   GET  /grid         grid entries with priorities, plus macro templates
//   POST /score        {"candidates":[..]} -> priorities and resolved intent
//   POST /annotations  Annotation JSON -> {"version":n}, 409 when stale
//   GET  /progress     {"total","annotated","partial","pending"}
class AnnotationService {
 public:
  AnnotationService(std::vector<QueueCitation> citations, const DecisionGrid& grid,
                    AnnotationStore& store, csv::Table macro_templates = {});

  Response queue() const;
  Response grid() const;
  Response score(const nlohmann::json& request) const;
  Response annotate(const nlohmann::json& request);
  Response progress() const;

  // Registers the routes on `server`; `ui_dir` (optional) is mounted at "/".
  void bind(httplib::Server& server, const std::filesystem::path& ui_dir = {});

 private:
  nlohmann::json queue_item(const QueueCitation& c) const;

  std::vector<QueueCitation> citations_;
  const DecisionGrid& grid_;
  AnnotationStore& store_;
  csv::Table templates_;
};

// Blocking server loop. Returns when the server stops.
void serve(AnnotationService& service, const std::string& host, int port,
           const std::filesystem::path& ui_dir = {});

}  // namespace retrace::annotate

#endif  // RETRACE_ANNOTATE_SERVICE_H_
