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

#ifndef RETRACE_ANNOTATE_STORE_H_
#define RETRACE_ANNOTATE_STORE_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "retrace/annotate/annotation.h"
#include "retrace/annotate/grid.h"

namespace retrace::annotate {

// Append-only annotation log with optimistic versioning.
//
// The log is newline-delimited JSON, one accepted write per line:
//   {"doi":..,"pointer_index":..,"version":..,"intent":..,"sentiment":..,
//    "retraction_mentioned":..,"candidates":[..],"annotator":..}
// Absent or null fields mean "unchanged". Opening a store replays the log;
// the current state of each citation is the merge of its writes in version
// order. A derived table of current values is rewritten next to the log
// (<log>.state.csv) after every accepted write.
//
// A write carrying version v is accepted only when the stored version is
// v - 1; otherwise ConflictError reports the stored version. Writes are
// serialised; readers see a consistent snapshot.
class AnnotationStore {
 public:
  AnnotationStore(std::filesystem::path log_path, const DecisionGrid& grid);

  // Validates, merges and appends. Returns the stored version.
  long record(const Annotation& write);

  long current_version(const CitationKey& key) const;
  std::optional<Annotation> current(const CitationKey& key) const;
  std::vector<Annotation> history(const CitationKey& key) const;
  // Current state of every annotated citation, ordered by key.
  std::vector<Annotation> snapshot() const;

  // `doi,pointer_index,intext_citation.intent,intext_citation.sentiment,
  //  retraction_mentioned`, ordered by key.
  void export_csv(const std::filesystem::path& out) const;

  const std::filesystem::path& log_path() const { return log_path_; }

 private:
  Annotation merge(const Annotation& write) const;
  void validate(const Annotation& merged) const;
  void write_state_table() const;

  std::filesystem::path log_path_;
  const DecisionGrid& grid_;
  mutable std::shared_mutex mu_;
  std::map<CitationKey, std::vector<Annotation>> history_;
};

// Export header, exact.
inline constexpr const char* kAnnotatedHeader[] = {
    "doi", "pointer_index", "intext_citation.intent",
    "intext_citation.sentiment", "retraction_mentioned"};

}  // namespace retrace::annotate

#endif  // RETRACE_ANNOTATE_STORE_H_
