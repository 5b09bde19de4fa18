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

#ifndef RETRACE_TOPICS_CORPUS_H_
#define RETRACE_TOPICS_CORPUS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "retrace/topics/preprocess.h"

namespace retrace::topics {

// Append-only token dictionary. Ids are dense and never reassigned, so
// adding documents leaves existing ids untouched.
class Dictionary {
 public:
  // Returns the ids of `tokens`, adding unseen tokens, and bumps the
  // document frequency of each distinct token once.
  std::vector<int> add_document(const std::vector<std::string>& tokens);

  std::optional<int> id(const std::string& token) const;
  const std::string& token(int id) const { return tokens_.at(id); }
  int df(int id) const { return df_.at(id); }
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // `id,token,df`
  void save(const std::filesystem::path& path) const;
  static Dictionary load(const std::filesystem::path& path);

 private:
  std::vector<std::string> tokens_;
  std::vector<int> df_;
  std::unordered_map<std::string, int> ids_;
};

// Sparse document: term ids ascending, one weight per id.
struct SparseDoc {
  std::vector<int> ids;
  std::vector<double> weights;

  double total() const;
};

struct Document {
  std::string id;
  DocKind kind = DocKind::kContext;
  std::vector<int> tokens;  // dictionary ids in text order
};

struct Corpus {
  std::vector<Document> documents;
  Dictionary dictionary;

  void add(std::string id, DocKind kind, const std::vector<std::string>& tokens);
  int num_docs() const { return static_cast<int>(documents.size()); }

  // Raw term counts per document.
  std::vector<SparseDoc> counts() const;
  // Distinct term ids per document (sorted), for co-occurrence counting.
  std::vector<std::vector<int>> occurrences() const;
};

struct TfidfResult {
  std::vector<SparseDoc> docs;
  // Documents whose every term occurs in all documents (all weights zero).
  std::vector<int> zero_vectors;
};

// tf(t,d) * log2(D / df(t)), then L2-normalised per document. Terms present
// in every document get weight 0 and are dropped from the sparse row.
// Throws ValidationError on an empty corpus.
TfidfResult vectorize_tfidf(const Corpus& corpus);

// Reads `field` ("abstract" or "context") from a CSV. Abstracts come from an
// `abstract` column keyed by `doi`; contexts from `intext_citation.context`,
// keyed by doi and per-DOI occurrence ("<doi>#<n>"). Empty texts are skipped.
Corpus load_corpus(const std::filesystem::path& csv_path, DocKind kind,
                   const StopwordConfig& stop, const Lemmatizer& lemmatizer);

}  // namespace retrace::topics

#endif  // RETRACE_TOPICS_CORPUS_H_
