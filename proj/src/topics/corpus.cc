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

#include "retrace/topics/corpus.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"

namespace retrace::topics {

std::vector<int> Dictionary::add_document(const std::vector<std::string>& tokens) {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto [it, inserted] = ids_.try_emplace(t, static_cast<int>(tokens_.size()));
    if (inserted) {
      tokens_.push_back(t);
      df_.push_back(0);
    }
    ids.push_back(it->second);
  }
  std::vector<int> distinct = ids;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (int id : distinct) ++df_[id];
  return ids;
}

std::optional<int> Dictionary::id(const std::string& token) const {
  auto it = ids_.find(token);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void Dictionary::save(const std::filesystem::path& path) const {
  csv::Writer w(path, {"id", "token", "df"});
  for (int i = 0; i < size(); ++i) {
    w.write({std::to_string(i), tokens_[i], std::to_string(df_[i])});
  }
}

Dictionary Dictionary::load(const std::filesystem::path& path) {
  csv::Table t = csv::read_file(path);
  std::size_t id = t.column("id");
  std::size_t token = t.column("token");
  std::size_t df = t.column("df");
  Dictionary d;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (std::stoi(row[id]) != static_cast<int>(r)) {
      throw DecodeError("dictionary ids must be dense and ordered", r);
    }
    d.ids_[row[token]] = static_cast<int>(r);
    d.tokens_.push_back(row[token]);
    d.df_.push_back(std::stoi(row[df]));
  }
  return d;
}

double SparseDoc::total() const {
  double s = 0;
  for (double w : weights) s += w;
  return s;
}

void Corpus::add(std::string id, DocKind kind, const std::vector<std::string>& tokens) {
  documents.push_back({std::move(id), kind, dictionary.add_document(tokens)});
}

std::vector<SparseDoc> Corpus::counts() const {
  std::vector<SparseDoc> out;
  out.reserve(documents.size());
  for (const auto& d : documents) {
    std::map<int, double> c;
    for (int id : d.tokens) c[id] += 1.0;
    SparseDoc s;
    for (const auto& [id, n] : c) {
      s.ids.push_back(id);
      s.weights.push_back(n);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<int>> Corpus::occurrences() const {
  std::vector<std::vector<int>> out;
  out.reserve(documents.size());
  for (const auto& d : documents) {
    std::vector<int> ids = d.tokens;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    out.push_back(std::move(ids));
  }
  return out;
}

TfidfResult vectorize_tfidf(const Corpus& corpus) {
  if (corpus.documents.empty()) throw ValidationError("empty corpus");
  const double n_docs = corpus.num_docs();
  TfidfResult result;
  auto counts = corpus.counts();
  for (std::size_t d = 0; d < counts.size(); ++d) {
    SparseDoc out;
    double norm2 = 0;
    for (std::size_t i = 0; i < counts[d].ids.size(); ++i) {
      int id = counts[d].ids[i];
      double w = counts[d].weights[i] *
                 std::log2(n_docs / static_cast<double>(corpus.dictionary.df(id)));
      if (w == 0.0) continue;
      out.ids.push_back(id);
      out.weights.push_back(w);
      norm2 += w * w;
    }
    if (norm2 > 0) {
      double inv = 1.0 / std::sqrt(norm2);
      for (double& w : out.weights) w *= inv;
    } else {
      result.zero_vectors.push_back(static_cast<int>(d));
    }
    result.docs.push_back(std::move(out));
  }
  return result;
}

Corpus load_corpus(const std::filesystem::path& csv_path, DocKind kind,
                   const StopwordConfig& stop, const Lemmatizer& lemmatizer) {
  csv::Table t = csv::read_file(csv_path);
  std::size_t doi = t.column("doi");
  std::size_t text = t.column(kind == DocKind::kAbstract ? "abstract"
                                                         : "intext_citation.context");
  Corpus corpus;
  std::map<std::string, int> seen;
  for (const auto& row : t.rows) {
    if (row.size() < t.header.size()) continue;
    std::string d = normalize_doi(row[doi]);
    std::string id = d;
    if (kind == DocKind::kContext) id += "#" + std::to_string(seen[d]++);
    if (trim(row[text]).empty()) continue;
    corpus.add(id, kind, preprocess(row[text], stop, lemmatizer));
  }
  return corpus;
}

}  // namespace retrace::topics
