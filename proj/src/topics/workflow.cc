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

#include "retrace/topics/workflow.h"

#include "retrace/common/error.h"

namespace retrace::topics {

PreparedCorpus prepare_corpus(const std::filesystem::path& csv_path, DocKind kind) {
  PreparedCorpus p;
  p.corpus = load_corpus(csv_path, kind, StopwordConfig::load_default(kind),
                         Lemmatizer::load_default());
  if (p.corpus.num_docs() == 0) {
    throw ValidationError("no " + std::string(doc_kind_name(kind)) + " documents in " +
                          csv_path.string());
  }
  p.tfidf = vectorize_tfidf(p.corpus);
  for (const auto& d : p.corpus.documents) p.doc_ids.push_back(d.id);
  return p;
}

SweepResult sweep_corpus(const PreparedCorpus& prepared, const SweepParams& params,
                         const PlateauRule& rule, const std::filesystem::path& curve) {
  CooccurrenceIndex index(prepared.corpus.occurrences(), prepared.corpus.dictionary.size());
  SweepResult r = sweep_select_k(prepared.tfidf.docs, prepared.corpus.dictionary.size(), index,
                                 params, rule);
  write_curve(curve, r);
  return r;
}

LdaModel train_corpus(const PreparedCorpus& prepared, const LdaParams& params,
                      const std::filesystem::path& model_dir) {
  LdaModel m = train_lda(prepared.tfidf.docs, prepared.corpus.dictionary.size(), params);
  for (int d : prepared.tfidf.zero_vectors) {
    m.warnings.push_back("document " + prepared.doc_ids[d] + " has an all-zero TF-IDF vector");
  }
  save_model(model_dir, m, prepared.corpus.dictionary, prepared.doc_ids);
  return m;
}

}  // namespace retrace::topics
