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

#ifndef RETRACE_TOPICS_WORKFLOW_H_
#define RETRACE_TOPICS_WORKFLOW_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "retrace/topics/coherence.h"
#include "retrace/topics/corpus.h"
#include "retrace/topics/lda.h"
#include "retrace/topics/preprocess.h"

namespace retrace::topics {

struct PreparedCorpus {
  Corpus corpus;
  TfidfResult tfidf;
  std::vector<std::string> doc_ids;
};

// Loads, preprocesses with the bundled stopwords and lemmatizer, and
// vectorizes. Throws ValidationError when no document survives.
PreparedCorpus prepare_corpus(const std::filesystem::path& csv_path, DocKind kind);

// Sweeps K and writes `curve` (`k,coherence`) plus its JSON twin.
SweepResult sweep_corpus(const PreparedCorpus& prepared, const SweepParams& params,
                         const PlateauRule& rule, const std::filesystem::path& curve);

// Trains with `params` and writes the model directory.
LdaModel train_corpus(const PreparedCorpus& prepared, const LdaParams& params,
                      const std::filesystem::path& model_dir);

}  // namespace retrace::topics

#endif  // RETRACE_TOPICS_WORKFLOW_H_
