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

#ifndef RETRACE_TOPICS_PREPROCESS_H_
#define RETRACE_TOPICS_PREPROCESS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace retrace::topics {

enum class DocKind { kAbstract, kContext };

std::string_view doc_kind_name(DocKind k);
DocKind parse_doc_kind(std::string_view name);

// Lowercase stopword set: the common English list plus, per corpus kind,
// structured-abstract headings or the tokens of the cited reference entry.
struct StopwordConfig {
  std::unordered_set<std::string> words;

  bool contains(std::string_view w) const { return words.count(std::string(w)) > 0; }

  // Reads data/stopwords/{english,abstract_structural,context_reference}.txt
  // under `dir`. Lines starting with '#' are comments.
  static StopwordConfig load(const std::filesystem::path& dir, DocKind kind);
  static StopwordConfig load_default(DocKind kind);
};

// Rule-based English lemmatizer. The exception table wins; otherwise plural
// and inflectional suffixes are stripped with a small set of spelling
// repairs (studies -> study, vaccinated -> vaccinate, stopped -> stop).
class Lemmatizer {
 public:
  Lemmatizer() = default;
  explicit Lemmatizer(std::unordered_map<std::string, std::string> exceptions)
      : exceptions_(std::move(exceptions)) {}

  // data/lemma_exceptions.csv (`form,lemma`).
  static Lemmatizer load(const std::filesystem::path& path);
  static Lemmatizer load_default();

  std::string lemma(std::string_view word) const;

 private:
  std::unordered_map<std::string, std::string> exceptions_;
};

// Lowercase ASCII letter runs; bytes >= 0x80 are kept inside words so UTF-8
// letters do not split tokens. Digits and punctuation separate.
std::vector<std::string> tokenize(std::string_view text);

// tokenize -> drop stopwords -> lemmatize -> drop stopwords -> drop tokens
// shorter than three bytes.
std::vector<std::string> preprocess(std::string_view text, const StopwordConfig& stop,
                                    const Lemmatizer& lemmatizer);

}  // namespace retrace::topics

#endif  // RETRACE_TOPICS_PREPROCESS_H_
