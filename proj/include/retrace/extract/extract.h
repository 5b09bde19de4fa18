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

#ifndef RETRACE_EXTRACT_EXTRACT_H_
#define RETRACE_EXTRACT_EXTRACT_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "retrace/extract/document.h"

namespace retrace::extract {

// A reference-pointer form of the seed article. Literal patterns match
// exactly (case-sensitive); regex patterns use ECMAScript syntax.
struct PointerPattern {
  std::string doi;  // "*" applies to every document
  std::string pattern;
  bool regex = false;
};

class PatternSet {
 public:
  explicit PatternSet(std::vector<PointerPattern> patterns);
  // patterns.csv: `doi,pattern,kind` with kind literal|regex.
  static PatternSet load(const std::filesystem::path& path);

  struct Match {
    std::size_t offset;
    std::string text;
  };
  // Leftmost-longest, non-overlapping matches of the patterns that apply to
  // `doi`.
  std::vector<Match> find(std::string_view doi, std::string_view text) const;

 private:
  struct Compiled {
    PointerPattern source;
    std::shared_ptr<const std::regex> re;
  };
  std::vector<Compiled> patterns_;
};

enum class SectionKind {
  kIntroduction,
  kMethod,
  kAbstract,
  kResults,
  kConclusions,
  kBackground,
  kDiscussion,
  kFirstSection,
  kMiddleSection,
  kFinalSection,
  kNone,
};

std::string_view section_kind_name(SectionKind k);

enum class SectionPosition { kFirst, kMiddle, kLast, kUnstructured };

struct SectionLabel {
  SectionKind kind;
  std::string title;  // kept for residual kinds only

  // "introduction", "middle section: Vaccines and the public", "none".
  std::string value() const;
};

// Keyword match on the title's words, case-insensitive:
//   introduction|intro, methods|method|materials, abstract, results|findings,
//   conclusion|conclusions, background, discussion.
// Exactly one matching kind wins; none or several fall back to the
// position's residual kind. Unstructured documents are `none`.
SectionLabel classify_section(std::optional<std::string_view> title,
                              SectionPosition position);

SectionPosition position_of(std::size_t index, std::size_t count);

struct PointerHit {
  int section;  // -1: abstract; 0.. body sections (or 0 for a flat body)
  int sentence;
  std::size_t offset;  // within the sentence
  std::string pointer;
};

// Sentences of each part of the document, in the order hits refer to them.
struct SegmentedDocument {
  std::vector<std::string> abstract;
  std::vector<std::vector<std::string>> sections;  // flat body: one entry
};

SegmentedDocument segment(const FullTextDocument& doc);

std::vector<PointerHit> find_pointers(const FullTextDocument& doc,
                                      const SegmentedDocument& seg,
                                      const PatternSet& patterns);

struct InTextCitation {
  std::string doi;
  std::string pointer;
  std::string context;
  SectionLabel section;
};

// Anchor sentence plus its neighbours inside the same section: the
// preceding one unless the anchor opens the section, the following one
// unless it closes it.
InTextCitation extract_context(const FullTextDocument& doc, const SegmentedDocument& seg,
                               const PointerHit& hit);

struct ExtractionResult {
  std::vector<InTextCitation> citations;  // ordered by doi, section, sentence
  std::vector<std::string> review;        // full texts with zero hits
  std::vector<std::string> missing;       // no full text available
  std::vector<std::pair<std::string, std::string>> abstracts;  // doi, text
};

// Runs extraction for every DOI. Documents are processed in parallel and
// merged in DOI order. An abstract-only file counts as missing full text
// but still contributes its abstract.
ExtractionResult extract_all(const std::filesystem::path& texts_dir,
                             const std::vector<std::string>& dois,
                             const PatternSet& patterns, int threads = 0);

// Writes citations (`doi,intext_citation.section,intext_citation.context,
// intext_citation.pointer`), `<out>.review.csv` and `<out>.missing.csv`, and
// the abstracts when `abstracts_out` is set (`doi,abstract`).
void write_extraction(const ExtractionResult& result, const std::filesystem::path& out,
                      const std::optional<std::filesystem::path>& abstracts_out);

}  // namespace retrace::extract

#endif  // RETRACE_EXTRACT_EXTRACT_H_
