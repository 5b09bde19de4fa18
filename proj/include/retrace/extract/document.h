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

#ifndef RETRACE_EXTRACT_DOCUMENT_H_
#define RETRACE_EXTRACT_DOCUMENT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace retrace::extract {

struct Section {
  std::string title;
  std::string body;
};

struct FullTextDocument {
  std::string doi;
  std::string abstract;
  std::vector<Section> sections;
  std::string flat_body;  // set when the document has no section structure

  bool structured() const { return !sections.empty(); }
  bool has_body() const { return structured() || !flat_body.empty(); }
};

// Plain-text layout, one marker per line:
//
//   @doi 10.1234/abcd          (optional; the caller's DOI wins)
//   @abstract
//   ...abstract text...
//   @section Introduction
//   ...body...
//   @section Methods
//   ...
//
// or `@body` followed by unsectioned text. Mixing @section and @body throws
// ValidationError, as does text before the first marker.
FullTextDocument parse_text_document(std::string_view text);

// JATS-like XML: <abstract>, then <body> holding top-level <sec> elements
// with a <title>. Paragraph (<p>) text is joined with blank lines. A body
// without <sec> becomes the flat body. Tags other than the ones named are
// dropped, keeping their text.
FullTextDocument parse_xml_document(std::string_view xml);

// File name for a DOI inside a texts directory: '/' becomes '_'.
std::string doi_file_stem(std::string_view doi);

// Looks for <stem>.txt then <stem>.xml; nullopt when neither exists.
std::optional<FullTextDocument> load_document(const std::filesystem::path& dir,
                                              std::string_view doi);

}  // namespace retrace::extract

#endif  // RETRACE_EXTRACT_DOCUMENT_H_
