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

#include "retrace/extract/document.h"

#include <sstream>

#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"

namespace retrace::extract {

namespace {

void append_line(std::string& dst, std::string_view line) {
  if (!dst.empty()) dst.push_back('\n');
  dst.append(line);
}

std::string trim_block(const std::string& s) { return trim(s); }

std::string decode_entities(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    std::size_t semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 8) {
      out.push_back('&');
      continue;
    }
    std::string_view name = s.substr(i + 1, semi - i - 1);
    if (name == "amp") {
      out.push_back('&');
    } else if (name == "lt") {
      out.push_back('<');
    } else if (name == "gt") {
      out.push_back('>');
    } else if (name == "quot") {
      out.push_back('"');
    } else if (name == "apos") {
      out.push_back('\'');
    } else {
      out.append(s.substr(i, semi - i + 1));
    }
    i = semi;
  }
  return out;
}

// Content bounds of the first <tag ...>...</tag> at or after `from`,
// honouring nesting of the same tag name. `after` receives the position
// past the closing tag.
std::optional<std::pair<std::size_t, std::size_t>> find_element(
    std::string_view xml, std::string_view tag, std::size_t from,
    std::size_t* after = nullptr) {
  std::string open = "<" + std::string(tag);
  std::string close = "</" + std::string(tag) + ">";
  std::size_t s = from;
  while (true) {
    s = xml.find(open, s);
    if (s == std::string_view::npos) return std::nullopt;
    char n = s + open.size() < xml.size() ? xml[s + open.size()] : '>';
    if (n == '>' || n == ' ' || n == '/' || n == '\t' || n == '\n') break;
    s += open.size();
  }
  std::size_t gt = xml.find('>', s);
  if (gt == std::string_view::npos) throw ValidationError("unterminated XML tag");
  if (xml[gt - 1] == '/') {
    if (after) *after = gt + 1;
    return std::make_pair(gt + 1, gt + 1);
  }
  std::size_t body = gt + 1;
  int depth = 1;
  std::size_t i = body;
  while (depth > 0) {
    std::size_t next_open = xml.find(open, i);
    std::size_t next_close = xml.find(close, i);
    if (next_close == std::string_view::npos) {
      throw ValidationError("missing </" + std::string(tag) + ">");
    }
    if (next_open != std::string_view::npos && next_open < next_close) {
      char n = next_open + open.size() < xml.size() ? xml[next_open + open.size()] : '>';
      if (n == '>' || n == ' ' || n == '\t' || n == '\n') ++depth;
      i = next_open + open.size();
    } else {
      --depth;
      if (depth == 0) {
        if (after) *after = next_close + close.size();
        return std::make_pair(body, next_close);
      }
      i = next_close + close.size();
    }
  }
  return std::nullopt;
}

// Text content with tags removed; </p> and </title> become paragraph breaks.
std::string strip_tags(std::string_view xml) {
  std::string out;
  for (std::size_t i = 0; i < xml.size(); ++i) {
    if (xml[i] != '<') {
      out.push_back(xml[i]);
      continue;
    }
    std::size_t gt = xml.find('>', i);
    if (gt == std::string_view::npos) break;
    std::string_view tag = xml.substr(i, gt - i + 1);
    if (tag == "</p>" || tag.rfind("</title", 0) == 0 || tag.rfind("</sec", 0) == 0) {
      out += "\n\n";
    }
    i = gt;
  }
  return decode_entities(out);
}

// Paragraphs separated by blank lines, each with collapsed whitespace.
std::string paragraphs(std::string_view xml) {
  std::string text = strip_tags(xml);
  std::vector<std::string> blocks;
  std::string current;
  for (auto& line : split(text, '\n')) {
    if (trim(line).empty()) {
      if (!trim(current).empty()) blocks.push_back(collapse_whitespace(current));
      current.clear();
    } else {
      current += line;
      current.push_back(' ');
    }
  }
  if (!trim(current).empty()) blocks.push_back(collapse_whitespace(current));
  return join(blocks, "\n\n");
}

}  // namespace

FullTextDocument parse_text_document(std::string_view text) {
  FullTextDocument doc;
  enum class Mode { kNone, kAbstract, kSection, kBody } mode = Mode::kNone;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("@doi", 0) == 0) {
      doc.doi = normalize_doi(line.substr(4));
      continue;
    }
    if (line == "@abstract") {
      mode = Mode::kAbstract;
      continue;
    }
    if (line.rfind("@section", 0) == 0) {
      if (!doc.flat_body.empty() || mode == Mode::kBody) {
        throw ValidationError("document mixes @section and @body");
      }
      doc.sections.push_back({trim(line.substr(8)), ""});
      mode = Mode::kSection;
      continue;
    }
    if (line == "@body") {
      if (!doc.sections.empty()) throw ValidationError("document mixes @section and @body");
      mode = Mode::kBody;
      continue;
    }
    switch (mode) {
      case Mode::kNone:
        if (!trim(line).empty()) {
          throw ValidationError("text before the first marker on line " +
                                std::to_string(line_no));
        }
        break;
      case Mode::kAbstract:
        append_line(doc.abstract, line);
        break;
      case Mode::kSection:
        append_line(doc.sections.back().body, line);
        break;
      case Mode::kBody:
        append_line(doc.flat_body, line);
        break;
    }
  }
  doc.abstract = trim_block(doc.abstract);
  doc.flat_body = trim_block(doc.flat_body);
  for (auto& s : doc.sections) s.body = trim_block(s.body);
  return doc;
}

FullTextDocument parse_xml_document(std::string_view xml) {
  FullTextDocument doc;
  if (auto a = find_element(xml, "abstract", 0)) {
    doc.abstract = paragraphs(xml.substr(a->first, a->second - a->first));
  }
  auto body = find_element(xml, "body", 0);
  if (!body) return doc;
  std::string_view b = xml.substr(body->first, body->second - body->first);
  std::size_t cursor = 0;
  bool any = false;
  while (auto sec = find_element(b, "sec", cursor, &cursor)) {
    any = true;
    std::string_view s = b.substr(sec->first, sec->second - sec->first);
    Section section;
    std::size_t after_title = 0;
    if (auto t = find_element(s, "title", 0, &after_title)) {
      section.title = trim(decode_entities(s.substr(t->first, t->second - t->first)));
      s = s.substr(after_title);
    }
    section.body = paragraphs(s);
    doc.sections.push_back(std::move(section));
  }
  if (!any) doc.flat_body = paragraphs(b);
  return doc;
}

std::string doi_file_stem(std::string_view doi) {
  std::string s = normalize_doi(doi);
  for (char& c : s) {
    if (c == '/') c = '_';
  }
  return s;
}

std::optional<FullTextDocument> load_document(const std::filesystem::path& dir,
                                              std::string_view doi) {
  std::string stem = doi_file_stem(doi);
  std::filesystem::path txt = dir / (stem + ".txt");
  std::filesystem::path xml = dir / (stem + ".xml");
  FullTextDocument doc;
  if (std::filesystem::exists(txt)) {
    doc = parse_text_document(read_text_file(txt));
  } else if (std::filesystem::exists(xml)) {
    doc = parse_xml_document(read_text_file(xml));
  } else {
    return std::nullopt;
  }
  doc.doi = normalize_doi(doi);
  return doc;
}

}  // namespace retrace::extract
