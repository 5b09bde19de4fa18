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

#include "retrace/extract/extract.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"
#include "retrace/extract/sentences.h"

namespace retrace::extract {

PatternSet::PatternSet(std::vector<PointerPattern> patterns) {
  for (auto& p : patterns) {
    if (p.pattern.empty()) throw ValidationError("empty pointer pattern");
    Compiled c{p, nullptr};
    if (p.doi != "*") c.source.doi = normalize_doi(p.doi);
    if (p.regex) {
      try {
        c.re = std::make_shared<const std::regex>(p.pattern, std::regex::ECMAScript);
      } catch (const std::regex_error& e) {
        throw ValidationError("bad pointer regex '" + p.pattern + "': " + e.what());
      }
    }
    patterns_.push_back(std::move(c));
  }
}

PatternSet PatternSet::load(const std::filesystem::path& path) {
  csv::Table t = csv::read_file(path);
  std::size_t doi = t.column("doi");
  std::size_t pattern = t.column("pattern");
  std::size_t kind = t.column("kind");
  std::vector<PointerPattern> out;
  for (const auto& row : t.rows) {
    std::string k = to_lower(trim(row[kind]));
    if (k != "literal" && k != "regex") {
      throw ValidationError("pattern kind must be literal or regex, got '" + k + "'");
    }
    out.push_back({trim(row[doi]), row[pattern], k == "regex"});
  }
  return PatternSet(std::move(out));
}

std::vector<PatternSet::Match> PatternSet::find(std::string_view doi,
                                                std::string_view text) const {
  std::string key = normalize_doi(doi);
  std::vector<Match> all;
  for (const auto& p : patterns_) {
    if (p.source.doi != "*" && p.source.doi != key) continue;
    if (p.re) {
      std::string s(text);
      for (auto it = std::sregex_iterator(s.begin(), s.end(), *p.re);
           it != std::sregex_iterator(); ++it) {
        if (it->length(0) == 0) continue;
        all.push_back({static_cast<std::size_t>(it->position(0)), it->str(0)});
      }
    } else {
      for (std::size_t pos = text.find(p.source.pattern); pos != std::string_view::npos;
           pos = text.find(p.source.pattern, pos + 1)) {
        all.push_back({pos, p.source.pattern});
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const Match& a, const Match& b) {
    return a.offset != b.offset ? a.offset < b.offset : a.text.size() > b.text.size();
  });
  std::vector<Match> out;
  std::size_t covered = 0;
  for (auto& m : all) {
    if (!out.empty() && m.offset < covered) continue;
    covered = m.offset + m.text.size();
    out.push_back(std::move(m));
  }
  return out;
}

std::string_view section_kind_name(SectionKind k) {
  switch (k) {
    case SectionKind::kIntroduction:
      return "introduction";
    case SectionKind::kMethod:
      return "method";
    case SectionKind::kAbstract:
      return "abstract";
    case SectionKind::kResults:
      return "results";
    case SectionKind::kConclusions:
      return "conclusions";
    case SectionKind::kBackground:
      return "background";
    case SectionKind::kDiscussion:
      return "discussion";
    case SectionKind::kFirstSection:
      return "first section";
    case SectionKind::kMiddleSection:
      return "middle section";
    case SectionKind::kFinalSection:
      return "final section";
    case SectionKind::kNone:
      return "none";
  }
  return "none";
}

std::string SectionLabel::value() const {
  bool residual = kind == SectionKind::kFirstSection || kind == SectionKind::kMiddleSection ||
                  kind == SectionKind::kFinalSection;
  std::string v(section_kind_name(kind));
  if (residual) v += ": " + title;
  return v;
}

SectionPosition position_of(std::size_t index, std::size_t count) {
  if (index == 0) return SectionPosition::kFirst;
  if (index + 1 == count) return SectionPosition::kLast;
  return SectionPosition::kMiddle;
}

SectionLabel classify_section(std::optional<std::string_view> title,
                              SectionPosition position) {
  if (position == SectionPosition::kUnstructured) return {SectionKind::kNone, ""};
  static const std::vector<std::pair<SectionKind, std::vector<std::string_view>>> kKeywords = {
      {SectionKind::kIntroduction, {"introduction", "intro"}},
      {SectionKind::kMethod, {"methods", "method", "materials"}},
      {SectionKind::kAbstract, {"abstract"}},
      {SectionKind::kResults, {"results", "findings"}},
      {SectionKind::kConclusions, {"conclusion", "conclusions"}},
      {SectionKind::kBackground, {"background"}},
      {SectionKind::kDiscussion, {"discussion"}},
  };
  std::string original = title ? collapse_whitespace(*title) : "";
  std::vector<std::string> words;
  std::string cur;
  for (char c : to_lower(original)) {
    if (is_ascii_alpha(c)) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));

  std::vector<SectionKind> matched;
  for (const auto& [kind, keys] : kKeywords) {
    bool hit = std::any_of(words.begin(), words.end(), [&](const std::string& w) {
      return std::find(keys.begin(), keys.end(), w) != keys.end();
    });
    if (hit) matched.push_back(kind);
  }
  if (matched.size() == 1) return {matched.front(), ""};
  SectionKind residual = position == SectionPosition::kFirst    ? SectionKind::kFirstSection
                         : position == SectionPosition::kLast   ? SectionKind::kFinalSection
                                                                : SectionKind::kMiddleSection;
  return {residual, original.empty() ? "(untitled)" : original};
}

SegmentedDocument segment(const FullTextDocument& doc) {
  SegmentedDocument seg;
  seg.abstract = split_sentences(doc.abstract);
  if (doc.structured()) {
    for (const auto& s : doc.sections) seg.sections.push_back(split_sentences(s.body));
  } else if (!doc.flat_body.empty()) {
    seg.sections.push_back(split_sentences(doc.flat_body));
  }
  return seg;
}

std::vector<PointerHit> find_pointers(const FullTextDocument& doc,
                                      const SegmentedDocument& seg,
                                      const PatternSet& patterns) {
  std::vector<PointerHit> hits;
  auto scan = [&](int section, const std::vector<std::string>& sentences) {
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      for (auto& m : patterns.find(doc.doi, sentences[i])) {
        hits.push_back({section, static_cast<int>(i), m.offset, std::move(m.text)});
      }
    }
  };
  scan(-1, seg.abstract);
  for (std::size_t s = 0; s < seg.sections.size(); ++s) {
    scan(static_cast<int>(s), seg.sections[s]);
  }
  return hits;
}

InTextCitation extract_context(const FullTextDocument& doc, const SegmentedDocument& seg,
                               const PointerHit& hit) {
  const auto& sentences = hit.section < 0 ? seg.abstract : seg.sections.at(hit.section);
  if (hit.sentence < 0 || hit.sentence >= static_cast<int>(sentences.size())) {
    throw ValidationError("pointer hit outside its section");
  }
  std::vector<std::string> parts;
  if (hit.sentence > 0) parts.push_back(sentences[hit.sentence - 1]);
  parts.push_back(sentences[hit.sentence]);
  if (hit.sentence + 1 < static_cast<int>(sentences.size())) {
    parts.push_back(sentences[hit.sentence + 1]);
  }
  InTextCitation c;
  c.doi = doc.doi;
  c.pointer = hit.pointer;
  c.context = join(parts, " ");
  if (hit.section < 0) {
    c.section = {SectionKind::kAbstract, ""};
  } else if (!doc.structured()) {
    c.section = classify_section(std::nullopt, SectionPosition::kUnstructured);
  } else {
    c.section = classify_section(doc.sections[hit.section].title,
                                 position_of(hit.section, doc.sections.size()));
  }
  return c;
}

namespace {

struct DocOutcome {
  std::vector<InTextCitation> citations;
  bool review = false;
  bool missing = false;
  std::string abstract;
};

DocOutcome process(const std::filesystem::path& dir, const std::string& doi,
                   const PatternSet& patterns) {
  DocOutcome out;
  auto doc = load_document(dir, doi);
  if (!doc) {
    out.missing = true;
    return out;
  }
  out.abstract = collapse_whitespace(doc->abstract);
  if (!doc->has_body()) {
    out.missing = true;
    return out;
  }
  SegmentedDocument seg = segment(*doc);
  for (const auto& hit : find_pointers(*doc, seg, patterns)) {
    out.citations.push_back(extract_context(*doc, seg, hit));
  }
  out.review = out.citations.empty();
  return out;
}

}  // namespace

ExtractionResult extract_all(const std::filesystem::path& texts_dir,
                             const std::vector<std::string>& dois,
                             const PatternSet& patterns, int threads) {
  std::vector<std::string> sorted;
  for (const auto& d : dois) sorted.push_back(normalize_doi(d));
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<DocOutcome> outcomes(sorted.size());
  std::vector<std::exception_ptr> errors(sorted.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sorted.size(); i = next++) {
      try {
        outcomes[i] = process(texts_dir, sorted[i], patterns);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int n = threads > 0 ? threads
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  n = static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(1, sorted.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw ValidationError(sorted[i] + ": " + e.what());
    }
  }

  ExtractionResult result;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    auto& o = outcomes[i];
    for (auto& c : o.citations) result.citations.push_back(std::move(c));
    if (o.review) result.review.push_back(sorted[i]);
    if (o.missing) result.missing.push_back(sorted[i]);
    if (!o.abstract.empty()) result.abstracts.emplace_back(sorted[i], o.abstract);
  }
  return result;
}

void write_extraction(const ExtractionResult& result, const std::filesystem::path& out,
                      const std::optional<std::filesystem::path>& abstracts_out) {
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  {
    csv::Writer w(out, {"doi", "intext_citation.section", "intext_citation.context",
                        "intext_citation.pointer"});
    for (const auto& c : result.citations) {
      w.write({c.doi, c.section.value(), c.context, c.pointer});
    }
  }
  auto sidecar = [&](const char* suffix) {
    std::filesystem::path p = out;
    p.replace_extension(suffix);
    return p;
  };
  {
    csv::Writer w(sidecar(".review.csv"), {"doi", "reason"});
    for (const auto& d : result.review) w.write({d, "no pointer matched"});
  }
  {
    csv::Writer w(sidecar(".missing.csv"), {"doi", "reason"});
    for (const auto& d : result.missing) w.write({d, "full text unavailable"});
  }
  if (abstracts_out) {
    if (abstracts_out->has_parent_path()) {
      std::filesystem::create_directories(abstracts_out->parent_path());
    }
    csv::Writer w(*abstracts_out, {"doi", "abstract"});
    for (const auto& [doi, text] : result.abstracts) w.write({doi, text});
  }
}

}  // namespace retrace::extract
