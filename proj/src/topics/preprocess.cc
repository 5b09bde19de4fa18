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

#include "retrace/topics/preprocess.h"

#include <fstream>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/strings.h"

namespace retrace::topics {

std::string_view doc_kind_name(DocKind k) {
  return k == DocKind::kAbstract ? "abstract" : "context";
}

DocKind parse_doc_kind(std::string_view name) {
  if (name == "abstract") return DocKind::kAbstract;
  if (name == "context") return DocKind::kContext;
  throw ValidationError("corpus field must be abstract or context, got '" +
                        std::string(name) + "'");
}

namespace {

void read_word_list(const std::filesystem::path& path,
                    std::unordered_set<std::string>& out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read stopword list " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    std::string w = to_lower(trim(line));
    if (w.empty() || w[0] == '#') continue;
    out.insert(std::move(w));
  }
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool has_vowel(std::string_view s) {
  for (char c : s) {
    if (is_vowel(c) || c == 'y') return true;
  }
  return false;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Consonant-vowel-consonant ending with a final consonant other than w, x, y,
// on a one-syllable stem: "hop" (hoped), "us" does not qualify.
bool short_cvc(std::string_view s) {
  if (s.size() != 3) return false;
  char a = s[0], b = s[1], c = s[2];
  return !is_vowel(a) && is_vowel(b) && !is_vowel(c) && c != 'w' && c != 'x' &&
         c != 'y';
}

// Repairs a stem left by removing "ed" or "ing".
std::string repair_verb_stem(std::string stem) {
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz") ||
      ends_with(stem, "iv") || ends_with(stem, "uc") || ends_with(stem, "ur")) {
    return stem + "e";
  }
  std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (short_cvc(stem)) return stem + "e";
  return stem;
}

}  // namespace

StopwordConfig StopwordConfig::load(const std::filesystem::path& dir, DocKind kind) {
  StopwordConfig c;
  read_word_list(dir / "english.txt", c.words);
  read_word_list(dir / (kind == DocKind::kAbstract ? "abstract_structural.txt"
                                                    : "context_reference.txt"),
                 c.words);
  return c;
}

StopwordConfig StopwordConfig::load_default(DocKind kind) {
  return load(default_data_dir() / "stopwords", kind);
}

Lemmatizer Lemmatizer::load(const std::filesystem::path& path) {
  csv::Table t = csv::read_file(path);
  std::size_t form = t.column("form");
  std::size_t lemma = t.column("lemma");
  std::unordered_map<std::string, std::string> table;
  for (const auto& row : t.rows) {
    table[to_lower(trim(row[form]))] = to_lower(trim(row[lemma]));
  }
  return Lemmatizer(std::move(table));
}

Lemmatizer Lemmatizer::load_default() {
  return load(default_data_dir() / "lemma_exceptions.csv");
}

std::string Lemmatizer::lemma(std::string_view word) const {
  std::string w(word);
  if (auto it = exceptions_.find(w); it != exceptions_.end()) return it->second;
  if (w.size() <= 3) return w;

  // Plurals and third person.
  if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "sses")) return w.substr(0, w.size() - 2);
  for (std::string_view s : {"ches", "shes", "xes", "zes"}) {
    if (ends_with(w, s)) return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is")) {
    return w.substr(0, w.size() - 1);
  }

  // Past tense and participles.
  if (ends_with(w, "eed")) return w;
  if (ends_with(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    if (stem.size() >= 3 && has_vowel(stem)) return repair_verb_stem(stem);
    return w;
  }
  if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (stem.size() >= 3 && has_vowel(stem)) return repair_verb_stem(stem);
    return w;
  }
  return w;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (c >= 0x80 || is_ascii_alpha(ch)) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : ch);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> preprocess(std::string_view text, const StopwordConfig& stop,
                                    const Lemmatizer& lemmatizer) {
  std::vector<std::string> out;
  for (auto& tok : tokenize(text)) {
    if (stop.contains(tok)) continue;
    std::string l = lemmatizer.lemma(tok);
    if (l.size() < 3 || stop.contains(l)) continue;
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace retrace::topics
