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

#include "retrace/extract/sentences.h"

#include <array>

#include "retrace/common/strings.h"

namespace retrace::extract {

namespace {

constexpr std::array<std::string_view, 24> kAbbreviations = {
    "al.",  "fig.",  "figs.", "e.g.",  "i.e.", "vs.",   "dr.",   "etc.",
    "ref.", "refs.", "no.",   "vol.",  "pp.",  "cf.",   "eq.",   "approx.",
    "mr.",  "mrs.",  "ms.",   "prof.", "st.",  "jr.",   "ca.",   "ed."};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_initial(std::string_view word) {
  return word.size() == 2 && is_upper(word[0]) && word[1] == '.';
}

bool is_abbreviation(std::string_view word) {
  // Strip leading punctuation such as an opening parenthesis.
  while (!word.empty() && !is_ascii_alpha(word.front())) word.remove_prefix(1);
  std::string lower = to_lower(word);
  for (auto a : kAbbreviations) {
    if (lower == a) return true;
  }
  return false;
}

bool allows_initial_after(std::string_view prev) {
  if (prev.empty()) return true;
  if (is_initial(prev)) return true;
  if (prev.back() == ',') return true;
  if (prev == "and" || prev == "&") return true;
  return is_upper(prev.front());
}

// Word (maximal non-space run) ending at position `end` (exclusive).
std::string_view word_before(std::string_view text, std::size_t end,
                             std::size_t floor, std::size_t* start_out) {
  std::size_t b = end;
  while (b > floor && !is_space(text[b - 1])) --b;
  if (start_out) *start_out = b;
  return text.substr(b, end - b);
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  int depth = 0;
  auto emit = [&](std::size_t end) {
    std::string s = collapse_whitespace(text.substr(start, end - start));
    if (!s.empty()) out.push_back(std::move(s));
    start = end;
    depth = 0;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(' || c == '[' || c == '{') {
      ++depth;
      continue;
    }
    if (c == ')' || c == ']' || c == '}') {
      if (depth > 0) --depth;
      continue;
    }
    if (c == '\n') {
      // Blank line: hard boundary.
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < text.size() && text[j] == '\n') {
        emit(i);
        i = j;
        start = j + 1;
      }
      continue;
    }
    if ((c != '.' && c != '!' && c != '?') || depth > 0) continue;

    std::size_t end = i + 1;
    while (end < text.size() && (text[end] == '"' || text[end] == '\'')) ++end;
    if (end < text.size() && !is_space(text[end])) continue;

    std::size_t next = end;
    while (next < text.size() && is_space(text[next])) ++next;
    if (next < text.size()) {
      char n = text[next];
      if (!(is_upper(n) || is_digit(n) || n == '"' || n == '\'' || n == '(' || n == '[')) {
        continue;
      }
    }

    if (c == '.') {
      std::size_t word_start = 0;
      std::string_view word = word_before(text, i + 1, start, &word_start);
      if (is_abbreviation(word)) continue;
      if (is_initial(word)) {
        std::size_t p = word_start;
        while (p > start && is_space(text[p - 1])) --p;
        std::string_view prev = word_before(text, p, start, nullptr);
        if (allows_initial_after(prev)) continue;
      }
    }
    emit(end);
  }
  emit(text.size());
  return out;
}

}  // namespace retrace::extract
