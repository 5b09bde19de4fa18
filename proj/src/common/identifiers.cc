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

#include "retrace/common/identifiers.h"

#include "retrace/common/strings.h"

namespace retrace {

namespace {

std::string strip_prefix_ci(std::string s, std::string_view prefix) {
  if (s.size() >= prefix.size() && to_lower(s.substr(0, prefix.size())) == prefix) {
    s.erase(0, prefix.size());
  }
  return s;
}

// Keeps digits and 'X'/'x', dropping hyphens and spaces. Any other character
// yields an empty result.
std::string compact(std::string_view raw) {
  std::string out;
  for (char c : raw) {
    if (c >= '0' && c <= '9') {
      out.push_back(c);
    } else if (c == 'x' || c == 'X') {
      out.push_back('X');
    } else if (c == '-' || c == ' ') {
      continue;
    } else {
      return {};
    }
  }
  return out;
}

bool issn_checksum_ok(const std::string& d) {
  if (d.size() != 8) return false;
  int sum = 0;
  for (int i = 0; i < 7; ++i) {
    if (d[i] == 'X') return false;
    sum += (d[i] - '0') * (8 - i);
  }
  int check = (11 - sum % 11) % 11;
  char expect = check == 10 ? 'X' : static_cast<char>('0' + check);
  return d[7] == expect;
}

bool isbn10_checksum_ok(const std::string& d) {
  if (d.size() != 10) return false;
  int sum = 0;
  for (int i = 0; i < 10; ++i) {
    int v;
    if (d[i] == 'X') {
      if (i != 9) return false;
      v = 10;
    } else {
      v = d[i] - '0';
    }
    sum += v * (10 - i);
  }
  return sum % 11 == 0;
}

bool isbn13_checksum_ok(const std::string& d) {
  if (d.size() != 13) return false;
  int sum = 0;
  for (int i = 0; i < 13; ++i) {
    if (d[i] == 'X') return false;
    sum += (d[i] - '0') * (i % 2 == 0 ? 1 : 3);
  }
  return sum % 10 == 0;
}

}  // namespace

std::string normalize_doi(std::string_view raw) {
  std::string s = to_lower(trim(raw));
  for (std::string_view p : {"https://doi.org/", "http://doi.org/",
                             "https://dx.doi.org/", "http://dx.doi.org/",
                             "doi.org/", "doi:"}) {
    s = strip_prefix_ci(s, p);
  }
  return trim(s);
}

bool is_valid_doi(std::string_view doi) {
  if (doi.size() < 6 || doi.substr(0, 3) != "10.") return false;
  std::size_t slash = doi.find('/');
  if (slash == std::string_view::npos || slash == 3 || slash + 1 >= doi.size()) {
    return false;
  }
  for (std::size_t i = 3; i < slash; ++i) {
    char c = doi[i];
    if (!((c >= '0' && c <= '9') || c == '.')) return false;
  }
  for (char c : doi) {
    if (c == ' ' || c == '\t' || c == '\n') return false;
  }
  return true;
}

bool is_valid_issn(std::string_view raw) {
  return issn_checksum_ok(compact(strip_prefix_ci(trim(raw), "issn:")));
}

bool is_valid_isbn(std::string_view raw) {
  std::string d = compact(strip_prefix_ci(trim(raw), "isbn:"));
  return isbn10_checksum_ok(d) || isbn13_checksum_ok(d);
}

std::string canonical_issn(std::string_view raw) {
  std::string d = compact(strip_prefix_ci(trim(raw), "issn:"));
  if (d.size() != 8) return d;
  return d.substr(0, 4) + "-" + d.substr(4);
}

std::string canonical_isbn(std::string_view raw) {
  return compact(strip_prefix_ci(trim(raw), "isbn:"));
}

std::optional<VenueId> parse_venue_id(std::string_view raw) {
  std::string t = trim(raw);
  std::string lower = to_lower(t);
  bool says_issn = lower.rfind("issn:", 0) == 0;
  bool says_isbn = lower.rfind("isbn:", 0) == 0;
  if (!says_isbn && is_valid_issn(t)) {
    return VenueId{VenueIdKind::kIssn, canonical_issn(t)};
  }
  if (!says_issn && is_valid_isbn(t)) {
    return VenueId{VenueIdKind::kIsbn, canonical_isbn(t)};
  }
  return std::nullopt;
}

}  // namespace retrace
