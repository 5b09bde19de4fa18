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

#ifndef RETRACE_COMMON_IDENTIFIERS_H_
#define RETRACE_COMMON_IDENTIFIERS_H_

#include <optional>
#include <string>
#include <string_view>

namespace retrace {

// Lowercases, trims and strips resolver prefixes ("https://doi.org/",
// "doi:"). Does not validate.
std::string normalize_doi(std::string_view raw);

// "10.<registrant>/<suffix>" after normalization.
bool is_valid_doi(std::string_view doi);

enum class VenueIdKind { kIssn, kIsbn };

struct VenueId {
  VenueIdKind kind;
  // Canonical form: ISSN as "NNNN-NNNC", ISBN as bare digits (10 or 13).
  std::string value;
};

bool is_valid_issn(std::string_view raw);
bool is_valid_isbn(std::string_view raw);

// Accepts "issn:"/"isbn:" prefixes, hyphens and spaces. Returns nullopt when
// the identifier is neither a valid ISSN nor a valid ISBN.
std::optional<VenueId> parse_venue_id(std::string_view raw);

std::string canonical_issn(std::string_view raw);
std::string canonical_isbn(std::string_view raw);

}  // namespace retrace

#endif  // RETRACE_COMMON_IDENTIFIERS_H_
