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

#ifndef RETRACE_ANNOTATE_ANNOTATION_H_
#define RETRACE_ANNOTATE_ANNOTATION_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace retrace::annotate {

enum class Sentiment { kPositive, kNegative, kNeutral };

std::string_view sentiment_name(Sentiment s);
// Throws ValidationError for anything outside positive/negative/neutral.
Sentiment parse_sentiment(std::string_view name);

// One in-text citation: the citing DOI plus the pointer's occurrence index
// within that document (extraction order, zero-based).
struct CitationKey {
  std::string doi;
  int pointer_index = 0;
  auto operator<=>(const CitationKey&) const = default;
};

// A versioned annotation write. Absent fields keep the previous version's
// value, so an intent write never touches the sentiment and vice versa.
struct Annotation {
  CitationKey key;
  std::optional<std::string> intent;
  std::optional<Sentiment> sentiment;
  std::optional<bool> retraction_mentioned;
  // Candidate functions picked in the decision model; the intent must be
  // their minimum-priority member.
  std::vector<std::string> candidates;
  std::string annotator;
  long version = 0;

  bool complete() const { return intent.has_value() && sentiment.has_value(); }
};

}  // namespace retrace::annotate

#endif  // RETRACE_ANNOTATE_ANNOTATION_H_
