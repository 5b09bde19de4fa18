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

#include "retrace/annotate/mention.h"

#include "retrace/common/strings.h"

namespace retrace::annotate {

bool mentions_retraction(std::string_view context) {
  static constexpr std::string_view kStem = "retract";
  if (context.size() < kStem.size()) return false;
  for (std::size_t i = 0; i + kStem.size() <= context.size(); ++i) {
    if (i > 0 && is_ascii_alnum(context[i - 1])) continue;
    bool match = true;
    for (std::size_t j = 0; j < kStem.size(); ++j) {
      char c = context[i + j];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      if (c != kStem[j]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

bool roll_up_mentions(std::span<const std::string> contexts) {
  for (const auto& c : contexts) {
    if (mentions_retraction(c)) return true;
  }
  return false;
}

}  // namespace retrace::annotate
