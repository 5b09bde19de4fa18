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

#ifndef RETRACE_ANNOTATE_MENTION_H_
#define RETRACE_ANNOTATE_MENTION_H_

#include <span>
#include <string>
#include <string_view>

namespace retrace::annotate {

// True iff some word starts with "retract" (any case): the match must sit at
// the start of the text or right after a non-alphanumeric character.
// "retracted", "Retractions" and "non-retraction" match; "unretracted" and
// "tractor" do not.
bool mentions_retraction(std::string_view context);

// Entity-level flag: any of its citation contexts mentions the retraction.
bool roll_up_mentions(std::span<const std::string> contexts);

}  // namespace retrace::annotate

#endif  // RETRACE_ANNOTATE_MENTION_H_
