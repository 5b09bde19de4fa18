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

#ifndef RETRACE_EXTRACT_SENTENCES_H_
#define RETRACE_EXTRACT_SENTENCES_H_

#include <string>
#include <string_view>
#include <vector>

namespace retrace::extract {

// Rule-based sentence splitter.
//
// A sentence ends at '.', '!' or '?' (plus any closing quotes) when all of
// these hold:
//   - no bracket, parenthesis or brace is open;
//   - whitespace or the end of text follows;
//   - the next word starts with an uppercase letter, a digit, a quote or an
//     opening bracket;
//   - the word before the terminator is not a known abbreviation ("al.",
//     "Fig.", "e.g.", ...) and not an initial. A single capital letter with a
//     period is an initial when it starts the sentence, or follows another
//     initial, a word ending in ',', "and", "&" or a capitalised word.
// A blank line always ends a sentence. Sentences are returned with their
// whitespace collapsed, so joining them with spaces reproduces the input
// modulo whitespace.
std::vector<std::string> split_sentences(std::string_view text);

}  // namespace retrace::extract

#endif  // RETRACE_EXTRACT_SENTENCES_H_
