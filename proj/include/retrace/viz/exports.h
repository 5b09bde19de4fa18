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

#ifndef RETRACE_VIZ_EXPORTS_H_
#define RETRACE_VIZ_EXPORTS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "retrace/report/period.h"
#include "retrace/topics/corpus.h"
#include "retrace/topics/lda.h"

namespace retrace::viz {

enum class MtmGrouping { kPeriod, kArea, kYear };

std::string_view mtm_grouping_name(MtmGrouping g);
MtmGrouping parse_mtm_grouping(std::string_view name);

// `topic,rank,term,probability`, top n terms per topic.
void write_terms_topics(const std::filesystem::path& out, const topics::LdaModel& model,
                        const topics::Dictionary& dictionary, int n = 30);

// `doc_id,dominant_topic,topic_0,...`; the dominant topic is the lowest
// index among maximal weights.
void write_docs_topics(const std::filesystem::path& out, const topics::LdaModel& model,
                       const std::vector<std::string>& doc_ids);

// Labels for each model document from classified metadata. Context ids
// "<doi>#<n>" resolve through their DOI. Documents without metadata, or
// with a year outside the periods, get no label.
std::vector<std::vector<std::string>> mtm_labels(const std::vector<std::string>& doc_ids,
                                                 const std::filesystem::path& meta,
                                                 MtmGrouping grouping,
                                                 const report::PeriodConfig& periods);

// Writes the grouped payload; top_n > 0 folds the long tail into "Others".
void write_mtm(const std::filesystem::path& out, const topics::LdaModel& model,
               const std::vector<std::string>& doc_ids, const std::filesystem::path& meta,
               MtmGrouping grouping, const report::PeriodConfig& periods,
               std::size_t top_n = 0);

void write_ldavis(const std::filesystem::path& out, const topics::LdaModel& model,
                  const topics::Dictionary& dictionary, double lambda = 0.6, int n = 30);

}  // namespace retrace::viz

#endif  // RETRACE_VIZ_EXPORTS_H_
