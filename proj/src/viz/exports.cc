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

#include "retrace/viz/exports.h"

#include <map>

#include <json.hpp>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/identifiers.h"
#include "retrace/common/strings.h"
#include "retrace/viz/viz.h"

namespace retrace::viz {

std::string_view mtm_grouping_name(MtmGrouping g) {
  switch (g) {
    case MtmGrouping::kPeriod:
      return "period";
    case MtmGrouping::kArea:
      return "area";
    case MtmGrouping::kYear:
      return "year";
  }
  return "period";
}

MtmGrouping parse_mtm_grouping(std::string_view name) {
  for (auto g : {MtmGrouping::kPeriod, MtmGrouping::kArea, MtmGrouping::kYear}) {
    if (name == mtm_grouping_name(g)) return g;
  }
  throw ValidationError("unknown grouping '" + std::string(name) + "' (period, area, year)");
}

void write_terms_topics(const std::filesystem::path& out, const topics::LdaModel& model,
                        const topics::Dictionary& dictionary, int n) {
  csv::Writer w(out, {"topic", "rank", "term", "probability"});
  for (int t = 0; t < model.k; ++t) {
    std::vector<int> ids = topics::top_terms(model, t, n);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      w.write({std::to_string(t), std::to_string(r + 1), dictionary.token(ids[r]),
               format_double(model.phi_at(t, ids[r]))});
    }
  }
}

void write_docs_topics(const std::filesystem::path& out, const topics::LdaModel& model,
                       const std::vector<std::string>& doc_ids) {
  if (static_cast<int>(doc_ids.size()) != model.docs) {
    throw ValidationError("document ids do not match the model");
  }
  csv::Row header{"doc_id", "dominant_topic"};
  for (int t = 0; t < model.k; ++t) header.push_back("topic_" + std::to_string(t));
  csv::Writer w(out, header);
  for (int d = 0; d < model.docs; ++d) {
    int best = 0;
    for (int t = 1; t < model.k; ++t) {
      if (model.theta_at(d, t) > model.theta_at(d, best)) best = t;
    }
    csv::Row row{doc_ids[d], std::to_string(best)};
    for (int t = 0; t < model.k; ++t) row.push_back(format_double(model.theta_at(d, t)));
    w.write(row);
  }
}

std::vector<std::vector<std::string>> mtm_labels(const std::vector<std::string>& doc_ids,
                                                 const std::filesystem::path& meta,
                                                 MtmGrouping grouping,
                                                 const report::PeriodConfig& periods) {
  csv::Table t = csv::read_file(meta);
  std::size_t doi = t.column("doi");
  std::size_t col = t.column(grouping == MtmGrouping::kArea ? "area" : "year");
  std::map<std::string, std::vector<std::string>> by_doi;
  for (const auto& row : t.rows) {
    std::vector<std::string> labels;
    const std::string& cell = col < row.size() ? row[col] : "";
    if (grouping == MtmGrouping::kArea) {
      labels = csv::split_multi(cell);
    } else {
      int year = 0;
      try {
        year = std::stoi(cell);
      } catch (const std::exception&) {
        year = 0;
      }
      if (grouping == MtmGrouping::kYear) {
        if (year > 0) labels.push_back(std::to_string(year));
      } else if (year > 0) {
        report::Period p = report::partition_period(year, periods);
        if (p != report::Period::kOutOfRange) {
          labels.push_back(std::string(report::period_label(p)));
        }
      }
    }
    by_doi[normalize_doi(row[doi])] = std::move(labels);
  }
  std::vector<std::vector<std::string>> out;
  out.reserve(doc_ids.size());
  for (const auto& id : doc_ids) {
    auto it = by_doi.find(normalize_doi(id.substr(0, id.find('#'))));
    out.push_back(it == by_doi.end() ? std::vector<std::string>{} : it->second);
  }
  return out;
}

void write_mtm(const std::filesystem::path& out, const topics::LdaModel& model,
               const std::vector<std::string>& doc_ids, const std::filesystem::path& meta,
               MtmGrouping grouping, const report::PeriodConfig& periods, std::size_t top_n) {
  auto labels = mtm_labels(doc_ids, meta, grouping, periods);
  if (top_n > 0) labels = fold_long_tail(labels, top_n);
  auto groups = mtm_aggregate(model, labels);
  write_text_file(out,
                  mtm_payload(std::string(mtm_grouping_name(grouping)), groups).dump(2) + "\n");
}

void write_ldavis(const std::filesystem::path& out, const topics::LdaModel& model,
                  const topics::Dictionary& dictionary, double lambda, int n) {
  write_text_file(out, ldavis_payload(model, dictionary, lambda, n).dump(2) + "\n");
}

}  // namespace retrace::viz
