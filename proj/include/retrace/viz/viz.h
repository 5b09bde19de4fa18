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

#ifndef RETRACE_VIZ_VIZ_H_
#define RETRACE_VIZ_VIZ_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "retrace/topics/corpus.h"
#include "retrace/topics/lda.h"

namespace retrace::viz {

using topics::LdaModel;

// P(T): mean of each theta column.
std::vector<double> topic_prevalence(const LdaModel& model);

// P(w) = sum_T P(T) phi[T][w].
std::vector<double> term_marginal(const LdaModel& model, std::span<const double> prevalence);

// Jensen-Shannon divergence with natural logarithms; in [0, log 2].
double jensen_shannon(std::span<const double> p, std::span<const double> q);

// K x K row-major JSD matrix over phi rows.
std::vector<double> jsd_matrix(const LdaModel& model);

struct Point {
  double x = 0;
  double y = 0;
};

// Classical (Torgerson) MDS of an n x n distance matrix into two
// dimensions. Axes with a non-positive eigenvalue collapse to 0. Each axis
// is signed so its largest-magnitude coordinate (first on ties) is positive.
std::vector<Point> classical_mds(std::span<const double> distances, int n);

struct TermScore {
  int id;
  double value;
};

// P(w) * sum_T P(T|w) log(P(T|w) / P(T)) for every term; 0 where P(w) = 0.
std::vector<double> saliency(const LdaModel& model);
std::vector<TermScore> top_salient(const LdaModel& model, int n = 30);

// lambda log phi[t][w] + (1 - lambda) log(phi[t][w] / P(w)), terms with
// phi = 0 excluded, descending with id tie-break, at most n.
std::vector<TermScore> relevance(const LdaModel& model, int topic, double lambda = 0.6,
                                 int n = 30);

// {circles:[{topic,x,y,share}], salient:[{term,value}],
//  relevant:{topic:[{term,value}]}, lambda, distance:"jsd-natural-log"}
nlohmann::json ldavis_payload(const LdaModel& model, const topics::Dictionary& dictionary,
                              double lambda = 0.6, int n = 30);

struct MtmGroup {
  std::string label;
  long count = 0;
  std::vector<double> dist;
};

// Mean theta row per label, renormalised. labels[d] lists the labels of
// document d (a document counts once per distinct label). Groups are ordered
// by label; labels without documents never appear.
std::vector<MtmGroup> mtm_aggregate(const LdaModel& model,
                                    const std::vector<std::vector<std::string>>& labels);

// Keeps the top_n labels by document count (ties by label) and folds the rest
// into "Others", once per document.
std::vector<std::vector<std::string>> fold_long_tail(
    const std::vector<std::vector<std::string>>& labels, std::size_t top_n);

// {grouping, groups:[{label,count,dist}]}
nlohmann::json mtm_payload(const std::string& grouping, const std::vector<MtmGroup>& groups);

}  // namespace retrace::viz

#endif  // RETRACE_VIZ_VIZ_H_
