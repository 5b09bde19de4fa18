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

#ifndef RETRACE_TOPICS_COHERENCE_H_
#define RETRACE_TOPICS_COHERENCE_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "retrace/topics/lda.h"

namespace retrace::topics {

// Document frequencies and pairwise co-document frequencies over a corpus,
// from per-document sets of distinct term ids.
class CooccurrenceIndex {
 public:
  CooccurrenceIndex(const std::vector<std::vector<int>>& doc_terms, int vocab);
  int df(int w) const { return postings_.at(w).size(); }
  // Number of documents containing both terms.
  int co_df(int a, int b) const;

 private:
  std::vector<std::vector<int>> postings_;  // sorted doc ids per term
};

struct TopicCoherence {
  std::vector<double> per_topic;
  double mean = 0;
};

// UMass: for each topic's top_n words w_1..w_n by phi, the sum over i > j
// of log((D(w_i, w_j) + 1) / D(w_j)). Throws ValidationError when top_n
// exceeds the vocabulary or a top word never occurs.
TopicCoherence umass_coherence(const LdaModel& model, const CooccurrenceIndex& index,
                               int top_n = 10);

struct CurvePoint {
  int k;
  double coherence;
};

struct CoherenceCurve {
  std::vector<CurvePoint> points;
  std::string measure = "umass";
};

struct PlateauRule {
  double epsilon = 0.005;
  int window = 2;
};

// Smoothed curve m_K = mean of coherence at K and the next two points.
// Selects the smallest K whose next `window` steps of m all improve by less
// than epsilon. Throws SelectionError when the curve has fewer than
// window + 2 points or never plateaus.
int select_plateau(const CoherenceCurve& curve, const PlateauRule& rule = {});

struct SweepParams {
  int k_min = 1;
  int k_max = 40;
  int runs = 3;  // seeds per K, averaged
  std::uint64_t seed = 1;
  int top_n = 10;
  LdaParams lda;  // k and seed are overwritten per run
  int threads = 0;  // 0: hardware concurrency
};

struct SweepResult {
  CoherenceCurve curve;
  std::optional<int> selected;
  std::string selection_error;  // set when no K was selected
};

// Trains every K in [k_min, k_max] `runs` times (seeds seed, seed+1, ...).
// K values run in parallel; the curve is assembled in K order so the
// result does not depend on scheduling.
SweepResult sweep_select_k(const std::vector<SparseDoc>& docs, int vocab,
                           const CooccurrenceIndex& index, const SweepParams& params,
                           const PlateauRule& rule = {});

// `k,coherence` CSV plus `<out>.json` carrying the points and the selected K.
void write_curve(const std::filesystem::path& out, const SweepResult& result);

}  // namespace retrace::topics

#endif  // RETRACE_TOPICS_COHERENCE_H_
