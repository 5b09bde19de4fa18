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

#include "retrace/topics/coherence.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "retrace/common/csv.h"
#include "retrace/common/error.h"
#include "retrace/common/strings.h"

namespace retrace::topics {

CooccurrenceIndex::CooccurrenceIndex(const std::vector<std::vector<int>>& doc_terms,
                                     int vocab)
    : postings_(vocab) {
  for (std::size_t d = 0; d < doc_terms.size(); ++d) {
    for (int w : doc_terms[d]) {
      if (w < 0 || w >= vocab) throw ValidationError("term id outside the vocabulary");
      auto& p = postings_[w];
      if (p.empty() || p.back() != static_cast<int>(d)) p.push_back(static_cast<int>(d));
    }
  }
}

int CooccurrenceIndex::co_df(int a, int b) const {
  const auto& x = postings_.at(a);
  const auto& y = postings_.at(b);
  int n = 0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

TopicCoherence umass_coherence(const LdaModel& model, const CooccurrenceIndex& index,
                               int top_n) {
  if (top_n < 1 || top_n > model.vocab) {
    throw ValidationError("top_n must be between 1 and the vocabulary size");
  }
  TopicCoherence out;
  for (int t = 0; t < model.k; ++t) {
    std::vector<int> words = top_terms(model, t, top_n);
    double score = 0;
    for (std::size_t i = 1; i < words.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        int dj = index.df(words[j]);
        if (dj == 0) {
          throw ValidationError("top word " + std::to_string(words[j]) +
                                " never occurs in the corpus");
        }
        score += std::log((index.co_df(words[i], words[j]) + 1.0) / dj);
      }
    }
    out.per_topic.push_back(score);
    out.mean += score;
  }
  out.mean /= model.k;
  return out;
}

int select_plateau(const CoherenceCurve& curve, const PlateauRule& rule) {
  const auto& pts = curve.points;
  const int n = static_cast<int>(pts.size());
  if (rule.window < 1) throw ValidationError("plateau window must be positive");
  if (n < rule.window + 2) {
    throw SelectionError("coherence curve has " + std::to_string(n) +
                         " points; the plateau rule needs at least " +
                         std::to_string(rule.window + 2));
  }
  for (int i = 1; i < n; ++i) {
    if (pts[i].k <= pts[i - 1].k) throw ValidationError("curve K values must increase");
  }
  std::vector<double> smooth;
  for (int i = 0; i + 2 < n; ++i) {
    smooth.push_back((pts[i].coherence + pts[i + 1].coherence + pts[i + 2].coherence) / 3.0);
  }
  const int steps = static_cast<int>(smooth.size()) - 1;
  for (int i = 0; i + rule.window <= steps; ++i) {
    bool flat = true;
    for (int s = i; s < i + rule.window; ++s) {
      if (smooth[s + 1] - smooth[s] >= rule.epsilon) {
        flat = false;
        break;
      }
    }
    if (flat) return pts[i].k;
  }
  throw SelectionError("coherence curve never plateaus (epsilon " +
                       format_double(rule.epsilon) + ", window " +
                       std::to_string(rule.window) + ")");
}

SweepResult sweep_select_k(const std::vector<SparseDoc>& docs, int vocab,
                           const CooccurrenceIndex& index, const SweepParams& p,
                           const PlateauRule& rule) {
  if (p.k_min < 1 || p.k_max < p.k_min) throw ValidationError("empty K range");
  if (p.runs < 1) throw ValidationError("runs per K must be positive");
  const int count = p.k_max - p.k_min + 1;
  std::vector<double> scores(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        double total = 0;
        for (int r = 0; r < p.runs; ++r) {
          LdaParams lp = p.lda;
          lp.k = p.k_min + i;
          lp.seed = p.seed + static_cast<std::uint64_t>(r);
          LdaModel m = train_lda(docs, vocab, lp);
          total += umass_coherence(m, index, std::min(p.top_n, vocab)).mean;
        }
        scores[i] = total / p.runs;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int threads = p.threads > 0 ? p.threads
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepResult result;
  for (int i = 0; i < count; ++i) result.curve.points.push_back({p.k_min + i, scores[i]});
  try {
    result.selected = select_plateau(result.curve, rule);
  } catch (const SelectionError& e) {
    result.selection_error = e.what();
  }
  return result;
}

void write_curve(const std::filesystem::path& out, const SweepResult& result) {
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  csv::Writer w(out, {"k", "coherence"});
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : result.curve.points) {
    w.write({std::to_string(pt.k), format_double(pt.coherence)});
    points.push_back({{"k", pt.k}, {"coherence", pt.coherence}});
  }
  nlohmann::json j{{"measure", result.curve.measure}, {"points", points}};
  j["selected"] = result.selected ? nlohmann::json(*result.selected) : nlohmann::json(nullptr);
  if (!result.selection_error.empty()) j["selection_error"] = result.selection_error;
  std::filesystem::path side = out;
  side += ".json";
  write_text_file(side, j.dump(2) + "\n");
}

}  // namespace retrace::topics
