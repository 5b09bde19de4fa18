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

#include "retrace/viz/viz.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "retrace/common/error.h"
#include "retrace/simd/kernels.h"

namespace retrace::viz {

using nlohmann::json;

std::vector<double> topic_prevalence(const LdaModel& m) {
  std::vector<double> p(m.k, 0.0);
  if (m.docs == 0) {
    std::fill(p.begin(), p.end(), 1.0 / m.k);
    return p;
  }
  for (int d = 0; d < m.docs; ++d) {
    simd::axpy(p, std::span<const double>(&m.theta[std::size_t(d) * m.k], m.k), 1.0);
  }
  simd::scale(p, 1.0 / m.docs);
  return p;
}

std::vector<double> term_marginal(const LdaModel& m, std::span<const double> prevalence) {
  std::vector<double> pw(m.vocab, 0.0);
  for (int t = 0; t < m.k; ++t) {
    simd::axpy(pw, std::span<const double>(&m.phi[std::size_t(t) * m.vocab], m.vocab),
               prevalence[t]);
  }
  return pw;
}

double jensen_shannon(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ValidationError("distributions differ in length");
  double kl_p = 0, kl_q = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double mid = 0.5 * (p[i] + q[i]);
    if (p[i] > 0) kl_p += p[i] * std::log(p[i] / mid);
    if (q[i] > 0) kl_q += q[i] * std::log(q[i] / mid);
  }
  double d = 0.5 * (kl_p + kl_q);
  return std::clamp(d, 0.0, std::log(2.0));
}

std::vector<double> jsd_matrix(const LdaModel& m) {
  std::vector<double> out(std::size_t(m.k) * m.k, 0.0);
  for (int a = 0; a < m.k; ++a) {
    std::span<const double> pa(&m.phi[std::size_t(a) * m.vocab], m.vocab);
    for (int b = a + 1; b < m.k; ++b) {
      std::span<const double> pb(&m.phi[std::size_t(b) * m.vocab], m.vocab);
      double d = jensen_shannon(pa, pb);
      out[std::size_t(a) * m.k + b] = d;
      out[std::size_t(b) * m.k + a] = d;
    }
  }
  return out;
}

std::vector<Point> classical_mds(std::span<const double> distances, int n) {
  if (n < 1 || distances.size() != std::size_t(n) * n) {
    throw ValidationError("distance matrix must be n x n with n >= 1");
  }
  std::vector<Point> out(n);
  if (n == 1) return out;
  Eigen::MatrixXd d2(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double d = distances[std::size_t(i) * n + j];
      d2(i, j) = d * d;
    }
  }
  Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd b = -0.5 * centering * d2 * centering;
  b = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("eigen-decomposition of the MDS matrix failed");
  }
  // Eigenvalues come back ascending.
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (int axis = 0; axis < 2 && axis < n; ++axis) {
    int col = n - 1 - axis;
    double lambda = values(col);
    std::vector<double> coord(n, 0.0);
    if (lambda > 1e-12) {
      double s = std::sqrt(lambda);
      for (int i = 0; i < n; ++i) coord[i] = vectors(i, col) * s;
      int pivot = 0;
      for (int i = 1; i < n; ++i) {
        if (std::abs(coord[i]) > std::abs(coord[pivot]) + 1e-12) pivot = i;
      }
      if (coord[pivot] < 0) {
        for (double& c : coord) c = -c;
      }
    }
    for (int i = 0; i < n; ++i) (axis == 0 ? out[i].x : out[i].y) = coord[i];
  }
  return out;
}

std::vector<double> saliency(const LdaModel& m) {
  std::vector<double> prev = topic_prevalence(m);
  std::vector<double> pw = term_marginal(m, prev);
  std::vector<double> out(m.vocab, 0.0);
  for (int w = 0; w < m.vocab; ++w) {
    if (pw[w] <= 0) continue;
    double distinct = 0;
    for (int t = 0; t < m.k; ++t) {
      if (prev[t] <= 0) continue;
      double p_tw = prev[t] * m.phi_at(t, w) / pw[w];
      if (p_tw > 0) distinct += p_tw * std::log(p_tw / prev[t]);
    }
    out[w] = pw[w] * distinct;
  }
  return out;
}

namespace {

std::vector<TermScore> take_top(std::vector<TermScore> scores, int n) {
  int take = std::clamp(n, 0, static_cast<int>(scores.size()));
  std::partial_sort(scores.begin(), scores.begin() + take, scores.end(),
                    [](const TermScore& a, const TermScore& b) {
                      return a.value != b.value ? a.value > b.value : a.id < b.id;
                    });
  scores.resize(take);
  return scores;
}

}  // namespace

std::vector<TermScore> top_salient(const LdaModel& m, int n) {
  std::vector<double> s = saliency(m);
  std::vector<TermScore> scores;
  for (int w = 0; w < m.vocab; ++w) scores.push_back({w, s[w]});
  return take_top(std::move(scores), n);
}

std::vector<TermScore> relevance(const LdaModel& m, int topic, double lambda, int n) {
  if (topic < 0 || topic >= m.k) throw ValidationError("topic index out of range");
  if (!(lambda >= 0 && lambda <= 1)) throw ValidationError("lambda must be in [0, 1]");
  std::vector<double> pw = term_marginal(m, topic_prevalence(m));
  std::vector<TermScore> scores;
  for (int w = 0; w < m.vocab; ++w) {
    double phi = m.phi_at(topic, w);
    if (phi <= 0 || pw[w] <= 0) continue;
    double r = lambda * std::log(phi) + (1 - lambda) * std::log(phi / pw[w]);
    scores.push_back({w, r});
  }
  return take_top(std::move(scores), n);
}

json ldavis_payload(const LdaModel& m, const topics::Dictionary& dict, double lambda,
                    int n) {
  if (dict.size() != m.vocab) {
    throw ValidationError("dictionary size does not match the model vocabulary");
  }
  std::vector<double> prev = topic_prevalence(m);
  double prev_total = std::accumulate(prev.begin(), prev.end(), 0.0);
  std::vector<Point> pts = classical_mds(jsd_matrix(m), m.k);
  json circles = json::array();
  for (int t = 0; t < m.k; ++t) {
    circles.push_back({{"topic", t}, {"x", pts[t].x}, {"y", pts[t].y},
                       {"share", prev[t] / prev_total}});
  }
  auto terms = [&](const std::vector<TermScore>& scores) {
    json arr = json::array();
    for (const auto& s : scores) arr.push_back({{"term", dict.token(s.id)}, {"value", s.value}});
    return arr;
  };
  json relevant = json::object();
  for (int t = 0; t < m.k; ++t) relevant[std::to_string(t)] = terms(relevance(m, t, lambda, n));
  return json{{"circles", circles},
              {"salient", terms(top_salient(m, n))},
              {"relevant", relevant},
              {"lambda", lambda},
              {"distance", "jsd-natural-log"}};
}

std::vector<MtmGroup> mtm_aggregate(const LdaModel& m,
                                    const std::vector<std::vector<std::string>>& labels) {
  if (static_cast<int>(labels.size()) != m.docs) {
    throw ValidationError("label list does not match the number of documents");
  }
  std::map<std::string, MtmGroup> groups;
  for (int d = 0; d < m.docs; ++d) {
    std::set<std::string> distinct(labels[d].begin(), labels[d].end());
    for (const auto& l : distinct) {
      MtmGroup& g = groups[l];
      if (g.dist.empty()) {
        g.label = l;
        g.dist.assign(m.k, 0.0);
      }
      ++g.count;
      simd::axpy(g.dist, std::span<const double>(&m.theta[std::size_t(d) * m.k], m.k), 1.0);
    }
  }
  std::vector<MtmGroup> out;
  for (auto& [label, g] : groups) {
    double total = std::accumulate(g.dist.begin(), g.dist.end(), 0.0);
    if (total <= 0) continue;
    for (double& v : g.dist) v /= total;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<std::vector<std::string>> fold_long_tail(
    const std::vector<std::vector<std::string>>& labels, std::size_t top_n) {
  std::map<std::string, long> counts;
  for (const auto& ls : labels) {
    for (const auto& l : std::set<std::string>(ls.begin(), ls.end())) ++counts[l];
  }
  std::vector<std::pair<std::string, long>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::set<std::string> keep;
  for (std::size_t i = 0; i < ranked.size() && i < top_n; ++i) keep.insert(ranked[i].first);
  std::vector<std::vector<std::string>> out;
  for (const auto& ls : labels) {
    std::set<std::string> mapped;
    for (const auto& l : ls) mapped.insert(keep.count(l) ? l : "Others");
    out.emplace_back(mapped.begin(), mapped.end());
  }
  return out;
}

json mtm_payload(const std::string& grouping, const std::vector<MtmGroup>& groups) {
  json arr = json::array();
  for (const auto& g : groups) {
    arr.push_back({{"label", g.label}, {"count", g.count}, {"dist", g.dist}});
  }
  return json{{"grouping", grouping}, {"groups", arr}};
}

}  // namespace retrace::viz
