// Copyright 2026 The vfix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vfix/pipeline/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vfix::pipeline {

Metrics evaluate(const Labels& y, const std::vector<int>& predicted) {
  if (y.size() != predicted.size()) throw ValidationError("evaluate: length mismatch");
  Metrics m;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (predicted[i]) {
      (y[i] ? m.tp : m.fp)++;
    } else {
      (y[i] ? m.fn : m.tn)++;
    }
  }
  const double tp = static_cast<double>(m.tp);
  const long positives = m.tp + m.fn;
  if (m.tp + m.fp > 0) {
    m.precision = tp / static_cast<double>(m.tp + m.fp);
  } else {
    m.precision = positives > 0 ? 0.0 : 1.0;
  }
  m.recall = positives > 0 ? tp / static_cast<double>(positives) : 1.0;
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.accuracy = y.empty() ? 0.0 : static_cast<double>(m.tp + m.tn) / static_cast<double>(y.size());
  return m;
}

std::vector<int> apply_threshold(const std::vector<double>& scores, double threshold) {
  std::vector<int> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] >= threshold;
  return out;
}

std::vector<PrPoint> pr_curve(const Labels& y, const std::vector<double>& scores) {
  if (y.size() != scores.size()) throw ValidationError("pr_curve: length mismatch");
  long positives = std::count(y.begin(), y.end(), 1);
  if (positives == 0 || positives == static_cast<long>(y.size())) {
    throw ValidationError("pr_curve: labels must contain both classes");
  }
  for (double s : scores) {
    if (!(s >= 0 && s <= 1)) throw ValidationError("pr_curve: score outside [0, 1]");
  }
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  // Sweep from the highest score down; each distinct score closes a group.
  std::vector<PrPoint> desc;
  long tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (y[order[i]] ? tp : fp)++;
    if (i + 1 == order.size() || scores[order[i + 1]] != scores[order[i]]) {
      desc.push_back({scores[order[i]], static_cast<double>(tp) / static_cast<double>(tp + fp),
                      static_cast<double>(tp) / static_cast<double>(positives)});
    }
  }
  return {desc.rbegin(), desc.rend()};
}

std::vector<double> resample_pr(const std::vector<PrPoint>& curve) {
  std::vector<double> out(kRecallGridSize, 0.0);
  for (int g = 0; g < kRecallGridSize; ++g) {
    const double r = g / 100.0;
    double best = 0;
    for (const auto& p : curve) {
      // Guard the grid against representation error (e.g. 0.29 vs 29/100).
      if (p.recall >= r - 1e-12) best = std::max(best, p.precision);
    }
    out[static_cast<std::size_t>(g)] = best;
  }
  return out;
}

PrPoint pick_threshold(const std::vector<PrPoint>& curve, double min_recall) {
  if (min_recall < 0 || min_recall > 1) throw ValidationError("pick_threshold: min_recall outside [0, 1]");
  const PrPoint* best = nullptr;
  double best_recall = 0;
  for (const auto& p : curve) {
    best_recall = std::max(best_recall, p.recall);
    if (p.recall < min_recall - 1e-12) continue;
    if (!best || p.precision > best->precision ||
        (p.precision == best->precision &&
         (p.recall > best->recall || (p.recall == best->recall && p.threshold < best->threshold)))) {
      best = &p;
    }
  }
  if (!best) {
    throw ValidationError("pick_threshold: no point reaches recall " + std::to_string(min_recall) +
                          "; best achievable recall is " + std::to_string(best_recall));
  }
  return *best;
}

std::vector<double> soft_vote(const std::vector<std::vector<double>>& probs,
                              const std::vector<int>& weights) {
  if (probs.size() != weights.size()) throw ValidationError("soft_vote: one weight per model");
  std::vector<std::size_t> included;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] != 0 && weights[m] != 1) throw ValidationError("soft_vote: weights must be 0 or 1");
    if (weights[m]) included.push_back(m);
  }
  if (included.empty()) throw ValidationError("soft_vote: no model included");
  const std::size_t n = probs[included[0]].size();
  std::vector<double> out(n, 0.0);
  for (std::size_t m : included) {
    if (probs[m].size() != n) throw ValidationError("soft_vote: probability lists differ in length");
    for (std::size_t i = 0; i < n; ++i) out[i] += probs[m][i];
  }
  for (double& v : out) v /= static_cast<double>(included.size());
  return out;
}

MeanStd mean_std(const std::vector<double>& v) {
  if (v.empty()) return {};
  double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, std::sqrt(s / static_cast<double>(v.size()))};
}

}  // namespace vfix::pipeline
