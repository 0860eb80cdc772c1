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

#ifndef VFIX_PIPELINE_METRICS_HPP_
#define VFIX_PIPELINE_METRICS_HPP_

#include <vector>

#include "vfix/common.hpp"

namespace vfix::pipeline {

struct Metrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double accuracy = 0;
  long tp = 0, fp = 0, fn = 0, tn = 0;
};

// Confusion-matrix metrics. With no predicted positives precision is 0 when
// positives exist and 1 otherwise; recall is 1 when there are no positives.
Metrics evaluate(const Labels& y, const std::vector<int>& predicted);

// Predicts 1 where score >= threshold.
std::vector<int> apply_threshold(const std::vector<double>& scores, double threshold);

struct PrPoint {
  double threshold = 0;
  double precision = 0;
  double recall = 0;
};

// One point per distinct score, ascending threshold. Throws on single-class y
// or scores outside [0, 1].
std::vector<PrPoint> pr_curve(const Labels& y, const std::vector<double>& scores);

inline constexpr int kRecallGridSize = 101;

// Interpolated precision on the recall grid 0, 0.01, ..., 1: the best
// precision among points with recall >= the grid value.
std::vector<double> resample_pr(const std::vector<PrPoint>& curve);

// Highest-precision point with recall >= min_recall; ties go to higher
// recall, then lower threshold. Throws when no point qualifies.
PrPoint pick_threshold(const std::vector<PrPoint>& curve, double min_recall);

// Mean of the included models' probabilities. Throws when no weight is set
// or lengths differ.
std::vector<double> soft_vote(const std::vector<std::vector<double>>& probs,
                              const std::vector<int>& weights);

struct MeanStd {
  double mean = 0;
  double std = 0;  // population
};
MeanStd mean_std(const std::vector<double>& v);

}  // namespace vfix::pipeline

#endif  // VFIX_PIPELINE_METRICS_HPP_
