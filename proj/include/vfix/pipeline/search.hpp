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

#ifndef VFIX_PIPELINE_SEARCH_HPP_
#define VFIX_PIPELINE_SEARCH_HPP_

#include <functional>
#include <string>
#include <vector>

#include "vfix/common.hpp"
#include "vfix/ml/learners.hpp"
#include "vfix/pipeline/metrics.hpp"
#include "vfix/pipeline/selection.hpp"
#include "vfix/random.hpp"

namespace vfix::pipeline {

// One point of the random-search space: a model plus its selection steps.
struct Candidate {
  ml::ModelSpec model;
  SelectionConfig selection;
  bool operator==(const Candidate&) const = default;
};

// Draws a candidate. The algorithm is uniform over the seven learners;
// RFE is only drawn for learners with importances.
Candidate sample_candidate(Rng& rng);

struct FittedPipeline {
  Candidate candidate;
  Preprocessor prep;
  ml::TrainedModel model;

  std::vector<double> predict(const Matrix& raw) const;
};

FittedPipeline fit_pipeline(const Candidate& c, const Matrix& x, const Labels& y);

// Out-of-fold probabilities for one option.
//   outer[r]    from the model trained without fold(r);
//   inner[k][r] for fold(r) != k, from the model trained without both k and
//               fold(r). It is NaN on fold k, so everything derived from
//               inner[k] is blind to fold k.
// A model trained without {k, j} serves inner[k] on fold j and inner[j] on
// fold k, so one option costs 5 + 10 fits.
struct CvScores {
  bool ok = false;
  std::string error;
  std::vector<double> outer;
  std::vector<std::vector<double>> inner;
};

// Trains `train(rows)` and returns a predictor for other rows.
using FitFn = std::function<std::function<std::vector<double>(const std::vector<std::size_t>&)>(
    const std::vector<std::size_t>& train_rows)>;

CvScores cross_fold_scores(const std::vector<int>& folds, const FitFn& fit);

CvScores cross_validate(const Candidate& c, const Matrix& x, const Labels& y,
                        const std::vector<int>& folds);

// Selection criterion of one option for outer fold `skip`: mean precision
// (and recall) over the other folds, each at its own pick_threshold point.
// skip = -1 scores every fold from `scores`.
struct CvScore {
  double precision = -1;
  double recall = -1;
};
CvScore fold_score(const Labels& y, const std::vector<double>& scores,
                   const std::vector<int>& folds, int skip, double min_recall);

// Criterion table [option][k] for options with CvScores.
std::vector<std::vector<CvScore>> criterion_table(const std::vector<CvScores>& options,
                                                  const Labels& y, const std::vector<int>& folds,
                                                  double min_recall);

// Index with the best criterion; ties go to higher recall, then the lower
// index. Returns -1 when every option failed.
int best_option(const std::vector<CvScore>& scores);

struct FoldOutcome {
  int fold = 0;
  int choice = -1;
  double threshold = 0;
  Metrics metrics;
  std::vector<double> pr_grid;
};

// Honest evaluation: for each fold k choose the option by criterion on
// inner[k], pick the threshold on the pooled inner[k] scores, then score fold
// k with outer scores.
struct NestedResult {
  std::vector<FoldOutcome> folds;
  MeanStd precision, recall, f1, accuracy;
  std::vector<MeanStd> pr;  // over the recall grid
};

NestedResult nested_evaluate(const std::vector<CvScores>& options,
                             const std::vector<std::vector<CvScore>>& table, const Labels& y,
                             const std::vector<int>& folds, double min_recall);

// Best option over all folds (mean criterion across k).
struct Ranked {
  int index = -1;
  double precision = -1;
  double recall = -1;
};
Ranked overall_best(const std::vector<std::vector<CvScore>>& table);

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace vfix::pipeline

#endif  // VFIX_PIPELINE_SEARCH_HPP_
