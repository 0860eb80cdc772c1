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

#ifndef VFIX_PIPELINE_EXPERIMENT_HPP_
#define VFIX_PIPELINE_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "vfix/embedding.hpp"
#include "vfix/pipeline/search.hpp"

namespace vfix::pipeline {

struct ExperimentOptions {
  int n_iter = 200;
  double min_recall = 0.3;
  std::uint64_t seed = 0;
  int jobs = 1;
  // Prune constant and duplicate columns inside each training split.
  bool prune_per_fold = false;
};

struct EmbeddingSearch {
  std::string embedding;
  std::vector<std::string> feature_names;
  std::vector<Candidate> candidates;
  std::vector<CvScores> scores;
  std::vector<std::vector<CvScore>> table;
  NestedResult nested;
  Ranked best;
};

struct EnsembleOption {
  std::vector<int> weights;  // voting
  ml::ModelSpec final_spec;  // stacking
};

struct EnsembleSearch {
  std::string kind;  // "voting" or "stacking"
  std::vector<EnsembleOption> grid;
  std::vector<CvScores> scores;
  std::vector<std::vector<CvScore>> table;
  NestedResult nested;
  Ranked best;
};

struct Experiment {
  ExperimentOptions options;
  std::vector<std::string> commit_ids;
  Labels labels;
  std::vector<int> folds;
  std::vector<EmbeddingSearch> embeddings;
  EnsembleSearch voting;
  EnsembleSearch stacking;
};

// Non-empty 0/1 weight vectors over n bases in binary counting order.
std::vector<std::vector<int>> voting_grid(std::size_t n_bases);

// Final estimators for stacking: every learner with a small grid.
std::vector<ml::ModelSpec> stacking_grid(std::uint64_t seed);

// Throws ValidationError unless the embeddings share rows, labels and folds.
void check_aligned(const std::vector<EmbeddingMatrix>& data);

// Random search per embedding, then voting and stacking grids, all evaluated
// with nested cross-fold selection (see nested_evaluate).
Experiment run_experiment(const std::vector<EmbeddingMatrix>& data, const ExperimentOptions& opt);

// Models refitted on every row for later scoring.
struct DeployedPipeline {
  std::string embedding;
  std::vector<std::string> feature_names;  // raw input columns
  FittedPipeline pipeline;
  double threshold = 0.5;

  std::vector<double> predict(const EmbeddingMatrix& m) const;
};

struct Deployment {
  std::vector<DeployedPipeline> bases;
  std::vector<int> voting_weights;
  double voting_threshold = 0.5;
  ml::TrainedModel stacker;
  double stacking_threshold = 0.5;

  struct Scores {
    std::vector<std::vector<double>> bases;
    std::vector<double> voting;
    std::vector<double> stacking;
  };
  Scores score(const std::vector<EmbeddingMatrix>& data) const;
};

Deployment deploy(const Experiment& ex, const std::vector<EmbeddingMatrix>& data);

std::string serialize_pipeline(const DeployedPipeline& p);
DeployedPipeline deserialize_pipeline(std::string_view text);
std::string serialize_ensemble(const Deployment& d);
// Fills the ensemble fields of `d`.
void deserialize_ensemble(std::string_view text, Deployment& d);

}  // namespace vfix::pipeline

#endif  // VFIX_PIPELINE_EXPERIMENT_HPP_
