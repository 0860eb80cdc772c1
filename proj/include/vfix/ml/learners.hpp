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

#ifndef VFIX_ML_LEARNERS_HPP_
#define VFIX_ML_LEARNERS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vfix/common.hpp"
#include "vfix/ml/tree.hpp"

namespace vfix::ml {

enum class Algorithm {
  GaussianNB,
  LogisticRegression,
  DecisionTree,
  RandomForest,
  AdaBoost,
  GradientBoosting,
  LinearSvm
};

std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

// Whether fit() reports feature importances (and RFE can use the model).
bool has_importances(Algorithm a);

// Hyperparameters per algorithm (defaults in parentheses):
//   gaussian_nb          var_smoothing (1e-9)
//   logistic_regression  l2 (1)
//   linear_svm           l2 (1), epochs (300)
//   decision_tree        max_depth (0 = none), min_leaf (1)
//   random_forest        n_estimators (100), max_depth (0), min_leaf (1)
//   adaboost             n_estimators (50), learning_rate (1), max_depth (1)
//   gradient_boosting    n_estimators (100), learning_rate (0.1), max_depth (3), min_leaf (1)
struct ModelSpec {
  Algorithm algorithm = Algorithm::LogisticRegression;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  double param(const std::string& name) const;
  // Throws ValidationError on names outside the algorithm's space.
  void validate() const;
  bool operator==(const ModelSpec&) const = default;
};

const std::vector<std::string>& param_names(Algorithm a);
double default_param(Algorithm a, const std::string& name);

struct NaiveBayesParams {
  std::array<std::vector<double>, 2> mean;
  std::array<std::vector<double>, 2> var;
  std::array<double, 2> log_prior{};
  bool operator==(const NaiveBayesParams&) const = default;
};

struct LinearParams {
  std::vector<double> w;
  double b = 0;
  // Platt calibration (SVM): p = sigmoid(a * score + c).
  bool calibrated = false;
  double platt_a = 1;
  double platt_c = 0;
  bool operator==(const LinearParams&) const = default;
};

// Tree ensembles. Forest: mean of tree leaf frequencies. AdaBoost: weighted
// vote of {0,1} trees through a logistic link. Gradient boosting: logit =
// init + sum(weight * tree).
struct EnsembleParams {
  std::vector<Tree> trees;
  std::vector<double> weights;
  double init = 0;
  bool operator==(const EnsembleParams&) const = default;
};

using ModelBody = std::variant<NaiveBayesParams, LinearParams, Tree, EnsembleParams>;

struct TrainedModel {
  ModelSpec spec;
  std::size_t n_features = 0;
  std::optional<std::vector<double>> feature_importances;
  ModelBody body;

  // Class-1 probabilities in [0, 1]. Throws ValidationError on a width
  // mismatch.
  std::vector<double> predict_proba(const Matrix& x) const;
  // {P(class 0), P(class 1)} per row, each computed directly.
  std::vector<std::array<double, 2>> predict_class_proba(const Matrix& x) const;
  // Random forest only: per-tree class-1 probabilities, [tree][row].
  std::vector<std::vector<double>> tree_probas(const Matrix& x) const;
  bool operator==(const TrainedModel&) const = default;
};

// Deterministic for a fixed spec. Throws ValidationError for single-class y,
// non-finite X or mismatched sizes.
TrainedModel fit(const ModelSpec& spec, const Matrix& x, const Labels& y);

// Regularised objectives with analytic gradients over theta = (w..., b);
// the bias is not penalised.
double logistic_objective(const std::vector<double>& theta, const Matrix& x, const Labels& y,
                          double l2, std::vector<double>* grad);
double hinge_objective(const std::vector<double>& theta, const Matrix& x, const Labels& y,
                       double l2, std::vector<double>* grad);

// Text container (`vfix-model 1`); exact round trip.
std::string serialize_model(const TrainedModel& m);
TrainedModel deserialize_model(std::string_view text);

// AdaBoost training error after each boosting round (diagnostics).
std::vector<double> staged_training_error(const TrainedModel& m, const Matrix& x, const Labels& y);

}  // namespace vfix::ml

#endif  // VFIX_ML_LEARNERS_HPP_
