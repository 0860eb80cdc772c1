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

#ifndef VFIX_PIPELINE_SELECTION_HPP_
#define VFIX_PIPELINE_SELECTION_HPP_

#include <cstdint>
#include <vector>

#include "vfix/common.hpp"
#include "vfix/ml/learners.hpp"

namespace vfix::pipeline {

inline constexpr int kFolds = 5;

// Keeps columns whose variance on a min-max scaled copy is >= threshold.
// Throws ValidationError when nothing survives.
std::vector<bool> variance_select(const Matrix& x, double threshold);

// Scans columns left to right and drops any column whose |Pearson r| with an
// already kept column exceeds r_max. Constant columns correlate with nothing.
std::vector<bool> correlation_filter(const Matrix& x, double r_max);

// Recursive feature elimination: fit, drop the `step` least important
// columns (never past n_keep), repeat. Ties drop the higher index first.
std::vector<bool> rfe(const ml::ModelSpec& spec, const Matrix& x, const Labels& y,
                      std::size_t n_keep, std::size_t step);

// Standardisation with population standard deviation; constant columns map
// to 0.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> scale;  // 0 marks a constant column

  static Scaler fit(const Matrix& x);
  Matrix apply(const Matrix& x) const;
  bool operator==(const Scaler&) const = default;
};

// Fold index per row. Fold sizes differ by at most one and each fold holds
// a near-proportional share of each class. Throws when a class has fewer
// than k members.
std::vector<int> stratified_kfold(const Labels& y, int k, std::uint64_t seed);

// Checks that every fold 0..k-1 is present and holds both classes.
void validate_folds(const std::vector<int>& folds, const Labels& y, int k = kFolds);

struct SelectionConfig {
  // Drop constant and duplicate columns of the training rows first (the
  // per-fold variant of embedding pruning).
  bool prune = false;
  bool variance = false;
  double variance_threshold = 0.01;
  bool correlation = false;
  double r_max = 0.95;
  bool rfe = false;
  std::size_t rfe_keep = 25;
  bool operator==(const SelectionConfig&) const = default;
};

// The fitted preprocessing chain: prune, variance and correlation masks,
// scaler, then RFE on the scaled columns.
struct Preprocessor {
  std::vector<std::size_t> columns;      // raw columns kept before scaling
  Scaler scaler;                         // over `columns`
  std::vector<std::size_t> rfe_columns;  // indices into `columns`

  Matrix transform(const Matrix& raw) const;
  bool operator==(const Preprocessor&) const = default;
};

// Fits on the given (training) rows only.
Preprocessor fit_preprocessor(const Matrix& x, const Labels& y, const SelectionConfig& sel,
                              const ml::ModelSpec& model);

// Rows whose fold is not in `excluded`.
std::vector<std::size_t> rows_outside(const std::vector<int>& folds, std::initializer_list<int> excluded);
std::vector<std::size_t> rows_in(const std::vector<int>& folds, int fold);
Labels select_labels(const Labels& y, const std::vector<std::size_t>& rows);

}  // namespace vfix::pipeline

#endif  // VFIX_PIPELINE_SELECTION_HPP_
