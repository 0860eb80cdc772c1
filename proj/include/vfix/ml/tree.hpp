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

#ifndef VFIX_ML_TREE_HPP_
#define VFIX_ML_TREE_HPP_

#include <span>
#include <vector>

#include "vfix/common.hpp"
#include "vfix/random.hpp"

namespace vfix::ml {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0;
  int left = -1;
  int right = -1;
  double value = 0;  // weighted mean target of the samples reaching the node

  bool leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

// Binary tree; samples with x[feature] <= threshold go left.
struct Tree {
  std::vector<TreeNode> nodes;

  int leaf_index(std::span<const double> x) const;
  double predict(std::span<const double> x) const { return nodes[static_cast<std::size_t>(leaf_index(x))].value; }
  bool operator==(const Tree&) const = default;
};

struct TreeOptions {
  int max_depth = 0;     // 0 = unlimited
  int min_leaf = 1;      // minimum samples per child
  int max_features = 0;  // features drawn per split; 0 = all
};

// CART on weighted targets. For 0/1 targets the variance criterion equals
// half the Gini impurity, so the same builder serves classification and
// regression. Candidate thresholds are midpoints between consecutive distinct
// values; ties in gain go to the lowest feature index, then the lowest
// threshold. `importance` (size = cols) accumulates weighted impurity
// decrease. `rng` is required when max_features > 0.
Tree build_tree(const Matrix& x, std::span<const double> target, std::span<const double> weight,
                const TreeOptions& options, Rng* rng, std::vector<double>& importance);

}  // namespace vfix::ml

#endif  // VFIX_ML_TREE_HPP_
