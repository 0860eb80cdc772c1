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

#ifndef VFIX_ANALYSIS_CLASS_METRICS_HPP_
#define VFIX_ANALYSIS_CLASS_METRICS_HPP_

#include <string>
#include <vector>

#include "vfix/common.hpp"
#include "vfix/java/ast.hpp"

namespace vfix::analysis {

enum class ClassType { Class, Interface, Anonymous };

std::string_view class_type_name(ClassType t);

struct ClassMetricsRow {
  std::string file;
  std::string class_name;
  ClassType class_type = ClassType::Class;
  // Values in class_metric_names() order.
  std::vector<double> metrics;
};

// The 18 metric ids in output order.
const std::vector<std::string>& class_metric_names();

// One row per class, interface, enum and anonymous class in the tree, in
// pre-order. Each row covers the type's own members only; nested types get
// rows of their own. Anonymous classes are named `<anonymous#k>`.
std::vector<ClassMetricsRow> class_metrics(const java::AstNode& root, const std::string& file = "");

// Per-metric sum over rows. No rows yields the zero vector.
FeatureVector file_metrics_vector(const std::vector<ClassMetricsRow>& rows);

// McCabe complexity of one method or constructor: decision points + 1.
int cyclomatic_complexity(const java::AstNode& method);

}  // namespace vfix::analysis

#endif  // VFIX_ANALYSIS_CLASS_METRICS_HPP_
