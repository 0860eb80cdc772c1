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

#ifndef VFIX_ANALYSIS_GRAPH_MEASURES_HPP_
#define VFIX_ANALYSIS_GRAPH_MEASURES_HPP_

#include <string>
#include <vector>

#include "vfix/code_graph.hpp"
#include "vfix/common.hpp"

namespace vfix::analysis {

// Measure names per graph kind, in output order.
const std::vector<std::string>& ast_measure_names();
const std::vector<std::string>& cfg_measure_names();

// Network measures of one graph. A measure whose precondition does not hold
// is exactly 0:
//   * distance measures (diameter, mean_shortest_path, max_depth) need a
//     connected graph with at least two nodes;
//   * degree_assortativity needs at least one edge and non-constant endpoint
//     degrees;
//   * weakly_connected_components exists for CFGs only.
// Degree-based measures and assortativity use the undirected simple view;
// out-degree measures use the directed edges.
FeatureVector graph_features(const CodeGraph& g);

// File-level vector: AST measures prefixed `ast_`, CFG measures aggregated
// over methods (counts summed, max_out_degree maximised, ratios averaged) and
// prefixed `cfg_`. No methods => every cfg_ measure is 0.
FeatureVector file_graph_vector(const CodeGraph& ast, const std::vector<CodeGraph>& cfgs);

// Names produced by file_graph_vector.
std::vector<std::string> file_graph_feature_names();

// Pearson correlation of edge-endpoint degrees over both orientations of
// every undirected edge; 0 when undefined.
double degree_assortativity(const CodeGraph& g);

}  // namespace vfix::analysis

#endif  // VFIX_ANALYSIS_GRAPH_MEASURES_HPP_
