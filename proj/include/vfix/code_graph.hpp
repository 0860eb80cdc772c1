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

#ifndef VFIX_CODE_GRAPH_HPP_
#define VFIX_CODE_GRAPH_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vfix/java/ast.hpp"

namespace vfix {

enum class GraphKind { Ast, Cfg };

// Directed graph with labelled nodes. AST graphs point parent -> child; CFG
// graphs point from a statement to its possible successors.
struct CodeGraph {
  GraphKind kind = GraphKind::Ast;
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::string> node_labels;

  std::size_t add_node(std::string label) {
    node_labels.push_back(std::move(label));
    return node_count++;
  }
  void add_edge(std::size_t from, std::size_t to) { edges.emplace_back(from, to); }

  // Throws ValidationError when an index is out of range or an AST graph
  // carries a self-loop.
  void validate() const;
};

// One node per AST node (pre-order numbering, root = 0) and one edge per
// parent -> child link.
CodeGraph ast_to_graph(const java::AstNode& root);

// CFG node indices of the distinguished entry and exit nodes.
inline constexpr std::size_t kCfgEntry = 0;
inline constexpr std::size_t kCfgExit = 1;

// Statement-level control-flow graph of one method or constructor body.
// Node 0 is ENTRY and node 1 is EXIT; statement nodes follow in creation
// order and are labelled by their statement kind. Statements that follow an
// unconditional jump have no predecessors.
CodeGraph build_cfg(const java::AstNode& method);

// CFGs for every method and constructor with a body, in source order,
// including members of nested and anonymous classes.
std::vector<CodeGraph> build_cfgs(const java::AstNode& root);

// Graphviz rendering for debugging.
std::string to_dot(const CodeGraph& g, const std::string& name = "g");

}  // namespace vfix

#endif  // VFIX_CODE_GRAPH_HPP_
