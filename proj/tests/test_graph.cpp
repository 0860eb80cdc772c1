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

#include <gtest/gtest.h>

#include <algorithm>

#include "graph_oracle.hpp"
#include "vfix/analysis/graph_measures.hpp"
#include "vfix/code_graph.hpp"
#include "vfix/java/parser.hpp"
#include "vfix/random.hpp"

namespace vfix {
namespace {

using analysis::file_graph_vector;
using analysis::graph_features;
using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

CodeGraph cfg_of(std::string_view body) {
  std::string src = "class A { void f(boolean c, int n) { " + std::string(body) + " } }";
  auto r = java::parse_file(src);
  EXPECT_TRUE(r.ok()) << (r.failure ? r.failure->to_string() : "");
  auto cfgs = build_cfgs(*r.ast);
  EXPECT_EQ(cfgs.size(), 1u);
  return cfgs.at(0);
}

Edges sorted(Edges e) {
  std::sort(e.begin(), e.end());
  return e;
}

TEST(Cfg, EmptyBody) {
  CodeGraph g = cfg_of("");
  EXPECT_EQ(g.node_count, 2u);
  EXPECT_EQ(g.edges, (Edges{{kCfgEntry, kCfgExit}}));
}

TEST(Cfg, StraightLine) {
  for (int k = 1; k <= 6; ++k) {
    std::string body;
    for (int i = 0; i < k; ++i) body += "n++; ";
    CodeGraph g = cfg_of(body);
    EXPECT_EQ(g.node_count, static_cast<std::size_t>(k + 2));
    EXPECT_EQ(g.edges.size(), static_cast<std::size_t>(k + 1));
    auto f = graph_features(g);
    EXPECT_EQ(f.at("cyclomatic_number"), 1.0);
  }
}

TEST(Cfg, Diamond) {
  // nodes: 2 If, 3 a, 4 b, 5 d
  CodeGraph g = cfg_of("if (c) { n = 1; } else { n = 2; } n++;");
  EXPECT_EQ(sorted(g.edges), sorted({{0, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}, {5, 1}}));
}

TEST(Cfg, ReturnAndThrowGoToExit) {
  CodeGraph g = cfg_of("if (c) return; throw new RuntimeException();");
  // 2 If, 3 Return, 4 Throw
  EXPECT_EQ(sorted(g.edges), sorted({{0, 2}, {2, 3}, {2, 4}, {3, 1}, {4, 1}}));
}

TEST(Cfg, LoopBackEdge) {
  CodeGraph g = cfg_of("while (c) { n++; } n--;");
  // 2 While, 3 n++, 4 n--
  EXPECT_EQ(sorted(g.edges), sorted({{0, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 1}}));
}

TEST(Cfg, InfiniteLoopBreak) {
  CodeGraph g = cfg_of("for (;;) { if (c) break; } n++;");
  // 2 For, 3 If, 4 Break, 5 n++
  EXPECT_EQ(sorted(g.edges), sorted({{0, 2}, {2, 3}, {3, 4}, {3, 2}, {4, 5}, {5, 1}}));
}

TEST(Cfg, SwitchWithoutDefault) {
  CodeGraph g = cfg_of("switch (n) { case 1: n++; case 2: n--; break; } c = true;");
  // 2 Switch, 3 Case1, 4 n++, 5 Case2, 6 n--, 7 Break, 8 c=true
  EXPECT_EQ(sorted(g.edges),
            sorted({{0, 2}, {2, 3}, {3, 4}, {2, 5}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 8}, {8, 1}}));
}

TEST(Cfg, TryCatchFinally) {
  CodeGraph g = cfg_of("try { n++; n--; } catch (Exception e) { c = false; } finally { n = 0; }");
  // 2 Try, 3 n++, 4 n--, 5 Catch, 6 c=false, 7 Finally, 8 n=0
  EXPECT_EQ(sorted(g.edges), sorted({{0, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {5, 6}, {4, 7},
                                     {6, 7}, {7, 8}, {8, 1}}));
}

TEST(Cfg, UnreachableAfterReturn) {
  // 2 Return, 3 n++ (no predecessors, still falls through to EXIT)
  CodeGraph g = cfg_of("return; n++;");
  EXPECT_EQ(sorted(g.edges), sorted({{0, 2}, {2, 1}, {3, 1}}));
}

TEST(GraphMeasures, SingleNodeAst) {
  CodeGraph g = oracle::make(GraphKind::Ast, 1, {});
  auto f = graph_features(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(f.values[i], f.names[i] == "node_count" ? 1.0 : 0.0) << f.names[i];
  }
}

TEST(GraphMeasures, PathP4) {
  auto f = graph_features(oracle::path4());
  EXPECT_EQ(f.at("diameter"), 3.0);
  EXPECT_DOUBLE_EQ(f.at("mean_shortest_path"), 10.0 / 6.0);
  EXPECT_EQ(f.at("max_depth"), 3.0);
  EXPECT_DOUBLE_EQ(f.at("leaf_fraction"), 0.5);
}

TEST(GraphMeasures, StarS4) {
  auto f = graph_features(oracle::star4());
  EXPECT_DOUBLE_EQ(f.at("degree_assortativity"), -1.0);
  EXPECT_EQ(f.at("max_degree"), 4.0);
  EXPECT_DOUBLE_EQ(f.at("mean_degree"), 8.0 / 5.0);
  EXPECT_DOUBLE_EQ(f.at("degree_variance"), (2.4 * 2.4 + 4 * 0.6 * 0.6) / 5.0);
}

TEST(GraphMeasures, FixturesMatchOracle) {
  for (const CodeGraph& g : {oracle::path4(), oracle::star4(), oracle::binary_tree3()}) {
    auto f = graph_features(g);
    EXPECT_EQ(f.at("diameter"), oracle::diameter(g));
    EXPECT_NEAR(f.at("mean_shortest_path"), oracle::mean_shortest_path(g), 1e-12);
    EXPECT_NEAR(f.at("degree_assortativity"), oracle::assortativity(g), 1e-12);
    EXPECT_EQ(f.at("edge_count"), g.node_count - 1.0);
    EXPECT_LE(f.at("diameter"), g.node_count - 1.0);
  }
  auto diamond = oracle::diamond_cfg();
  auto f = graph_features(diamond);
  EXPECT_EQ(f.at("node_count"), 6.0);
  EXPECT_EQ(f.at("edge_count"), 6.0);
  EXPECT_DOUBLE_EQ(f.at("density"), 6.0 / 30.0);
  EXPECT_EQ(f.at("max_out_degree"), 2.0);
  EXPECT_EQ(f.at("branch_node_count"), 1.0);
  EXPECT_EQ(f.at("cyclomatic_number"), 2.0);
  EXPECT_EQ(f.at("weakly_connected_components"), 1.0);
  EXPECT_NEAR(f.at("degree_assortativity"), oracle::assortativity(diamond), 1e-12);
}

TEST(GraphMeasures, ConditionalZeros) {
  // Disconnected AST-kind graph: distance measures are 0.
  auto split = oracle::make(GraphKind::Ast, 4, {{0, 1}, {2, 3}});
  auto f = graph_features(split);
  EXPECT_EQ(f.at("diameter"), 0.0);
  EXPECT_EQ(f.at("mean_shortest_path"), 0.0);
  EXPECT_EQ(f.at("max_depth"), 0.0);
  // Edgeless graphs: assortativity is 0.
  auto lone = oracle::make(GraphKind::Cfg, 3, {});
  EXPECT_EQ(graph_features(lone).at("degree_assortativity"), 0.0);
  EXPECT_EQ(graph_features(lone).at("weakly_connected_components"), 3.0);
  // Empty graph: everything 0.
  auto empty = oracle::make(GraphKind::Cfg, 0, {});
  for (double v : graph_features(empty).values) EXPECT_EQ(v, 0.0);
}

TEST(GraphMeasures, AssortativityBoundsOnRandomGraphs) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + rng.below(12);
    Edges e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng.uniform() < 0.3) e.push_back({i, j});
    auto g = oracle::make(GraphKind::Cfg, n, e);
    double r = analysis::degree_assortativity(g);
    EXPECT_GE(r, -1.0);
    EXPECT_LE(r, 1.0);
    EXPECT_NEAR(r, oracle::assortativity(g), 1e-9);
    if (e.empty()) EXPECT_EQ(r, 0.0);
  }
}

TEST(FileGraphVector, Aggregation) {
  auto r = java::parse_file(
      "class A { void f() { int a = 1; a++; a--; } void g() { int b = 0; b++; b++; b++; b++; } }");
  ASSERT_TRUE(r.ok());
  auto cfgs = build_cfgs(*r.ast);
  ASSERT_EQ(cfgs.size(), 2u);
  EXPECT_EQ(cfgs[0].node_count, 5u);
  EXPECT_EQ(cfgs[1].node_count, 7u);
  auto v = file_graph_vector(ast_to_graph(*r.ast), cfgs);
  EXPECT_EQ(v.at("cfg_node_count"), 12.0);
  double d0 = graph_features(cfgs[0]).at("density");
  double d1 = graph_features(cfgs[1]).at("density");
  EXPECT_DOUBLE_EQ(v.at("cfg_density"), (d0 + d1) / 2);
  EXPECT_EQ(v.at("cfg_cyclomatic_number"), 2.0);
  EXPECT_EQ(v.names, analysis::file_graph_feature_names());
}

TEST(FileGraphVector, NoMethods) {
  auto r = java::parse_file("class A { int x; }");
  ASSERT_TRUE(r.ok());
  auto v = file_graph_vector(ast_to_graph(*r.ast), build_cfgs(*r.ast));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.names[i].rfind("cfg_", 0) == 0) EXPECT_EQ(v.values[i], 0.0) << v.names[i];
  }
}

}  // namespace
}  // namespace vfix
