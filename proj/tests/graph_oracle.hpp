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

#ifndef VFIX_TESTS_GRAPH_ORACLE_HPP_
#define VFIX_TESTS_GRAPH_ORACLE_HPP_

// Independent reference computations for graph measures: Floyd-Warshall
// distances and a direct Pearson correlation over the edge list.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "vfix/code_graph.hpp"

namespace vfix::oracle {

struct Undirected {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // a < b, unique
  std::vector<int> degree;
};

inline Undirected undirected(const CodeGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (auto [a, b] : g.edges) {
    if (a != b) s.insert({std::min(a, b), std::max(a, b)});
  }
  Undirected u{g.node_count, {s.begin(), s.end()}, std::vector<int>(g.node_count, 0)};
  for (auto [a, b] : u.edges) {
    ++u.degree[a];
    ++u.degree[b];
  }
  return u;
}

inline std::vector<std::vector<double>> all_pairs(const Undirected& u) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(u.n, std::vector<double>(u.n, inf));
  for (std::size_t i = 0; i < u.n; ++i) d[i][i] = 0;
  for (auto [a, b] : u.edges) d[a][b] = d[b][a] = 1;
  for (std::size_t k = 0; k < u.n; ++k)
    for (std::size_t i = 0; i < u.n; ++i)
      for (std::size_t j = 0; j < u.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline double diameter(const CodeGraph& g) {
  auto d = all_pairs(undirected(g));
  double best = 0;
  for (auto& row : d)
    for (double v : row) best = std::max(best, v);
  return best;
}

inline double mean_shortest_path(const CodeGraph& g) {
  auto d = all_pairs(undirected(g));
  double total = 0, pairs = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      total += d[i][j];
      pairs += 1;
    }
  return pairs ? total / pairs : 0;
}

inline double assortativity(const CodeGraph& g) {
  auto u = undirected(g);
  std::vector<double> x, y;
  for (auto [a, b] : u.edges) {
    x.push_back(u.degree[a]);
    y.push_back(u.degree[b]);
    x.push_back(u.degree[b]);
    y.push_back(u.degree[a]);
  }
  if (x.empty()) return 0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

inline CodeGraph make(GraphKind kind, std::size_t n,
                      std::vector<std::pair<std::size_t, std::size_t>> edges) {
  CodeGraph g;
  g.kind = kind;
  for (std::size_t i = 0; i < n; ++i) g.add_node("n" + std::to_string(i));
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline CodeGraph path4() { return make(GraphKind::Ast, 4, {{0, 1}, {1, 2}, {2, 3}}); }
inline CodeGraph star4() { return make(GraphKind::Ast, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}); }
inline CodeGraph binary_tree3() {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 1; i < 15; ++i) e.push_back({(i - 1) / 2, i});
  return make(GraphKind::Ast, 15, e);
}
// ENTRY(0) -> c(2) -> a(3) | b(4) -> d(5) -> EXIT(1)
inline CodeGraph diamond_cfg() {
  return make(GraphKind::Cfg, 6, {{0, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}, {5, 1}});
}

}  // namespace vfix::oracle

#endif  // VFIX_TESTS_GRAPH_ORACLE_HPP_
