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

#include "vfix/analysis/graph_measures.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace vfix::analysis {

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Undirected simple adjacency: no self-loops, no parallel edges.
Adjacency undirected(const CodeGraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  Adjacency adj(g.node_count);
  for (auto [a, b] : g.edges) {
    if (a == b) continue;
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

std::size_t undirected_edge_count(const Adjacency& adj) {
  std::size_t twice = 0;
  for (const auto& n : adj) twice += n.size();
  return twice / 2;
}

std::vector<std::size_t> bfs(const Adjacency& adj, std::size_t src) {
  constexpr auto kInf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(adj.size(), kInf);
  std::deque<std::size_t> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    for (std::size_t v : adj[u]) {
      if (dist[v] == kInf) {
        dist[v] = dist[u] + 1;
        q.push_back(v);
      }
    }
  }
  return dist;
}

std::size_t component_count(const Adjacency& adj) {
  std::vector<bool> seen(adj.size(), false);
  std::size_t components = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (seen[s]) continue;
    ++components;
    std::deque<std::size_t> q{s};
    seen[s] = true;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          q.push_back(v);
        }
      }
    }
  }
  return components;
}

double density(std::size_t n, std::size_t e) {
  if (n < 2) return 0.0;
  return static_cast<double>(e) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::set<std::pair<std::size_t, std::size_t>> unique_directed(const CodeGraph& g) {
  return {g.edges.begin(), g.edges.end()};
}

}  // namespace

const std::vector<std::string>& ast_measure_names() {
  static const std::vector<std::string> names = {
      "node_count",   "edge_count",    "density",   "mean_degree",
      "max_degree",   "degree_variance", "leaf_fraction", "max_depth",
      "diameter",     "mean_shortest_path", "degree_assortativity"};
  return names;
}

const std::vector<std::string>& cfg_measure_names() {
  static const std::vector<std::string> names = {
      "node_count",        "edge_count",       "density",
      "mean_out_degree",   "max_out_degree",   "branch_node_count",
      "weakly_connected_components", "cyclomatic_number", "degree_assortativity"};
  return names;
}

double degree_assortativity(const CodeGraph& g) {
  Adjacency adj = undirected(g);
  double m = 0, sx = 0, sxx = 0, sxy = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    const double du = static_cast<double>(adj[u].size());
    for (std::size_t v : adj[u]) {
      const double dv = static_cast<double>(adj[v].size());
      m += 1;
      sx += du;
      sxx += du * du;
      sxy += du * dv;
    }
  }
  if (m == 0) return 0.0;
  const double mean = sx / m;
  const double var = sxx / m - mean * mean;
  if (var <= 1e-12 * std::max(1.0, sxx / m)) return 0.0;
  double r = (sxy / m - mean * mean) / var;
  return std::clamp(r, -1.0, 1.0);
}

FeatureVector graph_features(const CodeGraph& g) {
  const std::size_t n = g.node_count;
  Adjacency adj = undirected(g);
  const std::size_t components = n ? component_count(adj) : 0;
  const bool connected = n >= 1 && components == 1;

  if (g.kind == GraphKind::Ast) {
    const std::size_t e = g.edges.size();
    const std::size_t eu = undirected_edge_count(adj);
    double mean_degree = 0, max_degree = 0, degree_variance = 0, leaf_fraction = 0;
    if (n > 0) {
      mean_degree = 2.0 * static_cast<double>(eu) / static_cast<double>(n);
      double ss = 0;
      std::size_t leaves = 0;
      for (const auto& nb : adj) {
        double d = static_cast<double>(nb.size());
        max_degree = std::max(max_degree, d);
        ss += (d - mean_degree) * (d - mean_degree);
        leaves += nb.size() == 1;
      }
      degree_variance = ss / static_cast<double>(n);
      leaf_fraction = static_cast<double>(leaves) / static_cast<double>(n);
    }
    double diameter = 0, mean_path = 0, max_depth = 0;
    if (connected && n >= 2) {
      double total = 0;
      std::size_t worst = 0;
      for (std::size_t s = 0; s < n; ++s) {
        auto dist = bfs(adj, s);
        for (std::size_t t = s + 1; t < n; ++t) {
          total += static_cast<double>(dist[t]);
          worst = std::max(worst, dist[t]);
        }
      }
      diameter = static_cast<double>(worst);
      mean_path = total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
      // Depth: directed distance from the root (the node without parents).
      std::vector<std::size_t> indeg(n, 0);
      for (auto [a, b] : g.edges) ++indeg[b];
      std::size_t root = static_cast<std::size_t>(
          std::find(indeg.begin(), indeg.end(), 0) - indeg.begin());
      if (root < n) {
        Adjacency down(n);
        for (auto [a, b] : g.edges) down[a].push_back(b);
        auto dist = bfs(down, root);
        std::size_t deepest = 0;
        for (std::size_t d : dist) {
          if (d != static_cast<std::size_t>(-1)) deepest = std::max(deepest, d);
        }
        max_depth = static_cast<double>(deepest);
      }
    }
    return FeatureVector(ast_measure_names(),
                         {static_cast<double>(n), static_cast<double>(e), density(n, e),
                          mean_degree, max_degree, degree_variance, leaf_fraction, max_depth,
                          diameter, mean_path, degree_assortativity(g)});
  }

  auto directed = unique_directed(g);
  const std::size_t e = directed.size();
  std::vector<std::size_t> outdeg(n, 0);
  for (auto [a, b] : directed) ++outdeg[a];
  double max_out = 0, branches = 0;
  for (std::size_t d : outdeg) {
    max_out = std::max(max_out, static_cast<double>(d));
    branches += d >= 2;
  }
  const double mean_out = n ? static_cast<double>(e) / static_cast<double>(n) : 0.0;
  const double cyclomatic =
      n ? static_cast<double>(e) - static_cast<double>(n) + 2.0 * static_cast<double>(components)
        : 0.0;
  return FeatureVector(cfg_measure_names(),
                       {static_cast<double>(n), static_cast<double>(e), density(n, e), mean_out,
                        max_out, branches, static_cast<double>(components), cyclomatic,
                        degree_assortativity(g)});
}

std::vector<std::string> file_graph_feature_names() {
  std::vector<std::string> names;
  for (const auto& m : ast_measure_names()) names.push_back("ast_" + m);
  for (const auto& m : cfg_measure_names()) names.push_back("cfg_" + m);
  return names;
}

FeatureVector file_graph_vector(const CodeGraph& ast, const std::vector<CodeGraph>& cfgs) {
  FeatureVector out;
  FeatureVector a = graph_features(ast);
  for (std::size_t i = 0; i < a.size(); ++i) out.push("ast_" + a.names[i], a.values[i]);

  const auto& names = cfg_measure_names();
  std::vector<double> agg(names.size(), 0.0);
  for (const auto& cfg : cfgs) {
    FeatureVector f = graph_features(cfg);
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string& m = names[i];
      if (m == "max_out_degree") {
        agg[i] = std::max(agg[i], f.values[i]);
      } else {
        agg[i] += f.values[i];
      }
    }
  }
  if (!cfgs.empty()) {
    const double k = static_cast<double>(cfgs.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      const std::string& m = names[i];
      if (m == "density" || m == "mean_out_degree" || m == "degree_assortativity") agg[i] /= k;
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i) out.push("cfg_" + names[i], agg[i]);
  return out;
}

}  // namespace vfix::analysis
