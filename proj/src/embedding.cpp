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

#include "vfix/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <set>

#include "vfix/analysis/class_metrics.hpp"
#include "vfix/analysis/graph_measures.hpp"
#include "vfix/analysis/lint.hpp"
#include "vfix/code_graph.hpp"
#include "vfix/csv.hpp"
#include "vfix/java/parser.hpp"

namespace vfix {

std::string_view analyzer_name(Analyzer a) {
  switch (a) {
    case Analyzer::Lint:
      return "lint";
    case Analyzer::LintStyle:
      return "lint_style";
    case Analyzer::Metrics:
      return "metrics";
    case Analyzer::Graph:
      return "graph";
  }
  return "lint";
}

Analyzer parse_analyzer(std::string_view name) {
  for (Analyzer a : all_analyzers()) {
    if (analyzer_name(a) == name) return a;
  }
  throw ValidationError("unknown analyzer '" + std::string(name) + "'");
}

const std::vector<Analyzer>& all_analyzers() {
  static const std::vector<Analyzer> all = {Analyzer::Lint, Analyzer::LintStyle, Analyzer::Metrics,
                                            Analyzer::Graph};
  return all;
}

namespace {

analysis::LintConfiguration lint_config(Analyzer a) {
  return a == Analyzer::LintStyle ? analysis::LintConfiguration::Style
                                  : analysis::LintConfiguration::Strict;
}

const std::vector<analysis::Rule>& catalog(Analyzer a) {
  static const auto strict = analysis::rule_catalog(analysis::LintConfiguration::Strict);
  static const auto style = analysis::rule_catalog(analysis::LintConfiguration::Style);
  return lint_config(a) == analysis::LintConfiguration::Style ? style : strict;
}

FeatureVector compute(Analyzer a, const java::AstNode* ast, std::string_view text) {
  FeatureVector v;
  switch (a) {
    case Analyzer::Lint:
    case Analyzer::LintStyle: {
      for (const auto& [id, n] : analysis::run_rules(ast, text, catalog(a))) {
        v.push(id, n);
      }
      break;
    }
    case Analyzer::Metrics:
      v = ast ? analysis::file_metrics_vector(analysis::class_metrics(*ast))
              : FeatureVector::zeros(analysis::class_metric_names());
      break;
    case Analyzer::Graph:
      v = ast ? analysis::file_graph_vector(ast_to_graph(*ast), build_cfgs(*ast))
              : FeatureVector::zeros(analysis::file_graph_feature_names());
      break;
  }
  v.push("parse_error", ast ? 0.0 : 1.0);
  return v;
}

}  // namespace

std::vector<std::string> analyzer_feature_names(Analyzer a) {
  std::vector<std::string> names;
  switch (a) {
    case Analyzer::Lint:
    case Analyzer::LintStyle: {
      for (const auto& r : catalog(a)) names.push_back(r.id);
      std::sort(names.begin(), names.end());
      break;
    }
    case Analyzer::Metrics:
      names = analysis::class_metric_names();
      break;
    case Analyzer::Graph:
      names = analysis::file_graph_feature_names();
      break;
  }
  names.push_back("parse_error");
  return names;
}

std::map<Analyzer, FeatureVector> analyze_source_all(std::string_view text,
                                                     const std::vector<Analyzer>& analyzers) {
  java::ParseResult parsed = java::parse_file(text);
  std::map<Analyzer, FeatureVector> out;
  for (Analyzer a : analyzers) out[a] = compute(a, parsed.ast.get(), text);
  return out;
}

FeatureVector analyze_source(Analyzer a, std::string_view text) {
  return analyze_source_all(text, {a}).at(a);
}

std::pair<FeatureVector, FeatureVector> version_vectors(const FilePair& pair, Analyzer a) {
  auto zeros = FeatureVector::zeros(analyzer_feature_names(a));
  FeatureVector pre = pair.pre_text ? analyze_source(a, *pair.pre_text) : zeros;
  FeatureVector post = pair.post_text ? analyze_source(a, *pair.post_text) : zeros;
  return {std::move(pre), std::move(post)};
}

FeatureVector file_diff(const FeatureVector& pre, const FeatureVector& post) {
  if (pre.names != post.names) throw ValidationError("file_diff: feature names differ");
  FeatureVector out = pre;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = post.values[i] - pre.values[i];
  return out;
}

FeatureVector aggregate_commit(const std::vector<FeatureVector>& diffs,
                               const std::vector<std::string>& universe) {
  std::vector<double> pos(universe.size(), 0.0), neg(universe.size(), 0.0);
  for (const auto& d : diffs) {
    if (d.names != universe) throw ValidationError("aggregate_commit: feature universe mismatch");
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d.values[i] > 0) pos[i] += d.values[i];
      if (d.values[i] < 0) neg[i] -= d.values[i];
    }
  }
  FeatureVector out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    out.push(universe[i] + "_pos", pos[i]);
    out.push(universe[i] + "_neg", neg[i]);
  }
  return out;
}

std::map<Analyzer, FeatureVector> embed_commit(const CommitSnapshot& snap,
                                               const std::vector<Analyzer>& analyzers) {
  std::map<Analyzer, std::vector<FeatureVector>> diffs;
  for (const auto& file : snap.files) {
    std::map<Analyzer, FeatureVector> pre, post;
    if (file.pre_text) pre = analyze_source_all(*file.pre_text, analyzers);
    if (file.post_text) post = analyze_source_all(*file.post_text, analyzers);
    for (Analyzer a : analyzers) {
      auto zeros = FeatureVector::zeros(analyzer_feature_names(a));
      diffs[a].push_back(file_diff(file.pre_text ? pre.at(a) : zeros,
                                   file.post_text ? post.at(a) : zeros));
    }
  }
  std::map<Analyzer, FeatureVector> out;
  for (Analyzer a : analyzers) out[a] = aggregate_commit(diffs[a], analyzer_feature_names(a));
  return out;
}

void EmbeddingMatrix::validate() const {
  std::set<std::string> names(feature_names.begin(), feature_names.end());
  if (names.size() != feature_names.size()) {
    throw ValidationError("embedding " + analyzer + ": duplicate column names");
  }
  if (labels.size() != rows() || folds.size() != rows() || values.rows() != rows() ||
      (rows() > 0 && values.cols() != feature_names.size())) {
    throw ValidationError("embedding " + analyzer + ": matrix is not rectangular");
  }
}

EmbeddingMatrix select_columns(const EmbeddingMatrix& m, const std::vector<bool>& keep) {
  EmbeddingMatrix out = m;
  auto idx = mask_indices(keep);
  out.feature_names.clear();
  for (std::size_t i : idx) out.feature_names.push_back(m.feature_names[i]);
  out.values = m.values.select_cols(idx);
  if (m.rows() == 0) out.values = Matrix(0, idx.size());
  return out;
}

EmbeddingMatrix sort_columns(const EmbeddingMatrix& m) {
  std::vector<std::size_t> order(m.feature_names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.feature_names[a] < m.feature_names[b];
  });
  EmbeddingMatrix out = m;
  out.feature_names.clear();
  for (std::size_t i : order) out.feature_names.push_back(m.feature_names[i]);
  out.values = m.rows() ? m.values.select_cols(order) : Matrix(0, order.size());
  return out;
}

double round_significant(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return std::strtod(buf, nullptr);
}

std::vector<bool> prune_mask(const EmbeddingMatrix& m, std::span<const std::size_t> rows) {
  std::vector<std::size_t> use(rows.begin(), rows.end());
  if (use.empty()) {
    use.resize(m.rows());
    std::iota(use.begin(), use.end(), 0);
  }
  std::vector<std::size_t> order(m.feature_names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.feature_names[a] < m.feature_names[b];
  });
  std::vector<bool> keep(m.feature_names.size(), false);
  std::set<std::vector<double>> seen;
  for (std::size_t c : order) {
    std::vector<double> col;
    col.reserve(use.size());
    for (std::size_t r : use) col.push_back(round_significant(m.values(r, c)));
    bool constant = std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); });
    if (constant) continue;
    if (!seen.insert(std::move(col)).second) continue;
    keep[c] = true;
  }
  return keep;
}

EmbeddingMatrix prune_columns(const EmbeddingMatrix& m) { return select_columns(m, prune_mask(m)); }

std::string format_embedding(const EmbeddingMatrix& m) {
  m.validate();
  EmbeddingMatrix s = sort_columns(m);
  std::string out;
  csv::Row header = {"commit_id", "label", "test_fold"};
  header.insert(header.end(), s.feature_names.begin(), s.feature_names.end());
  out += csv::format_row(header);
  for (std::size_t r = 0; r < s.rows(); ++r) {
    csv::Row row = {s.commit_ids[r], std::to_string(s.labels[r]), std::to_string(s.folds[r])};
    for (double v : s.values.row(r)) row.push_back(csv::format_number(v));
    out += csv::format_row(row);
  }
  return out;
}

EmbeddingMatrix parse_embedding(std::string_view text, std::string analyzer) {
  auto rows = csv::parse(text);
  if (rows.empty() || rows[0].size() < 3 || rows[0][0] != "commit_id" || rows[0][1] != "label" ||
      rows[0][2] != "test_fold") {
    throw ValidationError("embedding " + analyzer + ": header must start with commit_id,label,test_fold");
  }
  EmbeddingMatrix m;
  m.analyzer = std::move(analyzer);
  m.feature_names.assign(rows[0].begin() + 3, rows[0].end());
  std::vector<std::vector<double>> data;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != rows[0].size()) {
      throw ValidationError("embedding " + m.analyzer + ": row " + std::to_string(i + 1) +
                            " has the wrong width");
    }
    m.commit_ids.push_back(r[0]);
    m.labels.push_back(static_cast<int>(csv::parse_number(r[1])));
    m.folds.push_back(static_cast<int>(csv::parse_number(r[2])));
    std::vector<double> values;
    for (std::size_t c = 3; c < r.size(); ++c) values.push_back(csv::parse_number(r[c]));
    data.push_back(std::move(values));
  }
  m.values = data.empty() ? Matrix(0, m.feature_names.size()) : Matrix::from_rows(data);
  m.validate();
  return m;
}

EmbeddingMatrix read_embedding(const std::filesystem::path& path, std::string analyzer) {
  return parse_embedding(read_file(path), std::move(analyzer));
}

}  // namespace vfix
