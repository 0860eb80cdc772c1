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

#include "vfix/pipeline/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "vfix/csv.hpp"

namespace vfix::pipeline {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Scores of the option chosen for outer fold k, per base.
struct FoldBases {
  std::vector<const CvScores*> per_base;
};

std::vector<FoldBases> fold_winners(const std::vector<EmbeddingSearch>& searches) {
  std::vector<FoldBases> out(kFolds);
  for (int k = 0; k < kFolds; ++k) {
    for (const auto& s : searches) {
      int choice = s.nested.folds[static_cast<std::size_t>(k)].choice;
      out[static_cast<std::size_t>(k)].per_base.push_back(&s.scores[static_cast<std::size_t>(choice)]);
    }
  }
  return out;
}

CvScores vote_scores(const std::vector<FoldBases>& winners, const std::vector<int>& weights,
                     const std::vector<int>& folds) {
  const std::size_t n = folds.size();
  CvScores s;
  s.ok = true;
  s.outer.assign(n, kNaN);
  s.inner.assign(kFolds, std::vector<double>(n, kNaN));
  for (int k = 0; k < kFolds; ++k) {
    const auto& bases = winners[static_cast<std::size_t>(k)].per_base;
    std::vector<std::vector<double>> inner, outer;
    for (const auto* b : bases) {
      inner.push_back(b->inner[static_cast<std::size_t>(k)]);
      outer.push_back(b->outer);
    }
    // NaN entries (rows of fold k) stay NaN through the mean.
    auto vi = soft_vote(inner, weights);
    auto vo = soft_vote(outer, weights);
    for (std::size_t r = 0; r < n; ++r) {
      if (folds[r] == k) {
        s.outer[r] = vo[r];
      } else {
        s.inner[static_cast<std::size_t>(k)][r] = vi[r];
      }
    }
  }
  return s;
}

Matrix base_features(const std::vector<const std::vector<double>*>& cols,
                     const std::vector<std::size_t>& rows) {
  Matrix z(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t e = 0; e < cols.size(); ++e) z(i, e) = (*cols[e])[rows[i]];
  }
  return z;
}

CvScores stack_scores(const std::vector<FoldBases>& winners, const ml::ModelSpec& final_spec,
                      const Labels& y, const std::vector<int>& folds) {
  const std::size_t n = folds.size();
  CvScores s;
  s.outer.assign(n, kNaN);
  s.inner.assign(kFolds, std::vector<double>(n, kNaN));
  try {
    for (int k = 0; k < kFolds; ++k) {
      std::vector<const std::vector<double>*> inner, outer;
      for (const auto* b : winners[static_cast<std::size_t>(k)].per_base) {
        inner.push_back(&b->inner[static_cast<std::size_t>(k)]);
        outer.push_back(&b->outer);
      }
      for (int j = 0; j < kFolds; ++j) {
        if (j == k) continue;
        auto train = rows_outside(folds, {k, j});
        auto model = ml::fit(final_spec, base_features(inner, train), select_labels(y, train));
        auto test = rows_in(folds, j);
        auto p = model.predict_proba(base_features(inner, test));
        for (std::size_t i = 0; i < test.size(); ++i) s.inner[static_cast<std::size_t>(k)][test[i]] = p[i];
      }
      auto train = rows_outside(folds, {k});
      auto model = ml::fit(final_spec, base_features(inner, train), select_labels(y, train));
      auto test = rows_in(folds, k);
      auto p = model.predict_proba(base_features(outer, test));
      for (std::size_t i = 0; i < test.size(); ++i) s.outer[test[i]] = p[i];
    }
    s.ok = true;
  } catch (const std::runtime_error& e) {
    s = CvScores{};
    s.error = e.what();
  }
  return s;
}

void finish(EnsembleSearch& es, const Labels& y, const std::vector<int>& folds, double min_recall) {
  es.table = criterion_table(es.scores, y, folds, min_recall);
  es.nested = nested_evaluate(es.scores, es.table, y, folds, min_recall);
  es.best = overall_best(es.table);
}

}  // namespace

std::vector<std::vector<int>> voting_grid(std::size_t n_bases) {
  std::vector<std::vector<int>> grid;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n_bases); ++mask) {
    std::vector<int> w(n_bases);
    for (std::size_t b = 0; b < n_bases; ++b) w[b] = (mask >> b) & 1;
    grid.push_back(std::move(w));
  }
  return grid;
}

std::vector<ml::ModelSpec> stacking_grid(std::uint64_t seed) {
  using ml::Algorithm;
  std::vector<ml::ModelSpec> g = {
      {Algorithm::GaussianNB, {{"var_smoothing", 1e-9}}, 0},
      {Algorithm::LogisticRegression, {{"l2", 0.01}}, 0},
      {Algorithm::LogisticRegression, {{"l2", 1}}, 0},
      {Algorithm::DecisionTree, {{"max_depth", 2}}, 0},
      {Algorithm::DecisionTree, {{"max_depth", 4}, {"min_leaf", 5}}, 0},
      {Algorithm::RandomForest, {{"n_estimators", 50}, {"max_depth", 3}}, 0},
      {Algorithm::RandomForest, {{"n_estimators", 50}, {"min_leaf", 5}}, 0},
      {Algorithm::AdaBoost, {{"n_estimators", 50}, {"learning_rate", 0.5}}, 0},
      {Algorithm::AdaBoost, {{"n_estimators", 50}, {"learning_rate", 1}}, 0},
      {Algorithm::GradientBoosting, {{"n_estimators", 50}, {"max_depth", 2}}, 0},
      {Algorithm::GradientBoosting, {{"n_estimators", 50}, {"max_depth", 3}}, 0},
      {Algorithm::LinearSvm, {{"l2", 0.01}}, 0},
      {Algorithm::LinearSvm, {{"l2", 1}}, 0},
  };
  Rng rng(seed);
  for (auto& s : g) s.seed = rng.next();
  return g;
}

void check_aligned(const std::vector<EmbeddingMatrix>& data) {
  if (data.empty()) throw ValidationError("train: no embeddings given");
  for (const auto& m : data) {
    m.validate();
    if (m.commit_ids != data[0].commit_ids || m.labels != data[0].labels || m.folds != data[0].folds) {
      throw ValidationError("embedding " + m.analyzer + " does not share rows, labels and folds with " +
                            data[0].analyzer);
    }
  }
}

Experiment run_experiment(const std::vector<EmbeddingMatrix>& data, const ExperimentOptions& opt) {
  check_aligned(data);
  if (opt.n_iter < 1) throw ValidationError("n_iter must be >= 1");
  Experiment ex;
  ex.options = opt;
  ex.commit_ids = data[0].commit_ids;
  ex.labels = data[0].labels;
  ex.folds = data[0].folds;
  validate_folds(ex.folds, ex.labels);
  const Labels& y = ex.labels;
  Rng root(opt.seed);

  for (std::size_t e = 0; e < data.size(); ++e) {
    EmbeddingSearch s;
    s.embedding = data[e].analyzer;
    s.feature_names = data[e].feature_names;
    Rng rng = root.fork(e);
    for (int i = 0; i < opt.n_iter; ++i) {
      s.candidates.push_back(sample_candidate(rng));
      s.candidates.back().selection.prune = opt.prune_per_fold;
    }
    s.scores.resize(s.candidates.size());
    parallel_for(s.candidates.size(), opt.jobs, [&](std::size_t i) {
      s.scores[i] = cross_validate(s.candidates[i], data[e].values, y, ex.folds);
    });
    s.table = criterion_table(s.scores, y, ex.folds, opt.min_recall);
    if (overall_best(s.table).index < 0) {
      throw RuntimeError("every candidate failed for embedding " + s.embedding + ": " +
                         s.scores.front().error);
    }
    s.nested = nested_evaluate(s.scores, s.table, y, ex.folds, opt.min_recall);
    s.best = overall_best(s.table);
    ex.embeddings.push_back(std::move(s));
  }

  auto winners = fold_winners(ex.embeddings);
  ex.voting.kind = "voting";
  for (auto& w : voting_grid(data.size())) {
    ex.voting.scores.push_back(vote_scores(winners, w, ex.folds));
    ex.voting.grid.push_back({std::move(w), {}});
  }
  finish(ex.voting, y, ex.folds, opt.min_recall);

  ex.stacking.kind = "stacking";
  for (auto& spec : stacking_grid(root.fork(data.size()).next())) {
    ex.stacking.grid.push_back({{}, spec});
  }
  ex.stacking.scores.resize(ex.stacking.grid.size());
  parallel_for(ex.stacking.grid.size(), opt.jobs, [&](std::size_t i) {
    ex.stacking.scores[i] = stack_scores(winners, ex.stacking.grid[i].final_spec, y, ex.folds);
  });
  finish(ex.stacking, y, ex.folds, opt.min_recall);
  return ex;
}

// ---- deployment ----

namespace {

Matrix align_columns(const EmbeddingMatrix& m, const std::vector<std::string>& names) {
  std::map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < m.feature_names.size(); ++j) index[m.feature_names[j]] = j;
  Matrix out(m.rows(), names.size());
  for (std::size_t c = 0; c < names.size(); ++c) {
    auto it = index.find(names[c]);
    // Columns pruned away as constant in this data set read as zero.
    if (it == index.end()) continue;
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = m.values(r, it->second);
  }
  return out;
}

double threshold_for(const Labels& y, const std::vector<double>& scores, double min_recall) {
  return pick_threshold(pr_curve(y, scores), min_recall).threshold;
}

}  // namespace

std::vector<double> DeployedPipeline::predict(const EmbeddingMatrix& m) const {
  return pipeline.predict(align_columns(m, feature_names));
}

Deployment deploy(const Experiment& ex, const std::vector<EmbeddingMatrix>& data) {
  Deployment d;
  const Labels& y = ex.labels;
  const double min_recall = ex.options.min_recall;
  std::vector<std::vector<double>> outer;
  for (std::size_t e = 0; e < ex.embeddings.size(); ++e) {
    const auto& s = ex.embeddings[e];
    const std::size_t best = static_cast<std::size_t>(s.best.index);
    DeployedPipeline p;
    p.embedding = s.embedding;
    p.feature_names = s.feature_names;
    p.pipeline = fit_pipeline(s.candidates[best], data[e].values, y);
    p.threshold = threshold_for(y, s.scores[best].outer, min_recall);
    outer.push_back(s.scores[best].outer);
    d.bases.push_back(std::move(p));
  }
  d.voting_weights = ex.voting.grid[static_cast<std::size_t>(ex.voting.best.index)].weights;
  d.voting_threshold = threshold_for(y, soft_vote(outer, d.voting_weights), min_recall);

  const auto& spec = ex.stacking.grid[static_cast<std::size_t>(ex.stacking.best.index)].final_spec;
  std::vector<const std::vector<double>*> cols;
  for (const auto& o : outer) cols.push_back(&o);
  std::vector<std::size_t> all(y.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Matrix z = base_features(cols, all);
  d.stacker = ml::fit(spec, z, y);
  std::vector<double> cv(y.size());
  for (int k = 0; k < kFolds; ++k) {
    auto train = rows_outside(ex.folds, {k});
    auto test = rows_in(ex.folds, k);
    auto m = ml::fit(spec, z.select_rows(train), select_labels(y, train));
    auto p = m.predict_proba(z.select_rows(test));
    for (std::size_t i = 0; i < test.size(); ++i) cv[test[i]] = p[i];
  }
  d.stacking_threshold = threshold_for(y, cv, min_recall);
  return d;
}

Deployment::Scores Deployment::score(const std::vector<EmbeddingMatrix>& data) const {
  if (data.size() != bases.size()) throw ValidationError("score: expected one embedding per base model");
  Scores s;
  for (std::size_t e = 0; e < bases.size(); ++e) {
    if (data[e].analyzer != bases[e].embedding) {
      throw ValidationError("score: embedding " + data[e].analyzer + " given where " +
                            bases[e].embedding + " was expected");
    }
    s.bases.push_back(bases[e].predict(data[e]));
  }
  s.voting = soft_vote(s.bases, voting_weights);
  std::vector<const std::vector<double>*> cols;
  for (const auto& b : s.bases) cols.push_back(&b);
  std::vector<std::size_t> all(data[0].rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  s.stacking = stacker.predict_proba(base_features(cols, all));
  return s;
}

// ---- serialization ----

namespace {

void put_list(std::ostringstream& out, const char* tag, const auto& v) {
  out << tag << ' ' << v.size();
  for (const auto& x : v) {
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(x)>>) {
      out << ' ' << csv::format_number(x);
    } else {
      out << ' ' << x;
    }
  }
  out << '\n';
}

class Tokens {
 public:
  explicit Tokens(std::string_view text) : in_(std::string(text)) {}
  std::string word() {
    std::string w;
    if (!(in_ >> w)) throw ValidationError("pipeline file: unexpected end of input");
    return w;
  }
  void expect(const std::string& w) {
    auto got = word();
    if (got != w) throw ValidationError("pipeline file: expected '" + w + "', found '" + got + "'");
  }
  double number() { return csv::parse_number(word()); }
  std::size_t count() {
    double v = number();
    if (v < 0 || v != std::floor(v)) throw ValidationError("pipeline file: bad count");
    return static_cast<std::size_t>(v);
  }
  std::vector<double> numbers(const std::string& tag) {
    expect(tag);
    std::size_t n = count();
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(number());
    return v;
  }
  std::vector<std::size_t> indices(const std::string& tag) {
    expect(tag);
    std::size_t n = count();
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(count());
    return v;
  }
  std::string rest() {
    std::string r((std::istreambuf_iterator<char>(in_)), std::istreambuf_iterator<char>());
    return r;
  }

 private:
  std::istringstream in_;
};

}  // namespace

std::string serialize_pipeline(const DeployedPipeline& p) {
  std::ostringstream out;
  out << "vfix-pipeline 1\n";
  out << "embedding " << p.embedding << '\n';
  out << "threshold " << csv::format_number(p.threshold) << '\n';
  for (const auto& n : p.feature_names) {
    if (n.find_first_of(" \t\r\n") != std::string::npos) {
      throw ValidationError("pipeline file: feature name contains whitespace: " + n);
    }
  }
  put_list(out, "features", p.feature_names);
  const auto& s = p.pipeline.candidate.selection;
  out << "selection " << s.prune << ' ' << s.variance << ' ' << csv::format_number(s.variance_threshold) << ' '
      << s.correlation << ' ' << csv::format_number(s.r_max) << ' ' << s.rfe << ' ' << s.rfe_keep
      << '\n';
  put_list(out, "columns", p.pipeline.prep.columns);
  put_list(out, "mean", p.pipeline.prep.scaler.mean);
  put_list(out, "scale", p.pipeline.prep.scaler.scale);
  put_list(out, "rfe_columns", p.pipeline.prep.rfe_columns);
  out << "model\n" << ml::serialize_model(p.pipeline.model);
  return out.str();
}

DeployedPipeline deserialize_pipeline(std::string_view text) {
  Tokens in(text);
  in.expect("vfix-pipeline");
  if (in.count() != 1) throw ValidationError("pipeline file: unsupported version");
  DeployedPipeline p;
  in.expect("embedding");
  p.embedding = in.word();
  in.expect("threshold");
  p.threshold = in.number();
  in.expect("features");
  std::size_t n = in.count();
  for (std::size_t i = 0; i < n; ++i) p.feature_names.push_back(in.word());
  in.expect("selection");
  auto& s = p.pipeline.candidate.selection;
  s.prune = in.count() != 0;
  s.variance = in.count() != 0;
  s.variance_threshold = in.number();
  s.correlation = in.count() != 0;
  s.r_max = in.number();
  s.rfe = in.count() != 0;
  s.rfe_keep = in.count();
  auto& prep = p.pipeline.prep;
  prep.columns = in.indices("columns");
  prep.scaler.mean = in.numbers("mean");
  prep.scaler.scale = in.numbers("scale");
  prep.rfe_columns = in.indices("rfe_columns");
  in.expect("model");
  p.pipeline.model = ml::deserialize_model(in.rest());
  p.pipeline.candidate.model = p.pipeline.model.spec;
  for (std::size_t c : prep.columns) {
    if (c >= n) throw ValidationError("pipeline file: column index out of range");
  }
  if (prep.scaler.mean.size() != prep.columns.size() || prep.scaler.scale.size() != prep.columns.size()) {
    throw ValidationError("pipeline file: scaler width does not match columns");
  }
  for (std::size_t c : prep.rfe_columns) {
    if (c >= prep.columns.size()) throw ValidationError("pipeline file: rfe column out of range");
  }
  if (p.pipeline.model.n_features != prep.rfe_columns.size()) {
    throw ValidationError("pipeline file: model width does not match selected columns");
  }
  return p;
}

std::string serialize_ensemble(const Deployment& d) {
  std::ostringstream out;
  out << "vfix-ensemble 1\n";
  put_list(out, "bases", [&] {
    std::vector<std::string> names;
    for (const auto& b : d.bases) names.push_back(b.embedding);
    return names;
  }());
  put_list(out, "voting_weights", d.voting_weights);
  out << "voting_threshold " << csv::format_number(d.voting_threshold) << '\n';
  out << "stacking_threshold " << csv::format_number(d.stacking_threshold) << '\n';
  out << "stacker\n" << ml::serialize_model(d.stacker);
  return out.str();
}

void deserialize_ensemble(std::string_view text, Deployment& d) {
  Tokens in(text);
  in.expect("vfix-ensemble");
  if (in.count() != 1) throw ValidationError("ensemble file: unsupported version");
  in.expect("bases");
  std::size_t n = in.count();
  if (n != d.bases.size()) throw ValidationError("ensemble file: base count does not match the models");
  for (std::size_t i = 0; i < n; ++i) {
    auto name = in.word();
    if (name != d.bases[i].embedding) {
      throw ValidationError("ensemble file: base " + name + " does not match " + d.bases[i].embedding);
    }
  }
  in.expect("voting_weights");
  std::size_t w = in.count();
  d.voting_weights.clear();
  for (std::size_t i = 0; i < w; ++i) d.voting_weights.push_back(static_cast<int>(in.count()));
  in.expect("voting_threshold");
  d.voting_threshold = in.number();
  in.expect("stacking_threshold");
  d.stacking_threshold = in.number();
  in.expect("stacker");
  d.stacker = ml::deserialize_model(in.rest());
  if (d.voting_weights.size() != n || d.stacker.n_features != n) {
    throw ValidationError("ensemble file: widths do not match the base count");
  }
}

}  // namespace vfix::pipeline
