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

#include "vfix/ml/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "vfix/csv.hpp"
#include "vfix/ml/linalg.hpp"

namespace vfix::ml {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> normalized(std::vector<double> v) {
  double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(total > 0)) {
    std::fill(v.begin(), v.end(), v.empty() ? 0.0 : 1.0 / static_cast<double>(v.size()));
    return v;
  }
  for (double& x : v) x /= total;
  return v;
}

void check_inputs(const Matrix& x, const Labels& y) {
  if (x.rows() != y.size()) throw ValidationError("fit: X has " + std::to_string(x.rows()) +
                                                  " rows but y has " + std::to_string(y.size()));
  if (x.rows() == 0) throw ValidationError("fit: empty training set");
  require_finite(x, "fit: X");
  bool has0 = false, has1 = false;
  for (int v : y) {
    if (v != 0 && v != 1) throw ValidationError("fit: labels must be 0 or 1");
    (v ? has1 : has0) = true;
  }
  if (!has0 || !has1) throw ValidationError("fit: y must contain both classes");
}

int as_int(double v) { return static_cast<int>(std::lround(v)); }

// ---- Gaussian naive Bayes ----

NaiveBayesParams fit_gnb(const ModelSpec& spec, const Matrix& x, const Labels& y) {
  const std::size_t d = x.cols();
  NaiveBayesParams p;
  std::array<double, 2> count{0, 0};
  for (int k = 0; k < 2; ++k) {
    p.mean[k].assign(d, 0.0);
    p.var[k].assign(d, 0.0);
  }
  for (std::size_t r = 0; r < x.rows(); ++r) {
    int k = y[r];
    count[k] += 1;
    for (std::size_t j = 0; j < d; ++j) p.mean[k][j] += x(r, j);
  }
  for (int k = 0; k < 2; ++k)
    for (double& m : p.mean[k]) m /= count[k];
  for (std::size_t r = 0; r < x.rows(); ++r) {
    int k = y[r];
    for (std::size_t j = 0; j < d; ++j) {
      double diff = x(r, j) - p.mean[k][j];
      p.var[k][j] += diff * diff;
    }
  }
  double max_var = 0;
  for (std::size_t j = 0; j < d; ++j) {
    auto col = x.column(j);
    double mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
    double v = 0;
    for (double c : col) v += (c - mean) * (c - mean);
    max_var = std::max(max_var, v / static_cast<double>(col.size()));
  }
  double eps = spec.param("var_smoothing") * max_var;
  if (!(eps > 0)) eps = std::max(spec.param("var_smoothing"), 1e-300);
  for (int k = 0; k < 2; ++k) {
    for (double& v : p.var[k]) v = v / count[k] + eps;
    p.log_prior[k] = std::log(count[k] / static_cast<double>(x.rows()));
  }
  return p;
}

std::array<double, 2> gnb_log_joint(const NaiveBayesParams& p, std::span<const double> row) {
  static const double kLog2Pi = std::log(2.0 * 3.14159265358979323846);
  std::array<double, 2> out{};
  for (int k = 0; k < 2; ++k) {
    double l = p.log_prior[k];
    for (std::size_t j = 0; j < row.size(); ++j) {
      double diff = row[j] - p.mean[k][j];
      l -= 0.5 * (kLog2Pi + std::log(p.var[k][j])) + diff * diff / (2.0 * p.var[k][j]);
    }
    out[k] = l;
  }
  return out;
}

// ---- linear models ----

std::vector<double> newton_minimize(
    const std::function<double(const std::vector<double>&, std::vector<double>*, Matrix*)>& f,
    std::vector<double> theta, int max_iter, double tol) {
  const std::size_t n = theta.size();
  std::vector<double> grad(n);
  Matrix hess(n, n);
  double value = f(theta, &grad, &hess);
  for (int it = 0; it < max_iter; ++it) {
    double gmax = 0;
    for (double g : grad) gmax = std::max(gmax, std::abs(g));
    if (gmax < tol) break;
    std::vector<double> step;
    double jitter = 1e-12;
    for (;;) {
      Matrix h = hess;
      for (std::size_t i = 0; i < n; ++i) h(i, i) += jitter;
      if (auto s = cholesky_solve(h, grad)) {
        step = std::move(*s);
        break;
      }
      jitter *= 100;
      if (jitter > 1e6) throw RuntimeError("newton: Hessian is not positive definite");
    }
    double slope = -dot(grad, step);
    double t = 1.0;
    std::vector<double> next(n);
    double next_value = value;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < n; ++i) next[i] = theta[i] - t * step[i];
      next_value = f(next, nullptr, nullptr);
      if (next_value <= value + 1e-4 * t * slope) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    theta = next;
    value = f(theta, &grad, &hess);
  }
  return theta;
}

double logistic_full(const std::vector<double>& theta, const Matrix& x, const Labels& y, double l2,
                     std::vector<double>* grad, Matrix* hess) {
  const std::size_t d = x.cols();
  const double n = static_cast<double>(x.rows());
  std::span<const double> w(theta.data(), d);
  const double b = theta[d];
  double loss = 0;
  if (grad) grad->assign(d + 1, 0.0);
  if (hess) *hess = Matrix(d + 1, d + 1);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    double z = dot(w, row) + b;
    loss += softplus(z) - (y[r] ? z : 0.0);
    if (!grad && !hess) continue;
    double p = sigmoid(z);
    double e = p - y[r];
    if (grad) {
      for (std::size_t j = 0; j < d; ++j) (*grad)[j] += e * row[j];
      (*grad)[d] += e;
    }
    if (hess) {
      double s = p * (1 - p);
      for (std::size_t i = 0; i <= d; ++i) {
        double xi = i < d ? row[i] : 1.0;
        if (xi == 0) continue;
        for (std::size_t j = i; j <= d; ++j) {
          double xj = j < d ? row[j] : 1.0;
          (*hess)(i, j) += s * xi * xj;
        }
      }
    }
  }
  double reg = 0;
  for (double v : w) reg += v * v;
  double value = loss / n + 0.5 * l2 * reg;
  if (grad) {
    for (std::size_t j = 0; j <= d; ++j) (*grad)[j] /= n;
    for (std::size_t j = 0; j < d; ++j) (*grad)[j] += l2 * w[j];
  }
  if (hess) {
    for (std::size_t i = 0; i <= d; ++i) {
      for (std::size_t j = i; j <= d; ++j) {
        (*hess)(i, j) /= n;
        (*hess)(j, i) = (*hess)(i, j);
      }
      if (i < d) (*hess)(i, i) += l2;
    }
  }
  return value;
}

LinearParams fit_logistic(const ModelSpec& spec, const Matrix& x, const Labels& y) {
  const double l2 = spec.param("l2");
  std::vector<double> theta(x.cols() + 1, 0.0);
  theta = newton_minimize(
      [&](const std::vector<double>& t, std::vector<double>* g, Matrix* h) {
        return logistic_full(t, x, y, l2, g, h);
      },
      theta, 100, 1e-10);
  LinearParams p;
  p.w.assign(theta.begin(), theta.end() - 1);
  p.b = theta.back();
  return p;
}

// Platt scaling: p = sigmoid(a * s + c) fitted on smoothed targets.
std::pair<double, double> fit_platt(const std::vector<double>& scores, const Labels& y) {
  double pos = static_cast<double>(std::count(y.begin(), y.end(), 1));
  double neg = static_cast<double>(y.size()) - pos;
  const double hi = (pos + 1) / (pos + 2), lo = 1 / (neg + 2);
  auto f = [&](const std::vector<double>& t, std::vector<double>* g, Matrix* h) {
    double v = 0;
    if (g) g->assign(2, 0.0);
    if (h) *h = Matrix(2, 2);
    for (std::size_t i = 0; i < scores.size(); ++i) {
      double z = t[0] * scores[i] + t[1];
      double target = y[i] ? hi : lo;
      v += softplus(z) - target * z;
      double p = sigmoid(z);
      if (g) {
        (*g)[0] += (p - target) * scores[i];
        (*g)[1] += p - target;
      }
      if (h) {
        double s = p * (1 - p);
        (*h)(0, 0) += s * scores[i] * scores[i];
        (*h)(0, 1) += s * scores[i];
        (*h)(1, 1) += s;
      }
    }
    if (h) (*h)(1, 0) = (*h)(0, 1);
    return v;
  };
  auto t = newton_minimize(f, {0.0, std::log((pos + 1) / (neg + 1))}, 100, 1e-10);
  return {t[0], t[1]};
}

LinearParams fit_svm(const ModelSpec& spec, const Matrix& x, const Labels& y) {
  const double l2 = spec.param("l2");
  const int epochs = std::max(1, as_int(spec.param("epochs")));
  const std::size_t d = x.cols();
  std::vector<double> theta(d + 1, 0.0), avg(d + 1, 0.0), grad;
  const double radius = 1.0 / std::sqrt(l2);
  int averaged = 0;
  for (int t = 1; t <= epochs; ++t) {
    hinge_objective(theta, x, y, l2, &grad);
    double eta = 1.0 / (l2 * t + 1.0);
    for (std::size_t j = 0; j <= d; ++j) theta[j] -= eta * grad[j];
    double norm = 0;
    for (std::size_t j = 0; j < d; ++j) norm += theta[j] * theta[j];
    norm = std::sqrt(norm);
    if (norm > radius) {
      for (std::size_t j = 0; j < d; ++j) theta[j] *= radius / norm;
    }
    if (t > epochs / 2) {
      ++averaged;
      for (std::size_t j = 0; j <= d; ++j) avg[j] += (theta[j] - avg[j]) / averaged;
    }
  }
  LinearParams p;
  p.w.assign(avg.begin(), avg.end() - 1);
  p.b = avg.back();
  std::vector<double> scores(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) scores[r] = dot(p.w, x.row(r)) + p.b;
  auto [a, c] = fit_platt(scores, y);
  p.calibrated = true;
  p.platt_a = a;
  p.platt_c = c;
  return p;
}

double linear_proba(const LinearParams& p, std::span<const double> row) {
  double s = dot(p.w, row) + p.b;
  return p.calibrated ? sigmoid(p.platt_a * s + p.platt_c) : sigmoid(s);
}

// ---- trees and ensembles ----

TreeOptions tree_options(const ModelSpec& spec) {
  TreeOptions o;
  o.max_depth = as_int(spec.param("max_depth"));
  o.min_leaf = std::max(1, as_int(spec.param("min_leaf")));
  return o;
}

std::vector<double> as_targets(const Labels& y) { return {y.begin(), y.end()}; }

EnsembleParams fit_forest(const ModelSpec& spec, const Matrix& x, const Labels& y,
                          std::vector<double>& importance) {
  const int n_trees = std::max(1, as_int(spec.param("n_estimators")));
  TreeOptions o = tree_options(spec);
  o.max_features = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(x.cols())))));
  auto target = as_targets(y);
  EnsembleParams e;
  importance.assign(x.cols(), 0.0);
  Rng base(spec.seed);
  for (int t = 0; t < n_trees; ++t) {
    Rng rng = base.fork(static_cast<std::uint64_t>(t));
    std::vector<double> weight(x.rows(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) weight[rng.below(x.rows())] += 1.0;
    std::vector<double> imp;
    e.trees.push_back(build_tree(x, target, weight, o, &rng, imp));
    e.weights.push_back(1.0);
    bool split = std::any_of(imp.begin(), imp.end(), [](double v) { return v > 0; });
    if (split) {
      imp = normalized(std::move(imp));
      for (std::size_t j = 0; j < imp.size(); ++j) importance[j] += imp[j];
    }
  }
  return e;
}

bool tree_vote(const Tree& t, std::span<const double> row) { return t.predict(row) >= 0.5; }

EnsembleParams fit_adaboost(const ModelSpec& spec, const Matrix& x, const Labels& y,
                            std::vector<double>& importance) {
  const int rounds = std::max(1, as_int(spec.param("n_estimators")));
  const double lr = spec.param("learning_rate");
  TreeOptions o;
  o.max_depth = std::max(1, as_int(spec.param("max_depth")));
  auto target = as_targets(y);
  const std::size_t n = x.rows();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  EnsembleParams e;
  importance.assign(x.cols(), 0.0);
  for (int m = 0; m < rounds; ++m) {
    std::vector<double> imp;
    Tree tree = build_tree(x, target, w, o, nullptr, imp);
    std::vector<int> miss(n);
    double err = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      miss[i] = tree_vote(tree, x.row(i)) != (y[i] == 1);
      err += w[i] * miss[i];
      total += w[i];
    }
    err /= total;
    if (err <= 1e-12) {
      e.trees.push_back(std::move(tree));
      e.weights.push_back(1.0);
      auto ni = normalized(imp);
      for (std::size_t j = 0; j < ni.size(); ++j) importance[j] += ni[j];
      break;
    }
    if (err >= 0.5) {
      if (e.trees.empty()) {
        e.trees.push_back(std::move(tree));
        e.weights.push_back(1.0);
      }
      break;
    }
    double alpha = lr * std::log((1 - err) / err);
    auto ni = normalized(imp);
    for (std::size_t j = 0; j < ni.size(); ++j) importance[j] += alpha * ni[j];
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (miss[i]) w[i] *= std::exp(alpha);
      sum += w[i];
    }
    for (double& v : w) v /= sum;
    e.trees.push_back(std::move(tree));
    e.weights.push_back(alpha);
  }
  return e;
}

EnsembleParams fit_boosting(const ModelSpec& spec, const Matrix& x, const Labels& y,
                            std::vector<double>& importance) {
  const int rounds = std::max(1, as_int(spec.param("n_estimators")));
  const double lr = spec.param("learning_rate");
  TreeOptions o = tree_options(spec);
  const std::size_t n = x.rows();
  double prior = static_cast<double>(std::count(y.begin(), y.end(), 1)) / static_cast<double>(n);
  EnsembleParams e;
  e.init = std::log(prior / (1 - prior));
  std::vector<double> f(n, e.init), resid(n), ones(n, 1.0);
  importance.assign(x.cols(), 0.0);
  for (int m = 0; m < rounds; ++m) {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = sigmoid(f[i]);
      resid[i] = y[i] - p[i];
    }
    Tree tree = build_tree(x, resid, ones, o, nullptr, importance);
    std::vector<double> num(tree.nodes.size(), 0.0), den(tree.nodes.size(), 0.0);
    std::vector<int> leaf(n);
    for (std::size_t i = 0; i < n; ++i) {
      leaf[i] = tree.leaf_index(x.row(i));
      num[static_cast<std::size_t>(leaf[i])] += resid[i];
      den[static_cast<std::size_t>(leaf[i])] += p[i] * (1 - p[i]);
    }
    for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
      if (!tree.nodes[k].leaf()) continue;
      tree.nodes[k].value = den[k] > 1e-150 ? num[k] / den[k] : 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) f[i] += lr * tree.nodes[static_cast<std::size_t>(leaf[i])].value;
    e.trees.push_back(std::move(tree));
    e.weights.push_back(lr);
  }
  return e;
}

double ensemble_proba(Algorithm a, const EnsembleParams& e, std::span<const double> row) {
  switch (a) {
    case Algorithm::RandomForest: {
      double s = 0;
      for (const auto& t : e.trees) s += t.predict(row);
      return s / static_cast<double>(e.trees.size());
    }
    case Algorithm::AdaBoost: {
      double s = 0, total = 0;
      for (std::size_t m = 0; m < e.trees.size(); ++m) {
        s += e.weights[m] * (tree_vote(e.trees[m], row) ? 1.0 : -1.0);
        total += e.weights[m];
      }
      return sigmoid(2.0 * s / total);
    }
    default: {
      double z = e.init;
      for (std::size_t m = 0; m < e.trees.size(); ++m) z += e.weights[m] * e.trees[m].predict(row);
      return sigmoid(z);
    }
  }
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::GaussianNB:
      return "gaussian_nb";
    case Algorithm::LogisticRegression:
      return "logistic_regression";
    case Algorithm::DecisionTree:
      return "decision_tree";
    case Algorithm::RandomForest:
      return "random_forest";
    case Algorithm::AdaBoost:
      return "adaboost";
    case Algorithm::GradientBoosting:
      return "gradient_boosting";
    case Algorithm::LinearSvm:
      return "linear_svm";
  }
  return "";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : all_algorithms()) {
    if (algorithm_name(a) == name) return a;
  }
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all = {
      Algorithm::GaussianNB,   Algorithm::LogisticRegression, Algorithm::DecisionTree,
      Algorithm::RandomForest, Algorithm::AdaBoost,           Algorithm::GradientBoosting,
      Algorithm::LinearSvm};
  return all;
}

bool has_importances(Algorithm a) { return a != Algorithm::GaussianNB && a != Algorithm::LinearSvm; }

const std::vector<std::string>& param_names(Algorithm a) {
  static const std::map<Algorithm, std::vector<std::string>> names = {
      {Algorithm::GaussianNB, {"var_smoothing"}},
      {Algorithm::LogisticRegression, {"l2"}},
      {Algorithm::LinearSvm, {"epochs", "l2"}},
      {Algorithm::DecisionTree, {"max_depth", "min_leaf"}},
      {Algorithm::RandomForest, {"max_depth", "min_leaf", "n_estimators"}},
      {Algorithm::AdaBoost, {"learning_rate", "max_depth", "n_estimators"}},
      {Algorithm::GradientBoosting, {"learning_rate", "max_depth", "min_leaf", "n_estimators"}},
  };
  return names.at(a);
}

double default_param(Algorithm a, const std::string& name) {
  if (name == "var_smoothing") return 1e-9;
  if (name == "l2") return 1.0;
  if (name == "epochs") return 300;
  if (name == "min_leaf") return 1;
  if (name == "max_depth") {
    if (a == Algorithm::AdaBoost) return 1;
    if (a == Algorithm::GradientBoosting) return 3;
    return 0;
  }
  if (name == "n_estimators") {
    if (a == Algorithm::AdaBoost) return 50;
    return 100;
  }
  if (name == "learning_rate") return a == Algorithm::AdaBoost ? 1.0 : 0.1;
  throw ValidationError("unknown hyperparameter '" + name + "'");
}

double ModelSpec::param(const std::string& name) const {
  auto it = params.find(name);
  return it != params.end() ? it->second : default_param(algorithm, name);
}

void ModelSpec::validate() const {
  const auto& allowed = param_names(algorithm);
  for (const auto& [name, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw ValidationError("hyperparameter '" + name + "' is not defined for " +
                            std::string(algorithm_name(algorithm)));
    }
    if (!std::isfinite(value)) throw ValidationError("hyperparameter '" + name + "' is not finite");
  }
  if (params.count("l2") && !(params.at("l2") > 0)) throw ValidationError("l2 must be > 0");
}

TrainedModel fit(const ModelSpec& spec, const Matrix& x, const Labels& y) {
  spec.validate();
  check_inputs(x, y);
  TrainedModel m;
  m.spec = spec;
  m.n_features = x.cols();
  std::vector<double> imp;
  switch (spec.algorithm) {
    case Algorithm::GaussianNB:
      m.body = fit_gnb(spec, x, y);
      break;
    case Algorithm::LogisticRegression: {
      LinearParams p = fit_logistic(spec, x, y);
      for (double w : p.w) imp.push_back(std::abs(w));
      m.body = std::move(p);
      break;
    }
    case Algorithm::LinearSvm:
      m.body = fit_svm(spec, x, y);
      break;
    case Algorithm::DecisionTree: {
      auto target = as_targets(y);
      std::vector<double> ones(x.rows(), 1.0);
      m.body = build_tree(x, target, ones, tree_options(spec), nullptr, imp);
      break;
    }
    case Algorithm::RandomForest:
      m.body = fit_forest(spec, x, y, imp);
      break;
    case Algorithm::AdaBoost:
      m.body = fit_adaboost(spec, x, y, imp);
      break;
    case Algorithm::GradientBoosting:
      m.body = fit_boosting(spec, x, y, imp);
      break;
  }
  if (has_importances(spec.algorithm)) {
    imp.resize(x.cols(), 0.0);
    m.feature_importances = normalized(std::move(imp));
  }
  return m;
}

std::vector<double> TrainedModel::predict_proba(const Matrix& x) const {
  auto both = predict_class_proba(x);
  std::vector<double> out(both.size());
  for (std::size_t i = 0; i < both.size(); ++i) out[i] = both[i][1];
  return out;
}

std::vector<std::array<double, 2>> TrainedModel::predict_class_proba(const Matrix& x) const {
  if (x.cols() != n_features && x.rows() > 0) {
    throw ValidationError("predict: model expects " + std::to_string(n_features) +
                          " features, got " + std::to_string(x.cols()));
  }
  std::vector<std::array<double, 2>> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    double p1 = 0;
    if (const auto* nb = std::get_if<NaiveBayesParams>(&body)) {
      auto l = gnb_log_joint(*nb, row);
      double top = std::max(l[0], l[1]);
      double e0 = std::exp(l[0] - top), e1 = std::exp(l[1] - top);
      out[r] = {e0 / (e0 + e1), e1 / (e0 + e1)};
      continue;
    }
    if (const auto* lin = std::get_if<LinearParams>(&body)) {
      p1 = linear_proba(*lin, row);
    } else if (const auto* tree = std::get_if<Tree>(&body)) {
      p1 = tree->predict(row);
    } else {
      p1 = ensemble_proba(spec.algorithm, std::get<EnsembleParams>(body), row);
    }
    p1 = std::clamp(p1, 0.0, 1.0);
    out[r] = {1.0 - p1, p1};
  }
  return out;
}

std::vector<std::vector<double>> TrainedModel::tree_probas(const Matrix& x) const {
  const auto* e = std::get_if<EnsembleParams>(&body);
  if (!e || spec.algorithm != Algorithm::RandomForest) {
    throw ValidationError("tree_probas: not a random forest");
  }
  std::vector<std::vector<double>> out;
  for (const auto& t : e->trees) {
    std::vector<double> p(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) p[r] = t.predict(x.row(r));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> staged_training_error(const TrainedModel& m, const Matrix& x, const Labels& y) {
  const auto* e = std::get_if<EnsembleParams>(&m.body);
  if (!e || m.spec.algorithm != Algorithm::AdaBoost) {
    throw ValidationError("staged_training_error: not an AdaBoost model");
  }
  std::vector<double> score(x.rows(), 0.0), errors;
  for (std::size_t k = 0; k < e->trees.size(); ++k) {
    std::size_t wrong = 0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      score[r] += e->weights[k] * (tree_vote(e->trees[k], x.row(r)) ? 1.0 : -1.0);
      wrong += (score[r] > 0) != (y[r] == 1);
    }
    errors.push_back(static_cast<double>(wrong) / static_cast<double>(x.rows()));
  }
  return errors;
}

double logistic_objective(const std::vector<double>& theta, const Matrix& x, const Labels& y,
                          double l2, std::vector<double>* grad) {
  if (theta.size() != x.cols() + 1) throw ValidationError("logistic_objective: theta size");
  return logistic_full(theta, x, y, l2, grad, nullptr);
}

double hinge_objective(const std::vector<double>& theta, const Matrix& x, const Labels& y,
                       double l2, std::vector<double>* grad) {
  const std::size_t d = x.cols();
  if (theta.size() != d + 1) throw ValidationError("hinge_objective: theta size");
  const double n = static_cast<double>(x.rows());
  std::span<const double> w(theta.data(), d);
  double loss = 0;
  if (grad) grad->assign(d + 1, 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    double s = y[r] ? 1.0 : -1.0;
    double margin = s * (dot(w, row) + theta[d]);
    if (margin < 1) {
      loss += 1 - margin;
      if (grad) {
        for (std::size_t j = 0; j < d; ++j) (*grad)[j] -= s * row[j];
        (*grad)[d] -= s;
      }
    }
  }
  double reg = 0;
  for (double v : w) reg += v * v;
  if (grad) {
    for (std::size_t j = 0; j <= d; ++j) (*grad)[j] /= n;
    for (std::size_t j = 0; j < d; ++j) (*grad)[j] += l2 * w[j];
  }
  return loss / n + 0.5 * l2 * reg;
}

// ---- serialization ----

namespace {

void put_vec(std::ostringstream& out, const char* tag, const std::vector<double>& v) {
  out << tag << ' ' << v.size();
  for (double x : v) out << ' ' << csv::format_number(x);
  out << '\n';
}

void put_tree(std::ostringstream& out, const Tree& t) {
  out << "tree " << t.nodes.size() << '\n';
  for (const auto& n : t.nodes) {
    out << n.feature << ' ' << csv::format_number(n.threshold) << ' ' << n.left << ' ' << n.right
        << ' ' << csv::format_number(n.value) << '\n';
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i > start) tokens_.emplace_back(text.substr(start, i - start));
    }
  }
  std::string word() {
    if (pos_ >= tokens_.size()) throw ValidationError("model: unexpected end of input");
    return tokens_[pos_++];
  }
  void expect(const std::string& w) {
    std::string got = word();
    if (got != w) throw ValidationError("model: expected '" + w + "', found '" + got + "'");
  }
  double number() { return csv::parse_number(word()); }
  long integer() {
    double v = number();
    if (v != std::floor(v)) throw ValidationError("model: expected an integer");
    return static_cast<long>(v);
  }
  std::vector<double> vec(const std::string& tag) {
    expect(tag);
    long n = integer();
    if (n < 0) throw ValidationError("model: negative length");
    std::vector<double> v;
    for (long i = 0; i < n; ++i) v.push_back(number());
    return v;
  }
  Tree tree() {
    expect("tree");
    long n = integer();
    Tree t;
    for (long i = 0; i < n; ++i) {
      TreeNode node;
      node.feature = static_cast<int>(integer());
      node.threshold = number();
      node.left = static_cast<int>(integer());
      node.right = static_cast<int>(integer());
      node.value = number();
      t.nodes.push_back(node);
    }
    for (const auto& node : t.nodes) {
      if (!node.leaf() && (node.left <= 0 || node.right <= 0 || node.left >= n || node.right >= n)) {
        throw ValidationError("model: tree child index out of range");
      }
    }
    if (t.nodes.empty()) throw ValidationError("model: empty tree");
    return t;
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_model(const TrainedModel& m) {
  std::ostringstream out;
  out << "vfix-model 1\n";
  out << "algorithm " << algorithm_name(m.spec.algorithm) << '\n';
  out << "seed " << m.spec.seed << '\n';
  out << "params " << m.spec.params.size() << '\n';
  for (const auto& [k, v] : m.spec.params) out << k << ' ' << csv::format_number(v) << '\n';
  out << "n_features " << m.n_features << '\n';
  if (m.feature_importances) {
    put_vec(out, "importances", *m.feature_importances);
  } else {
    out << "importances none\n";
  }
  if (const auto* nb = std::get_if<NaiveBayesParams>(&m.body)) {
    out << "body naive_bayes\n";
    for (int k = 0; k < 2; ++k) {
      put_vec(out, "mean", nb->mean[k]);
      put_vec(out, "var", nb->var[k]);
      out << "log_prior " << csv::format_number(nb->log_prior[k]) << '\n';
    }
  } else if (const auto* lin = std::get_if<LinearParams>(&m.body)) {
    out << "body linear\n";
    put_vec(out, "w", lin->w);
    out << "b " << csv::format_number(lin->b) << '\n';
    out << "platt " << (lin->calibrated ? 1 : 0) << ' ' << csv::format_number(lin->platt_a) << ' '
        << csv::format_number(lin->platt_c) << '\n';
  } else if (const auto* tree = std::get_if<Tree>(&m.body)) {
    out << "body tree\n";
    put_tree(out, *tree);
  } else {
    const auto& e = std::get<EnsembleParams>(m.body);
    out << "body ensemble\n";
    out << "init " << csv::format_number(e.init) << '\n';
    put_vec(out, "weights", e.weights);
    for (const auto& t : e.trees) put_tree(out, t);
  }
  out << "end\n";
  return out.str();
}

TrainedModel deserialize_model(std::string_view text) {
  Reader in(text);
  in.expect("vfix-model");
  if (in.integer() != 1) throw ValidationError("model: unsupported format version");
  TrainedModel m;
  in.expect("algorithm");
  m.spec.algorithm = parse_algorithm(in.word());
  in.expect("seed");
  m.spec.seed = std::stoull(in.word());
  in.expect("params");
  long n_params = in.integer();
  for (long i = 0; i < n_params; ++i) {
    std::string k = in.word();
    m.spec.params[k] = in.number();
  }
  m.spec.validate();
  in.expect("n_features");
  m.n_features = static_cast<std::size_t>(in.integer());
  in.expect("importances");
  std::string imp = in.word();
  if (imp != "none") {
    long n = std::stol(imp);
    std::vector<double> v;
    for (long i = 0; i < n; ++i) v.push_back(in.number());
    m.feature_importances = std::move(v);
  }
  in.expect("body");
  std::string kind = in.word();
  if (kind == "naive_bayes") {
    NaiveBayesParams nb;
    for (int k = 0; k < 2; ++k) {
      nb.mean[k] = in.vec("mean");
      nb.var[k] = in.vec("var");
      in.expect("log_prior");
      nb.log_prior[k] = in.number();
    }
    m.body = std::move(nb);
  } else if (kind == "linear") {
    LinearParams lin;
    lin.w = in.vec("w");
    in.expect("b");
    lin.b = in.number();
    in.expect("platt");
    lin.calibrated = in.integer() != 0;
    lin.platt_a = in.number();
    lin.platt_c = in.number();
    m.body = std::move(lin);
  } else if (kind == "tree") {
    m.body = in.tree();
  } else if (kind == "ensemble") {
    EnsembleParams e;
    in.expect("init");
    e.init = in.number();
    e.weights = in.vec("weights");
    for (std::size_t i = 0; i < e.weights.size(); ++i) e.trees.push_back(in.tree());
    m.body = std::move(e);
  } else {
    throw ValidationError("model: unknown body '" + kind + "'");
  }
  in.expect("end");
  return m;
}

}  // namespace vfix::ml
