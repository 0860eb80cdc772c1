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

#include "vfix/pipeline/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "vfix/embedding.hpp"

#include "vfix/random.hpp"

namespace vfix::pipeline {

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_variance(const std::vector<double>& v) {
  double m = mean_of(v), s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

// prune_mask over a bare matrix whose column order is its name order.
std::vector<bool> prune_matrix_mask(const Matrix& x) {
  EmbeddingMatrix m;
  m.values = x;
  char name[32];
  for (std::size_t j = 0; j < x.cols(); ++j) {
    std::snprintf(name, sizeof name, "%012zu", j);
    m.feature_names.push_back(name);
  }
  std::vector<std::size_t> rows(x.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return prune_mask(m, rows);
}

}  // namespace

std::vector<bool> variance_select(const Matrix& x, double threshold) {
  if (x.rows() == 0) throw ValidationError("variance_select: empty matrix");
  std::vector<bool> keep(x.cols(), false);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    auto col = x.column(j);
    auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    double range = *hi - *lo;
    if (range > 0) {
      double base = *lo;
      for (double& v : col) v = (v - base) / range;
    } else {
      std::fill(col.begin(), col.end(), 0.0);
    }
    keep[j] = population_variance(col) >= threshold;
  }
  if (x.cols() > 0 && std::none_of(keep.begin(), keep.end(), [](bool b) { return b; })) {
    throw ValidationError("variance_select: threshold " + std::to_string(threshold) +
                          " removes every column");
  }
  return keep;
}

std::vector<bool> correlation_filter(const Matrix& x, double r_max) {
  const std::size_t d = x.cols();
  const double n = static_cast<double>(x.rows());
  std::vector<std::vector<double>> centred(d);
  std::vector<double> norm(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    centred[j] = x.column(j);
    double m = mean_of(centred[j]);
    for (double& v : centred[j]) {
      v -= m;
      norm[j] += v * v;
    }
    norm[j] = std::sqrt(norm[j]);
    // Constant up to rounding.
    if (norm[j] <= 1e-12 * std::sqrt(n)) norm[j] = 0;
  }
  std::vector<bool> keep(d, false);
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < d; ++j) {
    bool drop = false;
    if (norm[j] > 0) {
      for (std::size_t k : kept) {
        if (norm[k] == 0) continue;
        double s = 0;
        for (std::size_t r = 0; r < centred[j].size(); ++r) s += centred[j][r] * centred[k][r];
        if (std::abs(s / (norm[j] * norm[k])) > r_max) {
          drop = true;
          break;
        }
      }
    }
    if (!drop) {
      keep[j] = true;
      kept.push_back(j);
    }
  }
  return keep;
}

std::vector<bool> rfe(const ml::ModelSpec& spec, const Matrix& x, const Labels& y,
                      std::size_t n_keep, std::size_t step) {
  if (!ml::has_importances(spec.algorithm)) {
    throw ValidationError("rfe: " + std::string(ml::algorithm_name(spec.algorithm)) +
                          " does not expose feature importances");
  }
  if (n_keep == 0) throw ValidationError("rfe: n_keep must be >= 1");
  step = std::max<std::size_t>(step, 1);
  std::vector<std::size_t> alive(x.cols());
  std::iota(alive.begin(), alive.end(), 0);
  while (alive.size() > n_keep) {
    auto model = ml::fit(spec, x.select_cols(alive), y);
    const auto& imp = *model.feature_importances;
    std::vector<std::size_t> order(alive.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (imp[a] != imp[b]) return imp[a] < imp[b];
      return a > b;
    });
    std::size_t drop = std::min(step, alive.size() - n_keep);
    std::vector<bool> dropped(alive.size(), false);
    for (std::size_t i = 0; i < drop; ++i) dropped[order[i]] = true;
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (!dropped[i]) next.push_back(alive[i]);
    }
    alive = std::move(next);
  }
  std::vector<bool> keep(x.cols(), false);
  for (std::size_t j : alive) keep[j] = true;
  return keep;
}

Scaler Scaler::fit(const Matrix& x) {
  if (x.rows() == 0) throw ValidationError("scaler: empty training matrix");
  Scaler s;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    auto col = x.column(j);
    double m = mean_of(col);
    double sd = std::sqrt(population_variance(col));
    s.mean.push_back(m);
    s.scale.push_back(sd > 1e-12 * std::max(1.0, std::abs(m)) ? sd : 0.0);
  }
  return s;
}

Matrix Scaler::apply(const Matrix& x) const {
  if (x.cols() != mean.size()) throw ValidationError("scaler: column count mismatch");
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      out(r, j) = scale[j] > 0 ? (x(r, j) - mean[j]) / scale[j] : 0.0;
    }
  }
  return out;
}

std::vector<int> stratified_kfold(const Labels& y, int k, std::uint64_t seed) {
  if (k < 2) throw ValidationError("stratified_kfold: k must be >= 2");
  std::vector<int> folds(y.size(), -1);
  Rng rng(seed);
  // Deal each class round-robin after shuffling; the second class starts
  // where the first stopped so fold sizes stay within one.
  std::size_t offset = 0;
  for (int cls : {0, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) idx.push_back(i);
    }
    if (idx.size() < static_cast<std::size_t>(k)) {
      throw ValidationError("stratified_kfold: class " + std::to_string(cls) + " has " +
                            std::to_string(idx.size()) + " members, fewer than k=" +
                            std::to_string(k));
    }
    rng.shuffle(idx);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      folds[idx[i]] = static_cast<int>((offset + i) % static_cast<std::size_t>(k));
    }
    offset = (offset + idx.size()) % static_cast<std::size_t>(k);
  }
  return folds;
}

void validate_folds(const std::vector<int>& folds, const Labels& y, int k) {
  if (folds.size() != y.size()) throw ValidationError("folds: size does not match labels");
  std::vector<std::array<int, 2>> count(static_cast<std::size_t>(k), {0, 0});
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (folds[i] < 0 || folds[i] >= k) {
      throw ValidationError("folds: fold index " + std::to_string(folds[i]) + " outside 0.." +
                            std::to_string(k - 1));
    }
    ++count[static_cast<std::size_t>(folds[i])][y[i] ? 1 : 0];
  }
  for (int f = 0; f < k; ++f) {
    const auto& c = count[static_cast<std::size_t>(f)];
    if (c[0] == 0 || c[1] == 0) {
      throw ValidationError("folds: fold " + std::to_string(f) + " lacks one of the classes");
    }
  }
}

Matrix Preprocessor::transform(const Matrix& raw) const {
  Matrix scaled = scaler.apply(raw.select_cols(columns));
  return scaled.select_cols(rfe_columns);
}

Preprocessor fit_preprocessor(const Matrix& x, const Labels& y, const SelectionConfig& sel,
                              const ml::ModelSpec& model) {
  Preprocessor p;
  std::vector<std::size_t> base(x.cols());
  std::iota(base.begin(), base.end(), 0);
  if (sel.prune) base = mask_indices(prune_matrix_mask(x));
  if (base.empty()) throw ValidationError("prune: every column is constant on the training rows");
  if (sel.variance) {
    auto keep = variance_select(x.select_cols(base), sel.variance_threshold);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (keep[i]) p.columns.push_back(base[i]);
    }
  } else {
    p.columns = base;
  }
  if (sel.correlation && p.columns.size() >= 2) {
    auto corr = correlation_filter(x.select_cols(p.columns), sel.r_max);
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < corr.size(); ++i) {
      if (corr[i]) next.push_back(p.columns[i]);
    }
    p.columns = std::move(next);
  }
  Matrix sub = x.select_cols(p.columns);
  p.scaler = Scaler::fit(sub);
  p.rfe_columns.resize(p.columns.size());
  std::iota(p.rfe_columns.begin(), p.rfe_columns.end(), 0);
  if (sel.rfe && sel.rfe_keep < p.columns.size()) {
    const std::size_t width = p.columns.size();
    const std::size_t step = std::max<std::size_t>(1, (width - sel.rfe_keep + 2) / 3);
    p.rfe_columns = mask_indices(rfe(model, p.scaler.apply(sub), y, sel.rfe_keep, step));
  }
  return p;
}

std::vector<std::size_t> rows_outside(const std::vector<int>& folds,
                                      std::initializer_list<int> excluded) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (std::find(excluded.begin(), excluded.end(), folds[i]) == excluded.end()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> rows_in(const std::vector<int>& folds, int fold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (folds[i] == fold) out.push_back(i);
  }
  return out;
}

Labels select_labels(const Labels& y, const std::vector<std::size_t>& rows) {
  Labels out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(y[r]);
  return out;
}

}  // namespace vfix::pipeline
