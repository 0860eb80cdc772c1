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

#include "vfix/pipeline/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

namespace vfix::pipeline {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <typename T>
T pick(Rng& rng, std::initializer_list<T> values) {
  return *(values.begin() + rng.below(values.size()));
}

}  // namespace

Candidate sample_candidate(Rng& rng) {
  using ml::Algorithm;
  Candidate c;
  const auto& algs = ml::all_algorithms();
  c.model.algorithm = algs[rng.below(algs.size())];
  c.model.seed = rng.next();
  auto& p = c.model.params;
  auto log_uniform = [&](double lo, double hi) { return std::pow(10.0, rng.uniform(lo, hi)); };
  // Depth 0 means unlimited.
  auto depth = [&] {
    auto d = rng.below(16);
    return d == 15 ? 0.0 : static_cast<double>(2 + d);
  };
  const std::vector<double> leaves = {1, 2, 5, 10};
  const std::vector<double> sizes = {50, 100, 200, 400};
  const std::vector<double> rates = {0.01, 0.05, 0.1, 0.3};
  switch (c.model.algorithm) {
    case Algorithm::GaussianNB:
      p["var_smoothing"] = log_uniform(-12, -6);
      break;
    case Algorithm::LogisticRegression:
      p["l2"] = log_uniform(-4, 2);
      break;
    case Algorithm::LinearSvm:
      p["l2"] = log_uniform(-4, 2);
      p["epochs"] = pick(rng, {200.0, 400.0});
      break;
    case Algorithm::DecisionTree:
      p["max_depth"] = depth();
      p["min_leaf"] = rng.pick(leaves);
      break;
    case Algorithm::RandomForest:
      p["n_estimators"] = rng.pick(sizes);
      p["max_depth"] = depth();
      p["min_leaf"] = rng.pick(leaves);
      break;
    case Algorithm::AdaBoost:
      p["n_estimators"] = rng.pick(sizes);
      p["learning_rate"] = rng.pick(rates);
      p["max_depth"] = pick(rng, {1.0, 2.0, 3.0});
      break;
    case Algorithm::GradientBoosting:
      p["n_estimators"] = rng.pick(sizes);
      p["learning_rate"] = rng.pick(rates);
      p["max_depth"] = pick(rng, {2.0, 3.0, 4.0});
      p["min_leaf"] = rng.pick(leaves);
      break;
  }
  // Selection draws happen unconditionally so the stream does not depend on
  // the algorithm.
  auto& s = c.selection;
  s.variance = rng.below(2) == 1;
  s.variance_threshold = pick(rng, {0.001, 0.01, 0.05});
  s.correlation = rng.below(2) == 1;
  s.r_max = pick(rng, {0.8, 0.9, 0.95});
  bool rfe = rng.below(2) == 1;
  s.rfe_keep = pick<std::size_t>(rng, {10, 25, 50, 100});
  s.rfe = rfe && ml::has_importances(c.model.algorithm);
  return c;
}

std::vector<double> FittedPipeline::predict(const Matrix& raw) const {
  return model.predict_proba(prep.transform(raw));
}

FittedPipeline fit_pipeline(const Candidate& c, const Matrix& x, const Labels& y) {
  FittedPipeline f;
  f.candidate = c;
  f.prep = fit_preprocessor(x, y, c.selection, c.model);
  f.model = ml::fit(c.model, f.prep.transform(x), y);
  return f;
}

CvScores cross_fold_scores(const std::vector<int>& folds, const FitFn& fit) {
  CvScores s;
  const std::size_t n = folds.size();
  s.outer.assign(n, kNaN);
  s.inner.assign(kFolds, std::vector<double>(n, kNaN));
  auto store = [&](std::vector<double>& into, const std::vector<std::size_t>& rows,
                   const std::vector<double>& p) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!(p[i] >= 0 && p[i] <= 1)) throw RuntimeError("model produced a probability outside [0, 1]");
      into[rows[i]] = p[i];
    }
  };
  try {
    for (int k = 0; k < kFolds; ++k) {
      auto predict = fit(rows_outside(folds, {k}));
      auto test = rows_in(folds, k);
      store(s.outer, test, predict(test));
    }
    for (int k = 0; k < kFolds; ++k) {
      for (int j = k + 1; j < kFolds; ++j) {
        auto predict = fit(rows_outside(folds, {k, j}));
        auto rows_j = rows_in(folds, j), rows_k = rows_in(folds, k);
        store(s.inner[static_cast<std::size_t>(k)], rows_j, predict(rows_j));
        store(s.inner[static_cast<std::size_t>(j)], rows_k, predict(rows_k));
      }
    }
    s.ok = true;
  } catch (const std::runtime_error& e) {
    s = CvScores{};
    s.error = e.what();
  }
  return s;
}

CvScores cross_validate(const Candidate& c, const Matrix& x, const Labels& y,
                        const std::vector<int>& folds) {
  return cross_fold_scores(folds, [&](const std::vector<std::size_t>& train) {
    auto model = std::make_shared<FittedPipeline>(
        fit_pipeline(c, x.select_rows(train), select_labels(y, train)));
    return [model, &x](const std::vector<std::size_t>& rows) {
      return model->predict(x.select_rows(rows));
    };
  });
}

CvScore fold_score(const Labels& y, const std::vector<double>& scores,
                   const std::vector<int>& folds, int skip, double min_recall) {
  double p = 0, r = 0;
  int used = 0;
  for (int j = 0; j < kFolds; ++j) {
    if (j == skip) continue;
    auto rows = rows_in(folds, j);
    std::vector<double> s;
    for (std::size_t i : rows) s.push_back(scores[i]);
    auto point = pick_threshold(pr_curve(select_labels(y, rows), s), min_recall);
    p += point.precision;
    r += point.recall;
    ++used;
  }
  return {p / used, r / used};
}

std::vector<std::vector<CvScore>> criterion_table(const std::vector<CvScores>& options,
                                                  const Labels& y, const std::vector<int>& folds,
                                                  double min_recall) {
  std::vector<std::vector<CvScore>> table(options.size(), std::vector<CvScore>(kFolds));
  for (std::size_t o = 0; o < options.size(); ++o) {
    if (!options[o].ok) continue;
    for (int k = 0; k < kFolds; ++k) {
      table[o][static_cast<std::size_t>(k)] =
          fold_score(y, options[o].inner[static_cast<std::size_t>(k)], folds, k, min_recall);
    }
  }
  return table;
}

namespace {

bool better(double p, double r, double best_p, double best_r) {
  return p > best_p || (p == best_p && r > best_r);
}

}  // namespace

int best_option(const std::vector<CvScore>& scores) {
  int best = -1;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].precision < 0) continue;
    if (best < 0 || better(scores[i].precision, scores[i].recall,
                           scores[static_cast<std::size_t>(best)].precision,
                           scores[static_cast<std::size_t>(best)].recall)) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

Ranked overall_best(const std::vector<std::vector<CvScore>>& table) {
  std::vector<CvScore> mean(table.size());
  for (std::size_t o = 0; o < table.size(); ++o) {
    double p = 0, r = 0;
    bool ok = true;
    for (const auto& s : table[o]) {
      ok &= s.precision >= 0;
      p += s.precision;
      r += s.recall;
    }
    if (ok) mean[o] = {p / kFolds, r / kFolds};
  }
  int best = best_option(mean);
  if (best < 0) return {};
  return {best, mean[static_cast<std::size_t>(best)].precision,
          mean[static_cast<std::size_t>(best)].recall};
}

NestedResult nested_evaluate(const std::vector<CvScores>& options,
                             const std::vector<std::vector<CvScore>>& table, const Labels& y,
                             const std::vector<int>& folds, double min_recall) {
  NestedResult out;
  std::vector<double> p, r, f, a;
  std::vector<std::vector<double>> grids;
  for (int k = 0; k < kFolds; ++k) {
    std::vector<CvScore> column;
    for (const auto& row : table) column.push_back(row[static_cast<std::size_t>(k)]);
    int choice = best_option(column);
    if (choice < 0) throw RuntimeError("every search option failed for fold " + std::to_string(k));
    const CvScores& s = options[static_cast<std::size_t>(choice)];

    auto train = rows_outside(folds, {k});
    std::vector<double> pooled;
    for (std::size_t i : train) pooled.push_back(s.inner[static_cast<std::size_t>(k)][i]);
    double threshold = pick_threshold(pr_curve(select_labels(y, train), pooled), min_recall).threshold;

    auto test = rows_in(folds, k);
    std::vector<double> scores;
    for (std::size_t i : test) scores.push_back(s.outer[i]);
    Labels yt = select_labels(y, test);
    FoldOutcome fo;
    fo.fold = k;
    fo.choice = choice;
    fo.threshold = threshold;
    fo.metrics = evaluate(yt, apply_threshold(scores, threshold));
    fo.pr_grid = resample_pr(pr_curve(yt, scores));
    p.push_back(fo.metrics.precision);
    r.push_back(fo.metrics.recall);
    f.push_back(fo.metrics.f1);
    a.push_back(fo.metrics.accuracy);
    grids.push_back(fo.pr_grid);
    out.folds.push_back(std::move(fo));
  }
  out.precision = mean_std(p);
  out.recall = mean_std(r);
  out.f1 = mean_std(f);
  out.accuracy = mean_std(a);
  for (int g = 0; g < kRecallGridSize; ++g) {
    std::vector<double> v;
    for (const auto& grid : grids) v.push_back(grid[static_cast<std::size_t>(g)]);
    out.pr.push_back(mean_std(v));
  }
  return out;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace vfix::pipeline
