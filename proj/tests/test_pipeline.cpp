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
#include <cmath>
#include <set>

#include "learner_checks.hpp"
#include "vfix/pipeline/experiment.hpp"
#include "vfix/pipeline/report.hpp"

namespace vfix::pipeline {
namespace {

using vfix::testing::blobs;

Matrix columns(const std::vector<std::vector<double>>& cols) {
  Matrix m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

TEST(Selection, VarianceOnMinMaxScale) {
  auto x = columns({{3, 3, 3, 3}, {0, 1, 0, 1}, {0, 10, 20, 30}});
  EXPECT_EQ(variance_select(x, 0.1), (std::vector<bool>{false, true, true}));
  EXPECT_EQ(variance_select(x, 0.0), (std::vector<bool>{true, true, true}));
  // {0,1} balanced has variance 0.25 exactly.
  EXPECT_EQ(variance_select(columns({{0, 1, 0, 1}}), 0.25), (std::vector<bool>{true}));
  EXPECT_THROW(variance_select(x, 0.5), ValidationError);
}

TEST(Selection, CorrelationDropsCopiesAndNegations) {
  auto x = columns({{1, 2, 3, 5}, {1, 2, 3, 5}, {-1, -2, -3, -5}, {4, 4, 4, 4}, {1, -1, 1, 0}});
  EXPECT_EQ(correlation_filter(x, 0.95), (std::vector<bool>{true, false, false, true, true}));
}

TEST(Selection, IndependentColumnsSurviveCorrelationFilter) {
  Rng rng(3);
  Matrix x(500, 10);
  for (std::size_t i = 0; i < 500; ++i)
    for (std::size_t j = 0; j < 10; ++j) x(i, j) = rng.normal();
  auto keep = correlation_filter(x, 0.95);
  EXPECT_TRUE(std::all_of(keep.begin(), keep.end(), [](bool b) { return b; }));
}

TEST(Selection, RfeKeepsThePlantedColumn) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    Rng rng(seed);
    Matrix x(120, 8);
    Labels y(120);
    for (std::size_t i = 0; i < 120; ++i) {
      for (std::size_t j = 0; j < 8; ++j) x(i, j) = rng.normal();
      y[i] = x(i, 0) + 0.1 * rng.normal() > 0;
    }
    ml::ModelSpec spec{ml::Algorithm::LogisticRegression, {}, seed};
    auto keep = rfe(spec, x, y, 1, 3);
    EXPECT_EQ(mask_indices(keep), (std::vector<std::size_t>{0})) << seed;
    EXPECT_EQ(std::count(keep.begin(), keep.end(), true), 1);
    auto three = rfe(spec, x, y, 3, 100);
    EXPECT_EQ(std::count(three.begin(), three.end(), true), 3);
    EXPECT_TRUE(three[0]);
  }
  auto [x, y] = blobs(20, 3, 1, 1);
  ml::ModelSpec tree{ml::Algorithm::DecisionTree, {}, 0};
  EXPECT_EQ(rfe(tree, x, y, 3, 1), (std::vector<bool>{true, true, true}));
  EXPECT_THROW(rfe({ml::Algorithm::GaussianNB, {}, 0}, x, y, 1, 1), ValidationError);
  EXPECT_THROW(rfe({ml::Algorithm::LinearSvm, {}, 0}, x, y, 1, 1), ValidationError);
}

TEST(Selection, ScalerUsesPopulationStd) {
  auto x = columns({{1, 2, 3}, {5, 5, 5}});
  auto s = Scaler::fit(x);
  auto t = s.apply(x);
  EXPECT_NEAR(t(0, 0), -1.224744871391589, 1e-12);
  EXPECT_EQ(t(1, 0), 0.0);
  EXPECT_NEAR(t(2, 0), 1.224744871391589, 1e-12);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(t(i, 1), 0.0);
  EXPECT_EQ(Scaler::fit(x).apply(x), t);
}

TEST(Selection, StratifiedFoldsAreBalanced) {
  Labels y(10);
  for (std::size_t i = 0; i < 10; ++i) y[i] = i < 5;
  auto f = stratified_kfold(y, 5, 1);
  for (int k = 0; k < 5; ++k) {
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < 10; ++i) {
      if (f[i] == k) (y[i] ? pos : neg)++;
    }
    EXPECT_EQ(pos, 1);
    EXPECT_EQ(neg, 1);
  }
  Labels big(1821, 0);
  std::fill(big.begin(), big.begin() + 921, 1);
  auto g = stratified_kfold(big, 5, 7);
  std::array<int, 5> size{}, pos{};
  for (std::size_t i = 0; i < big.size(); ++i) {
    ++size[static_cast<std::size_t>(g[i])];
    pos[static_cast<std::size_t>(g[i])] += big[i];
  }
  for (int k = 0; k < 5; ++k) {
    EXPECT_TRUE(size[k] == 364 || size[k] == 365);
    EXPECT_NEAR(static_cast<double>(pos[k]) / size[k], 921.0 / 1821.0, 0.02);
  }
  EXPECT_THROW(stratified_kfold(Labels{1, 1, 0, 0, 0, 0, 0}, 5, 0), ValidationError);
}

TEST(Metrics, ConfusionArithmetic) {
  Labels y{1, 1, 1, 1, 0, 0, 0, 0, 0, 0};
  std::vector<int> p{1, 1, 0, 0, 1, 0, 0, 0, 0, 0};
  auto m = evaluate(y, p);
  EXPECT_DOUBLE_EQ(m.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.recall, 0.5);
  EXPECT_NEAR(m.f1, 4.0 / 7.0, 1e-15);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.7);
  auto perfect = evaluate(y, std::vector<int>(y.begin(), y.end()));
  EXPECT_EQ(perfect.precision, 1.0);
  EXPECT_EQ(perfect.f1, 1.0);
  auto none = evaluate(y, std::vector<int>(10, 0));
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.f1, 0.0);
}

TEST(Metrics, PerfectScoresGivePrecisionOne) {
  Labels y{0, 0, 1, 1, 0, 1};
  std::vector<double> s{0.1, 0.2, 0.9, 0.8, 0.3, 0.7};
  for (double p : resample_pr(pr_curve(y, s))) EXPECT_EQ(p, 1.0);
  EXPECT_THROW(pr_curve(Labels{1, 1}, {0.2, 0.3}), ValidationError);
  EXPECT_THROW(pr_curve(Labels{1, 0}, {0.2, 1.3}), ValidationError);
}

TEST(Metrics, PickThresholdOnSixPoints) {
  // Scores descending: 0.9(1) 0.8(0) 0.7(1) 0.6(1) 0.5(0) 0.4(1).
  Labels y{1, 0, 1, 1, 0, 1};
  std::vector<double> s{0.9, 0.8, 0.7, 0.6, 0.5, 0.4};
  auto curve = pr_curve(y, s);
  ASSERT_EQ(curve.size(), 6u);
  // Recall >= 0.5 candidates: t=0.7 (P 2/3, R 0.5), t=0.6 (P 3/4, R 0.75),
  // t=0.5 (P 3/5), t=0.4 (P 4/6).
  auto p = pick_threshold(curve, 0.5);
  EXPECT_EQ(p.threshold, 0.6);
  EXPECT_DOUBLE_EQ(p.precision, 0.75);
  EXPECT_EQ(pick_threshold(curve, 0.0).threshold, 0.9);
  // Tie on precision 2/3 between t=0.7 and t=0.4 goes to higher recall.
  std::vector<PrPoint> tie{{0.4, 2.0 / 3, 1.0}, {0.7, 2.0 / 3, 0.5}};
  EXPECT_EQ(pick_threshold(tie, 0.5).threshold, 0.4);
  EXPECT_THROW(pick_threshold(tie, 1.5), ValidationError);
}

TEST(Metrics, RandomScoresAverageHalfPrecision) {
  Rng rng(5);
  double total = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    Labels y(100);
    std::vector<double> s(100);
    for (std::size_t i = 0; i < 100; ++i) {
      y[i] = i % 2;
      s[i] = rng.uniform();
    }
    auto grid = resample_pr(pr_curve(y, s));
    double sum = 0;
    for (std::size_t g = 1; g < grid.size(); ++g) sum += grid[g];
    total += sum / 100;
  }
  EXPECT_NEAR(total / reps, 0.5, 0.1);
}

TEST(Metrics, SoftVote) {
  EXPECT_EQ(soft_vote({{0.2}, {0.4}}, {1, 1})[0], (0.2 + 0.4) / 2);
  EXPECT_EQ(soft_vote({{0.2, 0.7}, {0.4, 0.1}}, {0, 1}), (std::vector<double>{0.4, 0.1}));
  EXPECT_THROW(soft_vote({{0.2}, {0.4}}, {0, 0}), ValidationError);
  EXPECT_THROW(soft_vote({{0.2}, {0.4, 0.5}}, {1, 1}), ValidationError);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::vector<double>> p(4, std::vector<double>(1));
    std::vector<int> w(4);
    for (int m = 0; m < 4; ++m) {
      p[m][0] = rng.uniform();
      w[m] = rng.below(2);
    }
    if (std::count(w.begin(), w.end(), 1) == 0) w[0] = 1;
    double v = soft_vote(p, w)[0], lo = 1, hi = 0;
    for (int m = 0; m < 4; ++m) {
      if (w[m]) lo = std::min(lo, p[m][0]), hi = std::max(hi, p[m][0]);
    }
    EXPECT_GE(v, lo);
    EXPECT_LE(v, hi);
  }
}

std::vector<int> folds_for(const Labels& y, std::uint64_t seed) { return stratified_kfold(y, 5, seed); }

TEST(Pipeline, OutlierInTestFoldLeavesTrainingFitsAlone) {
  auto [x, y] = blobs(100, 6, 1.0, 21);
  auto folds = folds_for(y, 1);
  Candidate c;
  c.model = {ml::Algorithm::LogisticRegression, {}, 1};
  c.selection = {true, true, 0.01, true, 0.9, true, 3};
  for (int k = 0; k < 5; ++k) {
    auto train = rows_outside(folds, {k});
    auto before = fit_preprocessor(x.select_rows(train), select_labels(y, train), c.selection, c.model);
    Matrix poisoned = x;
    for (std::size_t r : rows_in(folds, k)) poisoned(r, 0) = 1e6;
    auto after = fit_preprocessor(poisoned.select_rows(train), select_labels(y, train), c.selection, c.model);
    EXPECT_EQ(before, after);
  }
}

TEST(Pipeline, CrossFoldScoresCoverEveryRowOnce) {
  auto [x, y] = blobs(60, 3, 1.0, 22);
  auto folds = folds_for(y, 2);
  Candidate c;
  c.model = {ml::Algorithm::GaussianNB, {}, 0};
  auto s = cross_validate(c, x, y, folds);
  ASSERT_TRUE(s.ok) << s.error;
  for (std::size_t r = 0; r < y.size(); ++r) {
    EXPECT_FALSE(std::isnan(s.outer[r]));
    for (int k = 0; k < 5; ++k) EXPECT_EQ(std::isnan(s.inner[k][r]), folds[r] == k);
  }
}

TEST(Pipeline, NestedEvaluationInvariants) {
  auto [x, y] = blobs(100, 4, 0.8, 23);
  auto folds = folds_for(y, 3);
  Rng rng(9);
  std::vector<CvScores> options;
  for (int i = 0; i < 4; ++i) options.push_back(cross_validate(sample_candidate(rng), x, y, folds));
  auto table = criterion_table(options, y, folds, 0.3);
  auto r = nested_evaluate(options, table, y, folds, 0.3);
  ASSERT_EQ(r.folds.size(), 5u);
  for (const auto& f : r.folds) {
    const auto& m = f.metrics;
    double f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0;
    EXPECT_DOUBLE_EQ(m.f1, f1);
  }
  for (int g = 0; g < kRecallGridSize; ++g) {
    double lo = 1, hi = 0;
    for (const auto& f : r.folds) lo = std::min(lo, f.pr_grid[g]), hi = std::max(hi, f.pr_grid[g]);
    EXPECT_GE(r.pr[g].mean, lo - 1e-15);
    EXPECT_LE(r.pr[g].mean, hi + 1e-15);
  }
}

TEST(Pipeline, GridsHaveThePaperShape) {
  EXPECT_EQ(voting_grid(4).size(), 15u);
  std::set<ml::Algorithm> finals;
  for (const auto& s : stacking_grid(1)) finals.insert(s.algorithm);
  EXPECT_EQ(finals.size(), 7u);
}

std::vector<EmbeddingMatrix> toy_embeddings(std::uint64_t seed) {
  auto [x, y] = blobs(80, 5, 1.5, seed);
  auto folds = folds_for(y, seed);
  std::vector<EmbeddingMatrix> out;
  for (const char* name : {"lint", "lint_style", "metrics", "graph"}) {
    EmbeddingMatrix m;
    m.analyzer = name;
    for (int j = 0; j < 5; ++j) m.feature_names.push_back("f" + std::to_string(j));
    for (std::size_t i = 0; i < y.size(); ++i) m.commit_ids.push_back("c" + std::to_string(i));
    m.labels = y;
    m.folds = folds;
    m.values = x;
    out.push_back(m);
  }
  return out;
}

TEST(Pipeline, ExperimentIsDeterministicAndDeployable) {
  auto data = toy_embeddings(31);
  ExperimentOptions opt;
  opt.n_iter = 3;
  opt.seed = 5;
  auto a = run_experiment(data, opt);
  auto b = run_experiment(data, opt);
  EXPECT_EQ(format_run_report(a), format_run_report(b));
  EXPECT_EQ(a.voting.grid.size(), 15u);
  EXPECT_EQ(a.stacking.grid.size(), 13u);
  EXPECT_GT(a.voting.nested.precision.mean, 0.7);

  auto d = deploy(a, data);
  for (const auto& base : d.bases) {
    auto back = deserialize_pipeline(serialize_pipeline(base));
    EXPECT_EQ(back.predict(data[0]), base.predict(data[0]));
    EXPECT_EQ(back.threshold, base.threshold);
  }
  Deployment copy;
  copy.bases = d.bases;
  deserialize_ensemble(serialize_ensemble(d), copy);
  EXPECT_EQ(copy.score(data).stacking, d.score(data).stacking);
  EXPECT_EQ(copy.voting_weights, d.voting_weights);

  auto summary = format_summary_from_report(format_run_report(a));
  EXPECT_NE(summary.find("voting"), std::string::npos);
}

TEST(Pipeline, MisalignedEmbeddingsAreRejected) {
  auto data = toy_embeddings(32);
  data[2].labels[0] ^= 1;
  EXPECT_THROW(run_experiment(data, {}), ValidationError);
}

}  // namespace
}  // namespace vfix::pipeline
