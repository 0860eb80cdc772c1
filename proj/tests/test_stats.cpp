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
#include <map>

#include "vfix/random.hpp"
#include "vfix/stats.hpp"

namespace vfix::stats {
namespace {

ContingencyTable table(std::vector<std::vector<long>> c) { return {std::move(c), {}, {}}; }

TEST(ChiSquare, TwoByTwoWithAndWithoutYates) {
  auto t = table({{10, 20}, {20, 10}});
  auto plain = chi_square(t, false);
  auto yates = chi_square(t, true);
  EXPECT_NEAR(plain.chi2, 20.0 / 3.0, 1e-9);
  EXPECT_NEAR(yates.chi2, 5.4, 1e-9);
  EXPECT_EQ(yates.dof, 1);
  // Reference values: scipy.stats.chi2.sf
  EXPECT_NEAR(yates.p, 0.02013675155034633, 1e-8);
  EXPECT_NEAR(plain.p, 0.009823274507519235, 1e-8);
  EXPECT_NEAR(cramers_v(yates.chi2, 60, 2, 2), 0.3, 1e-12);
  EXPECT_EQ(classify_strength(cramers_v(yates.chi2, 60, 2, 2)), Strength::Moderate);
}

TEST(ChiSquare, IndependenceGivesZero) {
  auto r = chi_square(table({{10, 10}, {20, 20}}));
  EXPECT_EQ(r.chi2, 0.0);
  EXPECT_EQ(r.p, 1.0);
}

TEST(ChiSquare, ThreeByTwoHasNoYates) {
  auto t = table({{12, 5}, {7, 19}, {3, 14}});
  auto r = chi_square(t);
  EXPECT_EQ(r.dof, 2);
  // scipy.stats.chi2_contingency
  EXPECT_NEAR(r.chi2, 12.134707397865293, 1e-9);
  EXPECT_NEAR(r.p, 0.0023172973703475086, 1e-10);
  EXPECT_EQ(chi_square(t, false).chi2, r.chi2);
}

TEST(ChiSquare, ZeroMarginRejected) {
  EXPECT_THROW(chi_square(table({{0, 0}, {3, 4}})), ValidationError);
  EXPECT_THROW(chi_square(table({{0, 5}, {0, 4}})), ValidationError);
  EXPECT_THROW(chi_square(table({{1, 2}})), ValidationError);
}

TEST(ChiSquare, SurvivalMatchesReference) {
  struct Ref {
    double x;
    int dof;
    double p;
  };
  // scipy.stats.chi2.sf
  const Ref refs[] = {{5.4, 1, 0.02013675155034633},
                      {6.666666666666667, 1, 0.009823274507519235},
                      {0.5, 1, 0.47950012218695337},
                      {3.841458820694124, 1, 0.04999999999999989},
                      {10.0, 2, 0.006737946999085468},
                      {0.01, 3, 0.9997348349413444},
                      {25.0, 4, 5.0309817823062075e-05},
                      {100.0, 7, 1.0787979671702833e-18},
                      {1e-06, 1, 0.9992021155721779},
                      {50.0, 1, 1.537459794428033e-12},
                      {7.5, 5, 0.186029833602867},
                      {2.0, 10, 0.9963401531726563}};
  for (const auto& r : refs) {
    EXPECT_NEAR(chi2_sf(r.x, r.dof), r.p, 1e-10) << r.x << " " << r.dof;
    if (r.p > 1e-300) EXPECT_NEAR(chi2_sf(r.x, r.dof) / r.p, 1.0, 1e-9);
  }
}

TEST(ChiSquare, PropertiesOnRandomTables) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    auto tab = table({{1 + static_cast<long>(rng.below(40)), 1 + static_cast<long>(rng.below(40))},
                      {1 + static_cast<long>(rng.below(40)), 1 + static_cast<long>(rng.below(40))}});
    auto plain = chi_square(tab, false);
    auto yates = chi_square(tab, true);
    EXPECT_GE(yates.chi2, 0.0);
    EXPECT_LE(yates.chi2, plain.chi2 + 1e-12);
    EXPECT_GE(yates.p, 0.0);
    EXPECT_LE(yates.p, 1.0);
  }
  double last = 2.0;
  for (double x = 0; x < 60; x += 0.5) {
    double p = chi2_sf(x, 3);
    EXPECT_LE(p, last);
    last = p;
  }
}

TEST(CramersV, Bounds) {
  EXPECT_EQ(cramers_v(0, 50, 2, 2), 0.0);
  EXPECT_EQ(classify_strength(0.0), Strength::None);
  EXPECT_DOUBLE_EQ(cramers_v(100, 100, 3, 2), 1.0);
  EXPECT_EQ(cramers_v(150, 100, 3, 2), 1.0);
  EXPECT_EQ(classify_strength(0.1), Strength::Low);
  EXPECT_EQ(classify_strength(0.0999), Strength::None);
  EXPECT_EQ(classify_strength(0.5), Strength::High);
}

TEST(BinFeature, ZeroHeavyBecomesBinary) {
  std::vector<double> v(95, 0.0);
  for (int i = 0; i < 5; ++i) v.push_back(i + 1);
  auto b = bin_feature(v, 4);
  EXPECT_TRUE(b.binary);
  EXPECT_EQ(std::count(b.categories.begin(), b.categories.end(), 1), 5);
}

TEST(BinFeature, TiesChooseThreeBins) {
  std::vector<double> v = {1, 1, 1, 2, 2, 2, 3, 3, 3};
  auto b = bin_feature(v, 4);
  EXPECT_FALSE(b.binary);
  EXPECT_EQ(b.bins, 3);
  EXPECT_EQ(b.categories, (std::vector<int>{1, 1, 1, 2, 2, 2, 3, 3, 3}));
}

TEST(BinFeature, ZerosFormTheirOwnCategory) {
  std::vector<double> v = {0, 0, 0, 5, 6, 7, 8};
  auto b = bin_feature(v, 2);
  EXPECT_EQ(b.bins, 2);
  EXPECT_EQ(b.categories, (std::vector<int>{0, 0, 0, 1, 1, 2, 2}));
}

TEST(BinFeature, ConstantIsDegenerate) {
  std::vector<double> v = {4, 4, 4};
  EXPECT_TRUE(bin_feature(v, 4).degenerate);
  std::vector<double> one = {1};
  EXPECT_THROW(bin_feature(one, 4), ValidationError);
}

TEST(BinFeature, NeverSplitsEqualValues) {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> v;
    std::size_t n = 2 + rng.below(60);
    for (std::size_t i = 0; i < n; ++i) v.push_back(static_cast<double>(rng.below(6)));
    int max_bins = 1 + static_cast<int>(rng.below(7));
    auto b = bin_feature(v, max_bins);
    std::map<double, int> cat;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto [it, fresh] = cat.emplace(v[i], b.categories[i]);
      EXPECT_EQ(it->second, b.categories[i]);
    }
    EXPECT_LE(b.bins, max_bins);
    // Categories are monotone in the value.
    int last = -1;
    for (auto [value, c] : cat) {
      EXPECT_GE(c, last);
      last = c;
    }
  }
}

TEST(DefaultMaxBins, PerAnalyzer) {
  EXPECT_EQ(default_max_bins("lint"), 4);
  EXPECT_EQ(default_max_bins("graph"), 4);
  EXPECT_EQ(default_max_bins("metrics"), 7);
  EXPECT_EQ(default_max_bins("lint_style"), 5);
}

EmbeddingMatrix toy() {
  EmbeddingMatrix m;
  m.analyzer = "lint";
  m.feature_names = {"perfect", "constant", "noise"};
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 20; ++i) {
    int label = i % 2;
    m.commit_ids.push_back("c" + std::to_string(i));
    m.labels.push_back(label);
    m.folds.push_back(i % 5);
    rows.push_back({label ? 3.0 : 0.0, 7.0, static_cast<double>((i / 2) % 2)});
  }
  m.values = Matrix::from_rows(rows);
  return m;
}

TEST(AssociationReport, ToyMatrix) {
  auto r = association_report(toy(), 4);
  ASSERT_EQ(r.entries.size(), 2u);
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].first, "constant");
  const auto& perfect = r.entries[0];
  EXPECT_EQ(perfect.feature, "perfect");
  EXPECT_TRUE(perfect.significant);
  EXPECT_EQ(perfect.strength, Strength::High);
  auto oracle = chi_square(table({{10, 0}, {0, 10}}));
  EXPECT_DOUBLE_EQ(perfect.chi2, oracle.chi2);
  const auto& noise = r.entries[1];
  EXPECT_FALSE(noise.significant);
  EXPECT_FALSE(noise.cramers_v.has_value());
  EXPECT_EQ(r.significant_count(), 1u);
  std::string csv = format_report(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "feature,chi2,p,dof,significant,cramers_v,strength");
  std::string summary = format_summary({r});
  EXPECT_NE(summary.find("lint,2,1,0,0,0,1,1"), std::string::npos) << summary;
}

}  // namespace
}  // namespace vfix::stats
