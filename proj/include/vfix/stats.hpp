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

#ifndef VFIX_STATS_HPP_
#define VFIX_STATS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vfix/common.hpp"
#include "vfix/embedding.hpp"

namespace vfix::stats {

// Regularized lower / upper incomplete gamma functions P(a, x) and Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Survival function of the chi-square distribution.
double chi2_sf(double x, int dof);

struct ContingencyTable {
  std::vector<std::vector<long>> counts;  // rows x cols
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  std::size_t rows() const { return counts.size(); }
  std::size_t cols() const { return counts.empty() ? 0 : counts.front().size(); }
  long total() const;
  // Throws ValidationError on shape problems or an empty margin.
  void validate() const;
};

struct ChiSquare {
  double chi2 = 0;
  double p = 1;
  int dof = 0;
};

// Pearson chi-square; Yates' continuity correction when dof = 1 and
// `yates` is set. Each corrected term uses max(|O - E| - 0.5, 0).
ChiSquare chi_square(const ContingencyTable& t, bool yates = true);

// sqrt(chi2 / (n * min(r - 1, c - 1))), clamped to [0, 1].
double cramers_v(double chi2, long n, std::size_t r, std::size_t c);

enum class Strength { None, Low, Moderate, High };
std::string_view strength_name(Strength s);
// Lower bounds inclusive: 0.1 low, 0.3 moderate, 0.5 high.
Strength classify_strength(double v);

struct Binning {
  std::vector<int> categories;  // 0 = zero value, 1..k = quantile bins
  int bins = 0;                 // k (nonzero bins)
  bool binary = false;
  bool degenerate = false;      // one category only
};

// Zero-heavy (> 90 % zeros) features become binary. Otherwise zeros form
// category 0 and nonzero values are split into the largest k <= max_bins
// equal-frequency bins whose cut points separate distinct values.
Binning bin_feature(std::span<const double> values, int max_bins);

ContingencyTable build_table(std::span<const int> categories, std::span<const int> labels);

struct FeatureAssociation {
  std::string feature;
  double chi2 = 0;
  double p = 1;
  int dof = 0;
  bool significant = false;
  std::optional<double> cramers_v;
  std::optional<Strength> strength;
  int categories = 0;
  bool low_expected = false;  // some expected count < 5 after reduction
};

struct AssociationReport {
  std::string analyzer;
  std::vector<FeatureAssociation> entries;
  std::vector<std::pair<std::string, std::string>> skipped;  // feature, reason

  std::size_t significant_count() const;
  std::size_t band_count(Strength s) const;
};

int default_max_bins(std::string_view analyzer);

// Screens every column of `m` against its labels at level `alpha`. Expected
// counts below 5 trigger bin reduction down to two categories.
AssociationReport association_report(const EmbeddingMatrix& m, int max_bins, double alpha = 0.05);

// `feature,chi2,p,dof,significant,cramers_v,strength`
std::string format_report(const AssociationReport& r);
// `embedding,features,significant,none,low,moderate,high,skipped`
std::string format_summary(const std::vector<AssociationReport>& reports);

}  // namespace vfix::stats

#endif  // VFIX_STATS_HPP_
