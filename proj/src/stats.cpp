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

#include "vfix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vfix/csv.hpp"

namespace vfix::stats {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

double gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0) || x < 0) throw ValidationError("gamma_p: need a > 0 and x >= 0");
  if (x == 0) return 0.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_fraction(a, x);
}

double gamma_q(double a, double x) {
  if (!(a > 0) || x < 0) throw ValidationError("gamma_q: need a > 0 and x >= 0");
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_fraction(a, x);
}

double chi2_sf(double x, int dof) {
  if (dof < 1) throw ValidationError("chi2_sf: dof must be >= 1");
  if (x <= 0) return 1.0;
  return gamma_q(dof / 2.0, x / 2.0);
}

long ContingencyTable::total() const {
  long t = 0;
  for (const auto& r : counts)
    for (long v : r) t += v;
  return t;
}

void ContingencyTable::validate() const {
  if (rows() < 2 || cols() < 2) throw ValidationError("contingency table needs at least 2x2 cells");
  for (const auto& r : counts) {
    if (r.size() != cols()) throw ValidationError("contingency table is not rectangular");
    for (long v : r) {
      if (v < 0) throw ValidationError("contingency table has a negative count");
    }
  }
  auto label = [](const std::vector<std::string>& labels, std::size_t i) {
    return i < labels.size() ? labels[i] : std::to_string(i);
  };
  for (std::size_t i = 0; i < rows(); ++i) {
    long s = 0;
    for (long v : counts[i]) s += v;
    if (s == 0) throw ValidationError("contingency table row '" + label(row_labels, i) + "' is empty");
  }
  for (std::size_t j = 0; j < cols(); ++j) {
    long s = 0;
    for (const auto& r : counts) s += r[j];
    if (s == 0) {
      throw ValidationError("contingency table column '" + label(col_labels, j) + "' is empty");
    }
  }
}

ChiSquare chi_square(const ContingencyTable& t, bool yates) {
  t.validate();
  const double n = static_cast<double>(t.total());
  std::vector<double> row_sum(t.rows(), 0.0), col_sum(t.cols(), 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      row_sum[i] += static_cast<double>(t.counts[i][j]);
      col_sum[j] += static_cast<double>(t.counts[i][j]);
    }
  }
  ChiSquare out;
  out.dof = static_cast<int>((t.rows() - 1) * (t.cols() - 1));
  const bool correct = yates && out.dof == 1;
  double chi2 = 0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      double e = row_sum[i] * col_sum[j] / n;
      double diff = std::abs(static_cast<double>(t.counts[i][j]) - e);
      if (correct) diff = std::max(diff - 0.5, 0.0);
      chi2 += diff * diff / e;
    }
  }
  out.chi2 = chi2;
  out.p = chi2_sf(chi2, out.dof);
  return out;
}

double cramers_v(double chi2, long n, std::size_t r, std::size_t c) {
  if (n <= 0 || r < 2 || c < 2) throw ValidationError("cramers_v: need n > 0 and a 2x2 or larger table");
  double k = static_cast<double>(std::min(r, c) - 1);
  double v = std::sqrt(std::max(chi2, 0.0) / (static_cast<double>(n) * k));
  return std::clamp(v, 0.0, 1.0);
}

std::string_view strength_name(Strength s) {
  switch (s) {
    case Strength::None:
      return "none";
    case Strength::Low:
      return "low";
    case Strength::Moderate:
      return "moderate";
    case Strength::High:
      return "high";
  }
  return "none";
}

Strength classify_strength(double v) {
  if (v >= 0.5) return Strength::High;
  if (v >= 0.3) return Strength::Moderate;
  if (v >= 0.1) return Strength::Low;
  return Strength::None;
}

Binning bin_feature(std::span<const double> values, int max_bins) {
  if (values.size() < 2) throw ValidationError("bin_feature: need at least two values");
  if (max_bins < 1) throw ValidationError("bin_feature: max_bins must be >= 1");
  Binning out;
  out.categories.assign(values.size(), 0);
  const bool constant =
      std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
  if (constant) {
    out.degenerate = true;
    return out;
  }
  std::size_t zeros = static_cast<std::size_t>(std::count(values.begin(), values.end(), 0.0));
  if (static_cast<double>(zeros) > 0.9 * static_cast<double>(values.size())) {
    out.binary = true;
    out.bins = 1;
    for (std::size_t i = 0; i < values.size(); ++i) out.categories[i] = values[i] != 0.0;
    return out;
  }
  std::vector<double> nz;
  for (double v : values) {
    if (v != 0.0) nz.push_back(v);
  }
  std::sort(nz.begin(), nz.end());
  const std::size_t m = nz.size();
  std::vector<double> cuts;  // lower bounds of bins 2..k
  int k = 1;
  for (int cand = std::min<int>(max_bins, static_cast<int>(m)); cand >= 2; --cand) {
    std::vector<double> c;
    bool ok = true;
    std::size_t prev = 0;
    for (int i = 1; i < cand && ok; ++i) {
      std::size_t p = (2 * static_cast<std::size_t>(i) * m + static_cast<std::size_t>(cand)) /
                      (2 * static_cast<std::size_t>(cand));
      ok = p > prev && p < m && nz[p - 1] != nz[p];
      prev = p;
      c.push_back(nz[p]);
    }
    if (ok) {
      k = cand;
      cuts = std::move(c);
      break;
    }
  }
  out.bins = k;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0) continue;
    out.categories[i] =
        1 + static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), values[i]) - cuts.begin());
  }
  if (zeros == 0 && k == 1) out.degenerate = true;
  return out;
}

ContingencyTable build_table(std::span<const int> categories, std::span<const int> labels) {
  if (categories.size() != labels.size()) throw ValidationError("build_table: length mismatch");
  int max_cat = 0;
  for (int c : categories) max_cat = std::max(max_cat, c);
  std::vector<std::vector<long>> counts(static_cast<std::size_t>(max_cat) + 1,
                                        std::vector<long>(2, 0));
  for (std::size_t i = 0; i < categories.size(); ++i) {
    ++counts[static_cast<std::size_t>(categories[i])][labels[i] ? 1 : 0];
  }
  ContingencyTable t;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c][0] + counts[c][1] == 0) continue;
    t.counts.push_back(counts[c]);
    t.row_labels.push_back(std::to_string(c));
  }
  t.col_labels = {"0", "1"};
  return t;
}

namespace {

bool low_expected(const ContingencyTable& t) {
  const double n = static_cast<double>(t.total());
  for (std::size_t i = 0; i < t.rows(); ++i) {
    double rs = 0;
    for (long v : t.counts[i]) rs += static_cast<double>(v);
    for (std::size_t j = 0; j < t.cols(); ++j) {
      double cs = 0;
      for (const auto& r : t.counts) cs += static_cast<double>(r[j]);
      if (rs * cs / n < 5.0) return true;
    }
  }
  return false;
}

}  // namespace

std::size_t AssociationReport::significant_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.significant; }));
}

std::size_t AssociationReport::band_count(Strength s) const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [&](const auto& e) { return e.strength && *e.strength == s; }));
}

int default_max_bins(std::string_view analyzer) {
  if (analyzer == "metrics") return 7;
  if (analyzer == "lint_style") return 5;
  return 4;
}

AssociationReport association_report(const EmbeddingMatrix& m, int max_bins, double alpha) {
  m.validate();
  if (m.rows() == 0) throw ValidationError("association_report: empty embedding " + m.analyzer);
  const bool both = std::count(m.labels.begin(), m.labels.end(), 1) > 0 &&
                    std::count(m.labels.begin(), m.labels.end(), 0) > 0;
  if (!both) throw ValidationError("association_report: labels of " + m.analyzer + " are single-class");
  AssociationReport report;
  report.analyzer = m.analyzer;
  for (std::size_t c = 0; c < m.feature_names.size(); ++c) {
    const std::string& name = m.feature_names[c];
    std::vector<double> col = m.values.column(c);
    if (col.size() < 2) {
      report.skipped.push_back({name, "fewer than two rows"});
      continue;
    }
    Binning b = bin_feature(col, max_bins);
    if (b.degenerate) {
      report.skipped.push_back({name, "constant feature"});
      continue;
    }
    ContingencyTable t = build_table(b.categories, m.labels);
    int cap = b.bins;
    while (low_expected(t) && t.rows() > 2 && !b.binary && cap > 1) {
      --cap;
      b = bin_feature(col, cap);
      t = build_table(b.categories, m.labels);
    }
    if (t.rows() < 2) {
      report.skipped.push_back({name, "single category after binning"});
      continue;
    }
    FeatureAssociation a;
    a.feature = name;
    ChiSquare cs = chi_square(t);
    a.chi2 = cs.chi2;
    a.p = cs.p;
    a.dof = cs.dof;
    a.categories = static_cast<int>(t.rows());
    a.low_expected = low_expected(t);
    a.significant = cs.p < alpha;
    if (a.significant) {
      a.cramers_v = cramers_v(cs.chi2, t.total(), t.rows(), t.cols());
      a.strength = classify_strength(*a.cramers_v);
    }
    report.entries.push_back(std::move(a));
  }
  return report;
}

std::string format_report(const AssociationReport& r) {
  std::string out = csv::format_row({"feature", "chi2", "p", "dof", "significant", "cramers_v", "strength"});
  for (const auto& e : r.entries) {
    out += csv::format_row({e.feature, csv::format_number(e.chi2), csv::format_number(e.p),
                            std::to_string(e.dof), e.significant ? "true" : "false",
                            e.cramers_v ? csv::format_number(*e.cramers_v) : "",
                            e.strength ? std::string(strength_name(*e.strength)) : ""});
  }
  return out;
}

std::string format_summary(const std::vector<AssociationReport>& reports) {
  std::string out = csv::format_row(
      {"embedding", "features", "significant", "none", "low", "moderate", "high", "skipped"});
  for (const auto& r : reports) {
    out += csv::format_row(
        {r.analyzer, std::to_string(r.entries.size()), std::to_string(r.significant_count()),
         std::to_string(r.band_count(Strength::None)), std::to_string(r.band_count(Strength::Low)),
         std::to_string(r.band_count(Strength::Moderate)),
         std::to_string(r.band_count(Strength::High)), std::to_string(r.skipped.size())});
  }
  return out;
}

}  // namespace vfix::stats
