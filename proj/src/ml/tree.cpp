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

#include "vfix/ml/tree.hpp"

#include <algorithm>
#include <numeric>

namespace vfix::ml {

int Tree::leaf_index(std::span<const double> x) const {
  int i = 0;
  while (!nodes[static_cast<std::size_t>(i)].leaf()) {
    const TreeNode& n = nodes[static_cast<std::size_t>(i)];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return i;
}

namespace {

struct Stats {
  double w = 0, s = 0, q = 0;
  std::size_t n = 0;

  void add(double weight, double t) {
    w += weight;
    s += weight * t;
    q += weight * t * t;
    ++n;
  }
  // Weighted sum of squared deviations.
  double sse() const { return w > 0 ? std::max(q - s * s / w, 0.0) : 0.0; }
};

class Builder {
 public:
  Builder(const Matrix& x, std::span<const double> t, std::span<const double> w,
          const TreeOptions& o, Rng* rng, std::vector<double>& imp)
      : x_(x), t_(t), w_(w), o_(o), rng_(rng), imp_(imp) {}

  Tree run() {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < x_.rows(); ++i) {
      if (w_[i] > 0) rows.push_back(i);
    }
    if (rows.empty()) throw ValidationError("tree: no samples with positive weight");
    grow(rows, 0);
    return std::move(tree_);
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0;
    double gain = 0;
  };

  std::vector<std::size_t> candidate_features() {
    std::vector<std::size_t> f(x_.cols());
    std::iota(f.begin(), f.end(), 0);
    if (o_.max_features > 0 && static_cast<std::size_t>(o_.max_features) < f.size()) {
      // Partial Fisher-Yates, then restore index order for tie-breaking.
      const auto k = static_cast<std::size_t>(o_.max_features);
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng_->below(f.size() - i));
        std::swap(f[i], f[j]);
      }
      f.resize(k);
      std::sort(f.begin(), f.end());
    }
    return f;
  }

  Split best_split(const std::vector<std::size_t>& rows, const Stats& total) {
    Split best;
    const double parent = total.sse();
    const auto min_leaf = static_cast<std::size_t>(std::max(1, o_.min_leaf));
    std::vector<std::size_t> order(rows);
    for (std::size_t f : candidate_features()) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double va = x_(a, f), vb = x_(b, f);
        return va < vb || (va == vb && a < b);
      });
      Stats left;
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        std::size_t r = order[i];
        left.add(w_[r], t_[r]);
        double v = x_(r, f), next = x_(order[i + 1], f);
        if (v == next) continue;
        if (left.n < min_leaf || order.size() - left.n < min_leaf) continue;
        Stats right{total.w - left.w, total.s - left.s, total.q - left.q, order.size() - left.n};
        double gain = parent - left.sse() - right.sse();
        if (gain > best.gain + 1e-12 * std::max(1.0, parent)) {
          best.feature = static_cast<int>(f);
          best.threshold = v + (next - v) / 2;
          if (best.threshold >= next) best.threshold = v;
          best.gain = gain;
        }
      }
    }
    return best;
  }

  int grow(const std::vector<std::size_t>& rows, int depth) {
    Stats total;
    for (std::size_t r : rows) total.add(w_[r], t_[r]);
    int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    tree_.nodes.back().value = total.w > 0 ? total.s / total.w : 0.0;

    bool can_split = (o_.max_depth <= 0 || depth < o_.max_depth) &&
                     rows.size() >= 2 * static_cast<std::size_t>(std::max(1, o_.min_leaf)) &&
                     total.sse() > 1e-14 * std::max(1.0, total.w);
    if (!can_split) return id;
    Split s = best_split(rows, total);
    if (s.feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (x_(r, static_cast<std::size_t>(s.feature)) <= s.threshold ? left : right).push_back(r);
    }
    imp_[static_cast<std::size_t>(s.feature)] += s.gain;
    int l = grow(left, depth + 1);
    int rt = grow(right, depth + 1);
    TreeNode& n = tree_.nodes[static_cast<std::size_t>(id)];
    n.feature = s.feature;
    n.threshold = s.threshold;
    n.left = l;
    n.right = rt;
    return id;
  }

  const Matrix& x_;
  std::span<const double> t_;
  std::span<const double> w_;
  const TreeOptions& o_;
  Rng* rng_;
  std::vector<double>& imp_;
  Tree tree_;
};

}  // namespace

Tree build_tree(const Matrix& x, std::span<const double> target, std::span<const double> weight,
                const TreeOptions& options, Rng* rng, std::vector<double>& importance) {
  if (target.size() != x.rows() || weight.size() != x.rows()) {
    throw ValidationError("tree: target/weight length mismatch");
  }
  if (options.max_features > 0 && !rng) throw ValidationError("tree: feature sampling needs an rng");
  importance.resize(x.cols(), 0.0);
  return Builder(x, target, weight, options, rng, importance).run();
}

}  // namespace vfix::ml
