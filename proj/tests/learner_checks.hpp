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

// Shared fixtures for learner tests and the acceptance binary.
#ifndef VFIX_TESTS_LEARNER_CHECKS_HPP_
#define VFIX_TESTS_LEARNER_CHECKS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>

#include "vfix/common.hpp"
#include "vfix/ml/learners.hpp"
#include "vfix/random.hpp"

namespace vfix::testing {

// Two Gaussian blobs; class 1 is shifted by `shift` on every feature.
inline std::pair<Matrix, Labels> blobs(std::size_t n, std::size_t d, double shift,
                                       std::uint64_t seed) {
  Rng rng(seed);
  Matrix x(n, d);
  Labels y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = i % 2;
    for (std::size_t j = 0; j < d; ++j) x(i, j) = rng.normal() + (y[i] ? shift : 0.0);
  }
  return {x, y};
}

using Objective =
    std::function<double(const std::vector<double>&, std::vector<double>*)>;

// Relative error |analytic - numeric| / max(|analytic|, |numeric|) of the
// whole gradient vector, numeric by central differences.
inline double gradient_error(const Objective& f, const std::vector<double>& theta) {
  std::vector<double> grad;
  f(theta, &grad);
  double diff = 0, na = 0, nn = 0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(theta[j]));
    auto plus = theta, minus = theta;
    plus[j] += h;
    minus[j] -= h;
    double numeric = (f(plus, nullptr) - f(minus, nullptr)) / (2 * h);
    diff += (grad[j] - numeric) * (grad[j] - numeric);
    na += grad[j] * grad[j];
    nn += numeric * numeric;
  }
  double scale = std::sqrt(std::max({na, nn, 1e-300}));
  return std::sqrt(diff) / scale;
}

}  // namespace vfix::testing

#endif  // VFIX_TESTS_LEARNER_CHECKS_HPP_
