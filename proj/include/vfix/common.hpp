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

#ifndef VFIX_COMMON_HPP_
#define VFIX_COMMON_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vfix {

// Input that violates a documented schema or precondition. The CLI maps this
// to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure while doing work on valid input (git, filesystem, numerics). The CLI
// maps this to exit code 2.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Named numeric features. Names are unique and values are finite.
struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;

  FeatureVector() = default;
  FeatureVector(std::vector<std::string> n, std::vector<double> v);

  static FeatureVector zeros(std::vector<std::string> names);

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }

  // Value of `name`, or 0 when the feature is absent.
  double get(const std::string& name) const;
  // Throws ValidationError when `name` is absent.
  double at(const std::string& name) const;
  void set(const std::string& name, double value);
  void push(std::string name, double value);

  bool operator==(const FeatureVector&) const = default;
};

// Dense row-major matrix of doubles used by the learning pipeline.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::vector<double> column(std::size_t c) const;

  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using Labels = std::vector<int>;

// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const Matrix& x, const char* what);

// Indices of `mask` that are true.
std::vector<std::size_t> mask_indices(const std::vector<bool>& mask);

}  // namespace vfix

#endif  // VFIX_COMMON_HPP_
