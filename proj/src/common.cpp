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

#include "vfix/common.hpp"

#include <cmath>
#include <unordered_set>

namespace vfix {

FeatureVector::FeatureVector(std::vector<std::string> n, std::vector<double> v)
    : names(std::move(n)), values(std::move(v)) {
  if (names.size() != values.size()) {
    throw ValidationError("feature vector: " + std::to_string(names.size()) +
                          " names but " + std::to_string(values.size()) + " values");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) {
      throw ValidationError("feature vector: duplicate feature name '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError("feature vector: non-finite value for '" + names[i] + "'");
    }
  }
}

FeatureVector FeatureVector::zeros(std::vector<std::string> names) {
  std::vector<double> values(names.size(), 0.0);
  return FeatureVector(std::move(names), std::move(values));
}

double FeatureVector::get(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  return 0.0;
}

double FeatureVector::at(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  throw ValidationError("feature vector: no feature named '" + name + "'");
}

void FeatureVector::set(const std::string& name, double value) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) {
      values[i] = value;
      return;
    }
  }
  push(name, value);
}

void FeatureVector::push(std::string name, double value) {
  names.push_back(std::move(name));
  values.push_back(value);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw ValidationError("matrix: row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " columns, expected " +
                            std::to_string(m.cols()));
    }
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto src = row(idx[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < idx.size(); ++j) out(r, j) = (*this)(r, idx[j]);
  }
  return out;
}

void require_finite(const Matrix& x, const char* what) {
  for (double v : x.data()) {
    if (!std::isfinite(v)) {
      throw ValidationError(std::string(what) + ": matrix contains NaN or infinite values");
    }
  }
}

std::vector<std::size_t> mask_indices(const std::vector<bool>& mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(i);
  }
  return out;
}

}  // namespace vfix
