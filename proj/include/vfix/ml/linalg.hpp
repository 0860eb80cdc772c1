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

#ifndef VFIX_ML_LINALG_HPP_
#define VFIX_ML_LINALG_HPP_

#include <optional>
#include <vector>

#include "vfix/common.hpp"

namespace vfix::ml {

// Solves A x = b for symmetric positive definite A via Cholesky. Returns
// nullopt when A is not positive definite.
std::optional<std::vector<double>> cholesky_solve(const Matrix& a, const std::vector<double>& b);

}  // namespace vfix::ml

#endif  // VFIX_ML_LINALG_HPP_
