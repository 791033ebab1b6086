// Copyright 2026 The stochrobust Authors
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

#include "linear.h"

#include <Eigen/Dense>
#include <cmath>

#include "stochrobust/errors.h"

namespace stochrobust::internal {

Rows SolveColumns(const Rows& a, const Rows& b_columns) {
  const Eigen::Index n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[i][j];
  }
  const Eigen::Index k = static_cast<Eigen::Index>(b_columns.size());
  Eigen::MatrixXd rhs(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) rhs(i, c) = b_columns[c][i];
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  // PartialPivLU does not report singularity; check the pivots.
  const auto& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(packed(i, i)) > 1e-300)) {
      throw InternalError("singular linear system");
    }
  }
  Eigen::MatrixXd x = lu.solve(rhs);
  Rows out(k, std::vector<double>(n));
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index i = 0; i < n; ++i) out[c][i] = x(i, c);
  }
  return out;
}

std::vector<double> Solve(const Rows& a, const std::vector<double>& b) {
  if (a.empty()) return {};
  return SolveColumns(a, {b}).front();
}

}  // namespace stochrobust::internal
