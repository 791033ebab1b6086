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

#include "stochrobust/matrix_game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stochrobust/errors.h"

namespace stochrobust {
namespace {

constexpr double kPivotEpsilon = 1e-12;

void Guarantees(const std::vector<std::vector<double>>& a,
                MatrixGameSolution* out) {
  const std::size_t m = a.size(), n = a.front().size();
  out->maximin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += out->row_strategy[i] * a[i][j];
    out->maximin = std::min(out->maximin, acc);
  }
  out->minimax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += out->column_strategy[j] * a[i][j];
    }
    out->minimax = std::max(out->minimax, acc);
  }
  out->value = 0.5 * (out->maximin + out->minimax);
}

void Normalize(std::vector<double>* x) {
  double sum = 0.0;
  for (double& v : *x) {
    v = std::max(v, 0.0);
    sum += v;
  }
  for (double& v : *x) v /= sum;
}

}  // namespace

MatrixGameSolution SolveMatrixGame(const MatrixGame& game) {
  const auto& a = game.payoff;
  if (a.empty() || a.front().empty()) {
    throw PreconditionError("matrix game needs at least one row and column");
  }
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(a.front().size());
  double low = std::numeric_limits<double>::infinity();
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n) {
      throw PreconditionError("matrix game rows differ in length");
    }
    for (double x : row) {
      if (!std::isfinite(x)) throw PreconditionError("payoff is not finite");
      low = std::min(low, x);
    }
  }

  MatrixGameSolution out;
  out.row_strategy.assign(m, 0.0);
  out.column_strategy.assign(n, 0.0);
  if (m == 1 || n == 1) {
    // One player has no choice: the other best-responds purely.
    int bi = 0, bj = 0;
    if (m == 1) {
      for (int j = 1; j < n; ++j) {
        if (a[0][j] < a[0][bj]) bj = j;
      }
    } else {
      for (int i = 1; i < m; ++i) {
        if (a[i][0] > a[bi][0]) bi = i;
      }
    }
    out.row_strategy[bi] = 1.0;
    out.column_strategy[bj] = 1.0;
    Guarantees(a, &out);
    return out;
  }

  // max 1'y s.t. (A - low + 1) y <= 1, y >= 0. Tableau columns: y then slacks.
  const double shift = 1.0 - low;
  const int cols = n + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j] + shift;
    t[i][n + i] = 1.0;
    t[i][cols] = 1.0;
  }
  // z[j] = reduced cost c_B B^-1 A_j - c_j; optimal once all are >= 0.
  std::vector<double> z(cols + 1, 0.0);
  for (int j = 0; j < n; ++j) z[j] = -1.0;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const int max_pivots = 50 * (m + n) + 1000;
  for (int pivot = 0;; ++pivot) {
    if (pivot > max_pivots) throw InternalError("simplex did not terminate");
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (z[j] < -kPivotEpsilon) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= kPivotEpsilon) continue;
      double ratio = t[i][cols] / t[i][enter];
      if (ratio < best - kPivotEpsilon ||
          (ratio <= best + kPivotEpsilon && leave >= 0 &&
           basis[i] < basis[leave])) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    // Bounded: every column has a positive entry.
    if (leave < 0) throw InternalError("value LP is unbounded");
    const double p = t[leave][enter];
    for (double& x : t[leave]) x /= p;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double f = t[i][enter];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const double f = z[enter];
    for (int j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
    basis[leave] = enter;
  }

  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) out.column_strategy[basis[i]] = t[i][cols];
  }
  for (int i = 0; i < m; ++i) out.row_strategy[i] = z[n + i];
  Normalize(&out.column_strategy);
  Normalize(&out.row_strategy);
  Guarantees(a, &out);
  return out;
}

}  // namespace stochrobust
