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

#ifndef STOCHROBUST_MATRIX_GAME_H_
#define STOCHROBUST_MATRIX_GAME_H_

#include <vector>

namespace stochrobust {

// Zero-sum one-shot game; payoff[i][j] goes to the row player.
struct MatrixGame {
  std::vector<std::vector<double>> payoff;
};

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> column_strategy;
  // What each returned strategy guarantees; value lies between them.
  double maximin = 0.0;
  double minimax = 0.0;
};

// Simplex with Bland's rule on the shifted value LP. The column strategy is
// the primal solution, the row strategy is read from the duals.
MatrixGameSolution SolveMatrixGame(const MatrixGame& game);

}  // namespace stochrobust

#endif  // STOCHROBUST_MATRIX_GAME_H_
