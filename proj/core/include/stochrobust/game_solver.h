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

#ifndef STOCHROBUST_GAME_SOLVER_H_
#define STOCHROBUST_GAME_SOLVER_H_

#include <vector>

#include "stochrobust/game_core.h"

namespace stochrobust {

enum class ConcurrentMethod {
  // Shapley value iteration with the contraction stopping rule.
  kShapley,
  // Hoffman-Karp: player-1 matrix-game improvement against exact player-2
  // best responses. Usable for discounts very close to 1.
  kStrategyIteration,
};

struct ConcurrentResult {
  ValueVector values;
  MemorylessStrategy player1;
  MemorylessStrategy player2;
  // What player1 guarantees against every reply and what player2 concedes
  // against every reply; values lies between them up to the tolerance.
  ValueVector lower;
  ValueVector upper;
  std::vector<double> residuals;  // sup-norm step per iteration
  int iterations = 0;
  bool converged = true;
  double tolerance = 0.0;
};

ConcurrentResult MultidiscountedValueConcurrent(
    const GameStructure& game, const DiscountSpec& spec, double tol,
    ConcurrentMethod method = ConcurrentMethod::kShapley);

enum class TurnBasedMethod { kImprovement, kEnumeration };

struct TurnBasedResult {
  ValueVector values;
  MemorylessStrategy player1;
  MemorylessStrategy player2;
  int iterations = 0;
  // Improvement got stuck or cycled and the enumeration answer was used.
  bool fell_back = false;
  // Enumeration only: max over states of |sup inf - inf sup|.
  double determinacy_gap = 0.0;
};

TurnBasedResult ParityValueTurnBased(const GameStructure& game,
                                     const ParityObjective& parity,
                                     TurnBasedMethod method);

// Nested discount ladder. Consecutive states of `order` with equal priority
// form one level; at rung k the states of level l get discount
// 1 - 2^-(k (l + 1)), so later levels approach 1 faster.
struct LimitSchedule {
  std::vector<int> order;
  int k_min = 4;
  int k_max = 12;

  // States by ascending priority, ties by declaration order.
  static LimitSchedule Default(const ParityObjective& parity);
};

// Reward 1 on even priorities, 0 on odd ones, discounts from rung k.
DiscountSpec LadderDiscounts(const LimitSchedule& schedule,
                             const ParityObjective& parity, int k);

inline constexpr double kRungStability = 1e-3;

struct RungRecord {
  int k = 0;
  ValueVector values;
  double max_change = 0.0;  // against the previous rung; 0 for the first
};

struct LimitApproximation {
  ValueVector values;
  std::vector<RungRecord> trace;
  bool converged = false;
};

// Walks the ladder until a rung moves no value by kRungStability (after at
// least three rungs) or k_max is reached; non-convergence is reported in the
// result, not thrown.
LimitApproximation ParityValueConcurrentApprox(const GameStructure& game,
                                               const ParityObjective& parity,
                                               const LimitSchedule& schedule);

}  // namespace stochrobust

#endif  // STOCHROBUST_GAME_SOLVER_H_
