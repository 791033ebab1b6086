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

#ifndef STOCHROBUST_DECISION_SOLVER_H_
#define STOCHROBUST_DECISION_SOLVER_H_

#include <variant>
#include <vector>

#include "stochrobust/game_core.h"

namespace stochrobust {

// Strategy-space size accepted by the enumeration oracles.
inline constexpr double kEnumerationBudget = 1e6;
// Value-iteration tolerance for parity reachability before exact polishing.
inline constexpr double kParityTolerance = 1e-10;

struct SolveResult {
  ValueVector values;
  // Pure memoryless strategy of the player with choices: player 1 maximizes,
  // player 2 minimizes the player-1 objective.
  MemorylessStrategy strategy;
  int iterations = 0;     // value-iteration sweeps
  int improvements = 0;   // exact policy-improvement rounds
  double residual = 0.0;  // last sup-norm step of value iteration
  double tolerance = 0.0; // guaranteed bound on |values - true values|
};

// The player that has choices in an MDP; player 1 for a Markov chain.
// Throws PreconditionError when both players have choices somewhere.
Player Controller(const GameStructure& mdp);

// One application of the optimal Bellman operator for the controller.
ValueVector BellmanMdp(const GameStructure& mdp, const DiscountSpec& spec,
                       const ValueVector& v);

// Value iteration stopped once a step is at most
// tol (1 - lambda_max) / (2 lambda_max), then exact policy improvement on
// the greedy strategy.
SolveResult MultidiscountedValueMdp(const GameStructure& mdp,
                                    const DiscountSpec& spec, double tol);

struct MaximalEndComponent {
  std::vector<int> states;               // ascending
  std::vector<std::vector<int>> moves;   // per listed state, allowed move ids
};

std::vector<MaximalEndComponent> MecDecomposition(const GameStructure& mdp);

// Player-2 MDPs are solved through the complemented objective
// (priorities shifted by one) with the minimizer as maximizer.
SolveResult ParityValueMdp(const GameStructure& mdp,
                           const ParityObjective& parity);

using Objective = std::variant<ParityObjective, DiscountSpec>;

// Per-state optimum over all pure memoryless strategies of the controller,
// each evaluated exactly on the induced chain. Throws BudgetExceededError
// when the strategy space exceeds kEnumerationBudget.
ValueVector StrategyEnumerationOracle(const GameStructure& mdp,
                                      const Objective& objective);

// Exact value of a fixed strategy profile that leaves a Markov chain.
ValueVector EvaluateChain(const MarkovChain& chain,
                          const Objective& objective);

}  // namespace stochrobust

#endif  // STOCHROBUST_DECISION_SOLVER_H_
