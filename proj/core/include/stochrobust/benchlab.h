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

#ifndef STOCHROBUST_BENCHLAB_H_
#define STOCHROBUST_BENCHLAB_H_

#include <cstdint>
#include <vector>

#include "stochrobust/game_core.h"

namespace stochrobust {

// Two states s0, s1. In g1 both loop; in g2 s0 leaves for the absorbing s1
// with probability eps. Priorities: s0 -> 1, s1 -> 2. Requires 0 < eps < 1.
struct Example1Instance {
  MarkovChain g1;
  MarkovChain g2;
  ParityObjective parity;
};
Example1Instance Example1Family(double eps);

// Walk on s0..s2n with absorbing ends; interior states step left with
// probability 1/2 + eps. The parity objective (s0 -> 0, others -> 1) makes
// the value the probability of ending in s0. Requires n >= 1, 0 <= eps < 1/2.
struct Example2Instance {
  MarkovChain chain;
  ParityObjective parity;
  std::vector<bool> target;  // {s0}
  int start = 0;             // s_n
};
Example2Instance Example2Line(int n, double eps);

// r^n / (r^n + 1) with r = (1/2 + eps) / (1/2 - eps).
double Example2ExactValue(int n, double eps);

// Two-state chains with both rows (1 - k eps, k eps) for k = 1, 2, 5.
// Requires 0 < eps < 1/7.
struct RatioExampleInstance {
  MarkovChain g1;
  MarkovChain g2;
  MarkovChain g5;
};
RatioExampleInstance RatioExampleChains(double eps);

struct InstanceRecipe {
  StructureKind kind = StructureKind::kMarkovChain;
  int states = 4;
  int max_moves = 2;      // per player with choices
  int max_support = 3;    // successors per distribution
  int max_priority = 3;
  double eta_floor = 0.05;  // every positive probability is at least this
  std::uint64_t seed = 0;
};

struct RandomInstance {
  GameStructure game;
  ParityObjective parity;  // priorities in [0, max_priority]
  DiscountSpec discount;   // lambda in [0.1, 0.9], reward in [0, 1]
};

// Deterministic in the recipe. Player 1 moves are named a0, a1, ...,
// player 2 moves b0, b1, ...; a player without choices plays kNoMove.
// Chains come out in the FromChain form.
RandomInstance MakeRandomInstance(const InstanceRecipe& recipe);

}  // namespace stochrobust

#endif  // STOCHROBUST_BENCHLAB_H_
