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

#ifndef STOCHROBUST_CHAIN_SOLVER_H_
#define STOCHROBUST_CHAIN_SOLVER_H_

#include <vector>

#include "stochrobust/game_core.h"

namespace stochrobust {

// Discount factors above this make (I - Lambda P) too ill-conditioned for the
// dense solves below. StableDiscountedValues has no such limit.
inline constexpr double kMaxChainDiscount = 1.0 - 1e-6;
// Largest exit set accepted by the Freidlin-Wentzell evaluator.
inline constexpr int kMaxFreidlinWentzellSize = 8;
// Cap on the number of functions C -> S the evaluator may visit.
inline constexpr double kFreidlinWentzellBudget = 5e7;

struct BsccDecomposition {
  // Closed, strongly connected classes, ordered by their smallest state.
  std::vector<std::vector<int>> bottom;
  std::vector<int> transient;
};

BsccDecomposition DecomposeBottomSccs(const MarkovChain& chain);

// Probability of ever entering `target`. Exact zeros come from a backward
// graph search, so the remaining system is nonsingular.
ValueVector ReachabilityValues(const MarkovChain& chain,
                               const std::vector<bool>& target);

// Probability that the minimum priority seen infinitely often is even.
ValueVector ParityValues(const MarkovChain& chain,
                         const ParityObjective& parity);

// mt[s0][s] is the normalized discounted occupancy of s from s0. Only
// spec.lambda is read; every lambda must be at most kMaxChainDiscount.
std::vector<std::vector<double>> MeanDiscountedTime(const MarkovChain& chain,
                                                    const DiscountSpec& spec);

// Fixed point of v = (1 - lambda) r + lambda P v.
ValueVector MultidiscountedValues(const MarkovChain& chain,
                                  const DiscountSpec& spec);

// Same fixed point by subtraction-free state elimination. Accurate for
// discounts arbitrarily close to 1, at the cost of O(n^3) work per call.
// Only requires lambda in (0,1).
ValueVector StableDiscountedValues(const MarkovChain& chain,
                                   const DiscountSpec& spec);

// Appends one absorbing copy per state; state s moves to its copy with
// probability 1 - lambda(s) and follows lambda(s) * delta(s) otherwise. The
// copy of states[i] is states[n + i].
MarkovChain AugmentedChain(const MarkovChain& chain, const DiscountSpec& spec);

struct ExitQuery {
  std::vector<int> inside;  // the set C
  int start = 0;            // initial state, a member of C
};

enum class ExitMethod { kLinear, kFreidlinWentzell };

// Distribution of the first state outside C, as a vector over all states
// (zero on C). Throws PreconditionError when C is all of S, the start is not
// in C, or some state of C cannot leave C.
Distribution ExitDistribution(const MarkovChain& chain, const ExitQuery& query,
                              ExitMethod method);

}  // namespace stochrobust

#endif  // STOCHROBUST_CHAIN_SOLVER_H_
