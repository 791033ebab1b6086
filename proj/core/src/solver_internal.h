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

#ifndef STOCHROBUST_SRC_SOLVER_INTERNAL_H_
#define STOCHROBUST_SRC_SOLVER_INTERNAL_H_

#include <vector>

#include "stochrobust/game_core.h"

namespace stochrobust::internal {

// Discounting expressed by stop probabilities 1 - lambda, which stay exact
// when lambda is too close to 1 to be represented.
struct StopSpec {
  std::vector<double> stop;
  std::vector<double> reward;
};

StopSpec ToStopSpec(const DiscountSpec& spec);

// (1 - lambda) r + lambda e, rearranged so a tiny stop loses nothing.
inline double StepValue(double stop, double reward, double expect) {
  return expect + stop * (reward - expect);
}

// Fixed point of v = StepValue(stop, reward, P v) by subtraction-free state
// elimination. Requires every stop probability in (0,1].
ValueVector StoppingValues(const MarkovChain& chain, const StopSpec& spec);

// Action-indexed view of a one-player structure. Action a at state s is the
// a-th move of the controller in gamma_controller(s).
struct MdpView {
  const GameStructure* game = nullptr;
  Player controller = Player::kOne;

  int num_states() const { return game->num_states(); }
  int num_actions(int s) const { return game->num_moves(s, controller); }
  const Distribution& row(int s, int a) const {
    return controller == Player::kOne ? game->transition(s, a, 0)
                                      : game->transition(s, 0, a);
  }
  int move_id(int s, int a) const {
    return controller == Player::kOne ? game->gamma1[s][a]
                                      : game->gamma2[s][a];
  }
  double Expect(int s, int a, const std::vector<double>& v) const {
    const Distribution& d = row(s, a);
    double acc = 0.0;
    for (std::size_t t = 0; t < d.size(); ++t) acc += d[t] * v[t];
    return acc;
  }
};

// Pure strategy given by action positions, as a MemorylessStrategy.
MemorylessStrategy ToStrategy(const MdpView& view,
                              const std::vector<int>& actions);

// Markov chain induced by fixing the controller's actions.
MarkovChain InducedChain(const MdpView& view,
                           const std::vector<int>& actions);

// Howard policy iteration from `actions`, with exact subtraction-free
// evaluation, for a maximizer (sign 1) or minimizer (sign -1). Switches only
// on strict improvement, lowest action index first. Returns the values of
// the final strategy, which is left in `actions`.
ValueVector PolicyIterationDiscounted(const MdpView& view,
                                      const StopSpec& spec, double sign,
                                      std::vector<int>* actions,
                                      int* rounds = nullptr);

}  // namespace stochrobust::internal

#endif  // STOCHROBUST_SRC_SOLVER_INTERNAL_H_
