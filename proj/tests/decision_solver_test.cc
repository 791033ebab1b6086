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

#include "stochrobust/decision_solver.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "stochrobust/benchlab.h"
#include "stochrobust/chain_solver.h"
#include "stochrobust/errors.h"
#include "stochrobust/random.h"
#include "stochrobust/robustness.h"

namespace stochrobust {
namespace {

RandomInstance RandomMdp(std::uint64_t seed, int max_states = 5,
                         int max_moves = 2, StructureKind kind =
                                                StructureKind::kMdpPlayer1) {
  InstanceRecipe recipe;
  recipe.kind = kind;
  recipe.states = 1 + static_cast<int>(seed % max_states);
  recipe.max_moves = max_moves;
  recipe.seed = seed;
  return MakeRandomInstance(recipe);
}

double MaxDiff(const ValueVector& a, const ValueVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// s0: "stay" loops, "go" moves to s1; s1 absorbing.
GameStructure StayOrGo() {
  GameStructure g;
  g.states = {"s0", "s1"};
  g.moves = {"stay", "go", "_"};
  g.gamma1 = {{0, 1}, {2}};
  g.gamma2 = {{2}, {2}};
  g.delta = {{{1.0, 0.0}, {0.0, 1.0}}, {{0.0, 1.0}}};
  return g;
}

GameStructure SwapPlayers(GameStructure g) {
  std::swap(g.gamma1, g.gamma2);
  return g;
}

TEST(ControllerTest, Kinds) {
  EXPECT_EQ(Controller(StayOrGo()), Player::kOne);
  EXPECT_EQ(Controller(SwapPlayers(StayOrGo())), Player::kTwo);
  EXPECT_EQ(Controller(FromChain(Example1Family(0.1).g1)), Player::kOne);
  InstanceRecipe recipe;
  recipe.kind = StructureKind::kConcurrent;
  recipe.seed = 1;
  GameStructure g = MakeRandomInstance(recipe).game;
  ASSERT_EQ(Classify(g), StructureKind::kConcurrent);
  EXPECT_THROW(Controller(g), PreconditionError);
}

TEST(MultidiscountedMdpTest, SingleActionIsChainValue) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    InstanceRecipe recipe;
    recipe.states = 5;
    recipe.seed = seed;
    RandomInstance inst = MakeRandomInstance(recipe);
    SolveResult r = MultidiscountedValueMdp(inst.game, inst.discount, 1e-10);
    EXPECT_LE(MaxDiff(r.values,
                      MultidiscountedValues(ToChain(inst.game), inst.discount)),
              1e-10);
  }
}

TEST(MultidiscountedMdpTest, UnitRewardIsOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomInstance inst = RandomMdp(seed);
    std::fill(inst.discount.reward.begin(), inst.discount.reward.end(), 1.0);
    for (double v : MultidiscountedValueMdp(inst.game, inst.discount, 1e-10).values) {
      EXPECT_NEAR(v, 1.0, 1e-12);
    }
  }
}

TEST(MultidiscountedMdpTest, MatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (StructureKind kind :
         {StructureKind::kMdpPlayer1, StructureKind::kMdpPlayer2}) {
      RandomInstance inst = RandomMdp(seed, 5, 3, kind);
      SolveResult r = MultidiscountedValueMdp(inst.game, inst.discount, 1e-8);
      ValueVector oracle = StrategyEnumerationOracle(inst.game, inst.discount);
      EXPECT_LE(MaxDiff(r.values, oracle), 1e-6) << "seed " << seed;
      EXPECT_LE(MaxDiff(r.values, oracle), r.tolerance + 1e-12);
    }
  }
}

// The returned strategy achieves the returned values.
TEST(MultidiscountedMdpTest, StrategyIsConsistent) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstance inst = RandomMdp(seed, 5, 3);
    const double tol = 1e-8;
    SolveResult r = MultidiscountedValueMdp(inst.game, inst.discount, tol);
    EXPECT_TRUE(ValidateStrategy(inst.game, r.strategy).empty());
    EXPECT_TRUE(IsPure(r.strategy));
    ValueVector induced = MultidiscountedValues(
        ToChain(Restrict(inst.game, r.strategy)), inst.discount);
    EXPECT_LE(MaxDiff(induced, r.values), 10 * tol);
  }
}

TEST(MultidiscountedMdpTest, RejectsBadInput) {
  RandomInstance inst = RandomMdp(4);
  EXPECT_THROW(MultidiscountedValueMdp(inst.game, inst.discount, 0.0),
               PreconditionError);
  DiscountSpec bad = inst.discount;
  bad.lambda[0] = 1.0;
  EXPECT_THROW(MultidiscountedValueMdp(inst.game, bad, 1e-8), PreconditionError);
}

TEST(BellmanTest, Monotone) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstance inst = RandomMdp(seed, 5, 3);
    int n = inst.game.num_states();
    ValueVector v(n), w(n);
    for (int s = 0; s < n; ++s) {
      v[s] = rng.Uniform();
      w[s] = v[s] + rng.Uniform() * (1 - v[s]);
    }
    ValueVector bv = BellmanMdp(inst.game, inst.discount, v);
    ValueVector bw = BellmanMdp(inst.game, inst.discount, w);
    for (int s = 0; s < n; ++s) EXPECT_LE(bv[s], bw[s] + 1e-15);
  }
}

TEST(BellmanTest, StayOrGoByHand) {
  DiscountSpec spec{{0.5, 0.5}, {0.2, 1.0}};
  // stay: 0.5*0.2 + 0.5*v0; go: 0.5*0.2 + 0.5*v1.
  ValueVector b = BellmanMdp(StayOrGo(), spec, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(b[0], 0.6);
  EXPECT_DOUBLE_EQ(b[1], 1.0);
  b = BellmanMdp(SwapPlayers(StayOrGo()), spec, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(b[0], 0.1);
}

TEST(MecTest, AbsorbingStateIsSingleton) {
  auto mecs = MecDecomposition(StayOrGo());
  ASSERT_EQ(mecs.size(), 2u);
  // {s0} with only "stay", {s1}.
  std::sort(mecs.begin(), mecs.end(),
            [](const auto& a, const auto& b) { return a.states < b.states; });
  EXPECT_EQ(mecs[0].states, std::vector<int>{0});
  EXPECT_EQ(mecs[0].moves, (std::vector<std::vector<int>>{{0}}));
  EXPECT_EQ(mecs[1].states, std::vector<int>{1});
}

TEST(MecTest, DeterministicCycle) {
  MarkovChain cycle{{"a", "b", "c"}, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}};
  auto mecs = MecDecomposition(FromChain(cycle));
  ASSERT_EQ(mecs.size(), 1u);
  EXPECT_EQ(mecs[0].states, (std::vector<int>{0, 1, 2}));
}

TEST(MecTest, MatchesSubsetEnumeration) {
  auto key = [](const std::vector<int>& states,
                const std::vector<std::vector<int>>& moves) {
    std::vector<std::vector<int>> sorted = moves;
    for (auto& m : sorted) std::sort(m.begin(), m.end());
    return std::make_pair(states, sorted);
  };
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomInstance inst = RandomMdp(seed, 5, 3,
                                    seed % 2 ? StructureKind::kMdpPlayer2
                                             : StructureKind::kMdpPlayer1);
    std::vector<std::pair<std::vector<int>, std::vector<std::vector<int>>>> got,
        want;
    for (const auto& m : MecDecomposition(inst.game)) got.push_back(key(m.states, m.moves));
    for (const auto& m : testing::BruteForceMecs(inst.game)) {
      want.push_back(key(m.states, m.moves));
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << "seed " << seed;
  }
}

TEST(ParityMdpTest, ExampleOneLeakyChain) {
  auto ex1 = Example1Family(0.1);
  SolveResult r = ParityValueMdp(FromChain(ex1.g2), ex1.parity);
  EXPECT_EQ(r.values[0], 1.0);
}

TEST(ParityMdpTest, AllEvenIsOne) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomInstance inst = RandomMdp(seed);
    for (int& p : inst.parity.priority) p = 2 * (p / 2);
    for (double v : ParityValueMdp(inst.game, inst.parity).values) EXPECT_EQ(v, 1.0);
  }
}

TEST(ParityMdpTest, StayOrGo) {
  // Staying visits priority 1 forever; going reaches priority 0.
  ParityObjective p{{1, 0}};
  SolveResult r = ParityValueMdp(StayOrGo(), p);
  EXPECT_EQ(r.values, (ValueVector{1.0, 1.0}));
  EXPECT_EQ(r.strategy.assignment[0][0].move, 1);
  // The minimizer stays.
  r = ParityValueMdp(SwapPlayers(StayOrGo()), p);
  EXPECT_EQ(r.values, (ValueVector{0.0, 1.0}));
}

TEST(ParityMdpTest, MatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (StructureKind kind :
         {StructureKind::kMdpPlayer1, StructureKind::kMdpPlayer2}) {
      RandomInstance inst = RandomMdp(seed, 5, 2, kind);
      SolveResult r = ParityValueMdp(inst.game, inst.parity);
      EXPECT_LE(MaxDiff(r.values, StrategyEnumerationOracle(inst.game, inst.parity)),
                1e-8)
          << "seed " << seed;
      ValueVector induced =
          ParityValues(ToChain(Restrict(inst.game, r.strategy)), inst.parity);
      EXPECT_LE(MaxDiff(induced, r.values), 1e-8) << "seed " << seed;
    }
  }
}

// Minimizing the parity objective is maximizing its complement.
TEST(ParityMdpTest, Duality) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstance inst = RandomMdp(seed, 5, 2, StructureKind::kMdpPlayer2);
    ParityObjective shifted = inst.parity;
    for (int& p : shifted.priority) ++p;
    ValueVector minimized = ParityValueMdp(inst.game, inst.parity).values;
    ValueVector complement =
        ParityValueMdp(SwapPlayers(inst.game), shifted).values;
    for (std::size_t s = 0; s < minimized.size(); ++s) {
      EXPECT_NEAR(minimized[s], 1.0 - complement[s], 1e-9);
    }
  }
}

TEST(EnumerationTest, DominatedAction) {
  // Four pure strategies; going is better whenever reward(s1) > reward(s0).
  DiscountSpec spec{{0.5, 0.5}, {0.2, 1.0}};
  ValueVector v = StrategyEnumerationOracle(StayOrGo(), spec);
  // go: v0 = 0.5*0.2 + 0.5*1 = 0.6.
  EXPECT_NEAR(v[0], 0.6, 1e-15);
  EXPECT_NEAR(v[1], 1.0, 1e-15);
}

TEST(EnumerationTest, SingleActionIsChainValue) {
  auto ex1 = Example1Family(0.3);
  EXPECT_EQ(StrategyEnumerationOracle(FromChain(ex1.g2), ex1.parity),
            ParityValues(ex1.g2, ex1.parity));
}

TEST(EnumerationTest, Budget) {
  InstanceRecipe recipe;
  recipe.kind = StructureKind::kMdpPlayer1;
  recipe.states = 24;
  recipe.max_moves = 2;
  recipe.seed = 1;
  RandomInstance inst = MakeRandomInstance(recipe);
  // Force two moves everywhere so the count is 2^24.
  for (int s = 0; s < 24; ++s) {
    if (inst.game.gamma1[s].size() == 1) {
      inst.game.gamma1[s].push_back(inst.game.gamma1[s][0] == 0 ? 1 : 0);
      inst.game.delta[s].push_back(inst.game.delta[s][0]);
    }
  }
  ASSERT_TRUE(ValidateStructure(inst.game).empty());
  EXPECT_THROW(StrategyEnumerationOracle(inst.game, inst.parity),
               BudgetExceededError);
}

TEST(EvaluateChainTest, UsesStableSolverNearOne) {
  MarkovChain flip{{"s", "t"}, {{0.0, 1.0}, {1.0, 0.0}}};
  double l = 1.0 - std::ldexp(1.0, -40);
  ValueVector v = EvaluateChain(flip, DiscountSpec{{l, l}, {0.0, 1.0}});
  EXPECT_NEAR(v[0], l / (1 + l), 1e-14);
}

// MDP values move by at most the perturbation bound.
TEST(MdpBoundTest, ValuesMoveLessThanBound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstance inst = RandomMdp(seed, 5, 2);
    double eps = std::min(0.05, 0.9 * MinPositiveProbability(inst.game)) *
                 ToUnit(KeyedBits({seed, 2}));
    GameStructure h = Perturb(inst.game, eps, seed);
    double bound = PerturbationBound(inst.game.num_states(),
                                     RatioDistance(inst.game, h));
    EXPECT_LE(MaxDiff(ParityValueMdp(inst.game, inst.parity).values,
                      ParityValueMdp(h, inst.parity).values),
              bound + 1e-8);
    EXPECT_LE(MaxDiff(MultidiscountedValueMdp(inst.game, inst.discount, 1e-10).values,
                      MultidiscountedValueMdp(h, inst.discount, 1e-10).values),
              bound + 1e-8);
  }
}

}  // namespace
}  // namespace stochrobust
