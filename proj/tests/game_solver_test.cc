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

#include "stochrobust/game_solver.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "stochrobust/benchlab.h"
#include "stochrobust/chain_solver.h"
#include "stochrobust/decision_solver.h"
#include "stochrobust/errors.h"
#include "stochrobust/random.h"
#include "stochrobust/robustness.h"

namespace stochrobust {
namespace {

RandomInstance Random(StructureKind kind, std::uint64_t seed, int max_states = 4) {
  InstanceRecipe recipe;
  recipe.kind = kind;
  recipe.states = 1 + static_cast<int>(seed % max_states);
  recipe.seed = seed;
  return MakeRandomInstance(recipe);
}

double MaxDiff(const ValueVector& a, const ValueVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// A game with one choice state that is neither turn-based nor an MDP. At
// "s" both players pick a move; matching sends play to "win", otherwise to
// "lose". Both targets are absorbing.
GameStructure MatchingPennies() {
  GameStructure g;
  g.states = {"s", "win", "lose"};
  g.moves = {"a", "b", "c", "d", "_"};
  g.gamma1 = {{0, 1}, {4}, {4}};
  g.gamma2 = {{2, 3}, {4}, {4}};
  Distribution win{0, 1, 0}, lose{0, 0, 1};
  g.delta = {{win, lose, lose, win}, {win}, {lose}};
  return g;
}

// Player 1 picks at "s" between a priority-2 self-loop trap and a
// priority-1 trap; player 2 owns the traps, with no real choice.
GameStructure TrapChoice() {
  GameStructure g;
  g.states = {"s", "even", "odd"};
  g.moves = {"to_even", "to_odd", "_"};
  g.gamma1 = {{0, 1}, {2}, {2}};
  g.gamma2 = {{2}, {2}, {2}};
  g.delta = {{{0, 1, 0}, {0, 0, 1}}, {{0, 1, 0}}, {{0, 0, 1}}};
  return g;
}

TEST(ConcurrentDiscountedTest, MatchingPenniesByHand) {
  DiscountSpec spec{{0.5, 0.5, 0.5}, {0.0, 1.0, 0.0}};
  for (ConcurrentMethod m :
       {ConcurrentMethod::kShapley, ConcurrentMethod::kStrategyIteration}) {
    ConcurrentResult r = MultidiscountedValueConcurrent(MatchingPennies(), spec,
                                                        1e-12, m);
    // 0.5 * 0 + 0.5 * (value of the identity matrix game = 1/2).
    EXPECT_NEAR(r.values[0], 0.25, 1e-11);
    EXPECT_NEAR(r.values[1], 1.0, 1e-11);
    EXPECT_NEAR(r.player1.assignment[0][0].probability, 0.5, 1e-9);
    EXPECT_TRUE(r.converged);
  }
}

TEST(ConcurrentDiscountedTest, ChainDegenerate) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomInstance inst = Random(StructureKind::kMarkovChain, seed, 6);
    ConcurrentResult r =
        MultidiscountedValueConcurrent(inst.game, inst.discount, 1e-11);
    EXPECT_LE(MaxDiff(r.values,
                      MultidiscountedValues(ToChain(inst.game), inst.discount)),
              1e-9);
  }
}

TEST(ConcurrentDiscountedTest, MdpDegenerate) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (StructureKind kind :
         {StructureKind::kMdpPlayer1, StructureKind::kMdpPlayer2}) {
      RandomInstance inst = Random(kind, seed, 5);
      ValueVector mdp =
          MultidiscountedValueMdp(inst.game, inst.discount, 1e-10).values;
      for (ConcurrentMethod m :
           {ConcurrentMethod::kShapley, ConcurrentMethod::kStrategyIteration}) {
        ConcurrentResult r =
            MultidiscountedValueConcurrent(inst.game, inst.discount, 1e-8, m);
        EXPECT_LE(MaxDiff(r.values, mdp), 1e-6) << "seed " << seed;
      }
    }
  }
}

TEST(ConcurrentDiscountedTest, UnitRewardIsOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomInstance inst = Random(StructureKind::kConcurrent, seed);
    std::fill(inst.discount.reward.begin(), inst.discount.reward.end(), 1.0);
    for (double v :
         MultidiscountedValueConcurrent(inst.game, inst.discount, 1e-10).values) {
      EXPECT_NEAR(v, 1.0, 1e-10);
    }
  }
}

// Successive Shapley steps shrink by the largest discount at least.
TEST(ConcurrentDiscountedTest, ShapleyContracts) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomInstance inst = Random(StructureKind::kConcurrent, seed);
    double lmax = *std::max_element(inst.discount.lambda.begin(),
                                    inst.discount.lambda.end());
    ConcurrentResult r =
        MultidiscountedValueConcurrent(inst.game, inst.discount, 1e-10);
    ASSERT_EQ(r.residuals.size(), static_cast<std::size_t>(r.iterations));
    for (std::size_t i = 1; i < r.residuals.size(); ++i) {
      EXPECT_LE(r.residuals[i], lmax * r.residuals[i - 1] + 1e-14)
          << "seed " << seed << " step " << i;
    }
  }
}

// Each player's strategy, fixed and answered optimally, brackets the value.
TEST(ConcurrentDiscountedTest, StrategiesBracketTheValue) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomInstance inst = Random(StructureKind::kConcurrent, seed);
    const double tol = 1e-9;
    for (ConcurrentMethod m :
         {ConcurrentMethod::kShapley, ConcurrentMethod::kStrategyIteration}) {
      ConcurrentResult r =
          MultidiscountedValueConcurrent(inst.game, inst.discount, tol, m);
      ValueVector guaranteed = MultidiscountedValueMdp(
          RestrictPlayer1(inst.game, r.player1), inst.discount, 1e-12).values;
      ValueVector conceded = MultidiscountedValueMdp(
          RestrictPlayer2(inst.game, r.player2), inst.discount, 1e-12).values;
      for (int s = 0; s < inst.game.num_states(); ++s) {
        EXPECT_LE(guaranteed[s], r.values[s] + 10 * tol);
        EXPECT_GE(conceded[s], r.values[s] - 10 * tol);
        EXPECT_LE(conceded[s] - guaranteed[s], 10 * tol) << "seed " << seed;
        EXPECT_NEAR(guaranteed[s], r.lower[s], 1e-9);
        EXPECT_NEAR(conceded[s], r.upper[s], 1e-9);
      }
    }
  }
}

TEST(ConcurrentDiscountedTest, MethodsAgree) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomInstance inst = Random(StructureKind::kConcurrent, seed);
    ValueVector a = MultidiscountedValueConcurrent(inst.game, inst.discount, 1e-10,
                                                   ConcurrentMethod::kShapley)
                        .values;
    ValueVector b =
        MultidiscountedValueConcurrent(inst.game, inst.discount, 1e-10,
                                       ConcurrentMethod::kStrategyIteration)
            .values;
    EXPECT_LE(MaxDiff(a, b), 2e-10);
  }
}

TEST(ConcurrentDiscountedTest, RejectsBadTolerance) {
  RandomInstance inst = Random(StructureKind::kConcurrent, 1);
  EXPECT_THROW(MultidiscountedValueConcurrent(inst.game, inst.discount, 0.0),
               PreconditionError);
}

TEST(TurnBasedParityTest, ChainDegenerate) {
  auto ex1 = Example1Family(0.1);
  for (TurnBasedMethod m :
       {TurnBasedMethod::kImprovement, TurnBasedMethod::kEnumeration}) {
    TurnBasedResult r = ParityValueTurnBased(FromChain(ex1.g1), ex1.parity, m);
    EXPECT_EQ(r.values[0], 0.0);
    EXPECT_EQ(r.values[1], 1.0);
  }
}

TEST(TurnBasedParityTest, DominantMove) {
  ParityObjective p{{1, 2, 1}};
  for (TurnBasedMethod m :
       {TurnBasedMethod::kImprovement, TurnBasedMethod::kEnumeration}) {
    TurnBasedResult r = ParityValueTurnBased(TrapChoice(), p, m);
    EXPECT_EQ(r.values[0], 1.0);
    EXPECT_EQ(r.player1.assignment[0][0].move, 0);
  }
}

TEST(TurnBasedParityTest, ImprovementMatchesEnumeration) {
  int fell_back = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstance inst = Random(StructureKind::kTurnBased, seed, 5);
    TurnBasedResult a = ParityValueTurnBased(inst.game, inst.parity,
                                             TurnBasedMethod::kImprovement);
    TurnBasedResult b = ParityValueTurnBased(inst.game, inst.parity,
                                             TurnBasedMethod::kEnumeration);
    EXPECT_LE(MaxDiff(a.values, b.values), 1e-8) << "seed " << seed;
    EXPECT_LE(b.determinacy_gap, 1e-9);
    fell_back += a.fell_back;
  }
  EXPECT_EQ(fell_back, 0);
}

// Playing both returned strategies against each other realizes the values.
TEST(TurnBasedParityTest, StrategyProfileRealizesValues) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstance inst = Random(StructureKind::kTurnBased, seed, 5);
    TurnBasedResult r = ParityValueTurnBased(inst.game, inst.parity,
                                             TurnBasedMethod::kImprovement);
    GameStructure chain =
        RestrictPlayer2(RestrictPlayer1(inst.game, r.player1), r.player2);
    EXPECT_LE(MaxDiff(ParityValues(ToChain(chain), inst.parity), r.values), 1e-9);
    // Neither player gains by deviating alone.
    ValueVector p1_best =
        ParityValueMdp(RestrictPlayer2(inst.game, r.player2), inst.parity).values;
    ValueVector p2_best =
        ParityValueMdp(RestrictPlayer1(inst.game, r.player1), inst.parity).values;
    EXPECT_LE(MaxDiff(p1_best, r.values), 1e-9);
    EXPECT_LE(MaxDiff(p2_best, r.values), 1e-9);
  }
}

TEST(TurnBasedParityTest, RejectsConcurrent) {
  EXPECT_THROW(ParityValueTurnBased(MatchingPennies(), {{0, 0, 1}},
                                    TurnBasedMethod::kImprovement),
               PreconditionError);
}

// Turn-based parity values move by at most the perturbation bound.
TEST(TurnBasedParityTest, ValuesMoveLessThanBound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstance inst = Random(StructureKind::kTurnBased, seed, 5);
    double eps = std::min(0.05, 0.9 * MinPositiveProbability(inst.game)) *
                 ToUnit(KeyedBits({seed, 3}));
    GameStructure h = Perturb(inst.game, eps, seed);
    double bound = PerturbationBound(inst.game.num_states(),
                                     RatioDistance(inst.game, h));
    ValueVector a = ParityValueTurnBased(inst.game, inst.parity,
                                         TurnBasedMethod::kImprovement).values;
    ValueVector b =
        ParityValueTurnBased(h, inst.parity, TurnBasedMethod::kImprovement).values;
    EXPECT_LE(MaxDiff(a, b), bound + 1e-8);
  }
}

// Concurrent multi-discounted values move by at most the bound too.
TEST(ConcurrentDiscountedTest, ValuesMoveLessThanBound) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomInstance inst = Random(StructureKind::kConcurrent, seed);
    double eps = std::min(0.05, 0.9 * MinPositiveProbability(inst.game)) *
                 ToUnit(KeyedBits({seed, 4}));
    GameStructure h = Perturb(inst.game, eps, seed);
    double bound = PerturbationBound(inst.game.num_states(),
                                     RatioDistance(inst.game, h));
    const double tol = 1e-10;
    ValueVector a = MultidiscountedValueConcurrent(inst.game, inst.discount, tol).values;
    ValueVector b = MultidiscountedValueConcurrent(h, inst.discount, tol).values;
    EXPECT_LE(MaxDiff(a, b), bound + 2 * tol);
  }
}

TEST(LadderTest, DefaultOrderIsAscendingPriority) {
  ParityObjective p{{2, 0, 1, 0}};
  EXPECT_EQ(LimitSchedule::Default(p).order, (std::vector<int>{1, 3, 2, 0}));
}

TEST(LadderTest, LevelsNestTheDiscounts) {
  ParityObjective p{{2, 0, 1, 0}};
  LimitSchedule schedule = LimitSchedule::Default(p);
  DiscountSpec d = LadderDiscounts(schedule, p, 4);
  // Levels: {1, 3} -> 0, {2} -> 1, {0} -> 2.
  EXPECT_EQ(d.lambda[1], 1.0 - std::ldexp(1.0, -4));
  EXPECT_EQ(d.lambda[3], 1.0 - std::ldexp(1.0, -4));
  EXPECT_EQ(d.lambda[2], 1.0 - std::ldexp(1.0, -8));
  EXPECT_EQ(d.lambda[0], 1.0 - std::ldexp(1.0, -12));
  EXPECT_EQ(d.reward, (std::vector<double>{1, 1, 0, 1}));
}

TEST(LadderTest, RejectsBadSchedules) {
  ParityObjective p{{0, 1}};
  EXPECT_THROW(LadderDiscounts({{0, 0}, 4, 12}, p, 4), PreconditionError);
  EXPECT_THROW(LadderDiscounts({{0}, 4, 12}, p, 4), PreconditionError);
  EXPECT_THROW(LadderDiscounts({{0, 1}, 5, 4}, p, 4), PreconditionError);
  EXPECT_THROW(LadderDiscounts({{0, 1}, 0, 4}, p, 4), PreconditionError);
}

TEST(ConcurrentParityTest, ChainDegenerate) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomInstance inst = Random(StructureKind::kMarkovChain, seed);
    LimitApproximation r = ParityValueConcurrentApprox(
        inst.game, inst.parity, LimitSchedule::Default(inst.parity));
    EXPECT_LE(MaxDiff(r.values, ParityValues(ToChain(inst.game), inst.parity)),
              1e-2)
        << "seed " << seed;
  }
}

TEST(ConcurrentParityTest, AllEvenConvergesToOne) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomInstance inst = Random(StructureKind::kConcurrent, seed);
    for (int& p : inst.parity.priority) p = 2 * (p / 2);
    LimitApproximation r = ParityValueConcurrentApprox(
        inst.game, inst.parity, LimitSchedule::Default(inst.parity));
    EXPECT_TRUE(r.converged);
    for (double v : r.values) EXPECT_NEAR(v, 1.0, 1e-3);
  }
}

TEST(ConcurrentParityTest, TurnBasedDegenerate) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    RandomInstance inst = Random(StructureKind::kTurnBased, seed);
    LimitApproximation r = ParityValueConcurrentApprox(
        inst.game, inst.parity, LimitSchedule::Default(inst.parity));
    ValueVector exact = ParityValueTurnBased(inst.game, inst.parity,
                                             TurnBasedMethod::kEnumeration)
                            .values;
    EXPECT_LE(MaxDiff(r.values, exact), 1e-2) << "seed " << seed;
  }
}

TEST(ConcurrentParityTest, TraceIsWellFormed) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomInstance inst = Random(StructureKind::kConcurrent, seed);
    LimitSchedule schedule = LimitSchedule::Default(inst.parity);
    LimitApproximation r =
        ParityValueConcurrentApprox(inst.game, inst.parity, schedule);
    ASSERT_FALSE(r.trace.empty());
    EXPECT_EQ(r.trace.front().k, schedule.k_min);
    EXPECT_EQ(r.trace.front().max_change, 0.0);
    EXPECT_LE(r.trace.back().k, schedule.k_max);
    EXPECT_EQ(r.values, r.trace.back().values);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      EXPECT_EQ(r.trace[i].k, r.trace[i - 1].k + 1);
      EXPECT_NEAR(r.trace[i].max_change,
                  MaxDiff(r.trace[i].values, r.trace[i - 1].values), 1e-15);
    }
    if (r.converged) {
      EXPECT_GE(r.trace.size(), 3u);
      EXPECT_LT(r.trace.back().max_change, kRungStability);
    }
    for (double v : r.values) {
      EXPECT_GE(v, -1e-12);
      EXPECT_LE(v, 1 + 1e-12);
    }
  }
}

}  // namespace
}  // namespace stochrobust
