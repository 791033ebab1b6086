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

#include "stochrobust/benchlab.h"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "stochrobust/chain_solver.h"
#include "stochrobust/errors.h"

namespace stochrobust {
namespace {

TEST(ExampleOneTest, Family) {
  for (double eps : {0.3, 0.1, 0.01, 0.001}) {
    Example1Instance ex = Example1Family(eps);
    EXPECT_NEAR(AbsoluteDistance(ex.g1, ex.g2), eps, 1e-15);
    EXPECT_FALSE(StructurallyEquivalent(ex.g1, ex.g2));
    EXPECT_EQ(ParityValues(ex.g1, ex.parity)[0], 0.0);
    EXPECT_EQ(ParityValues(ex.g2, ex.parity)[0], 1.0);
    EXPECT_EQ(ex.parity.priority, (std::vector<int>{1, 2}));
  }
  EXPECT_THROW(Example1Family(0.0), PreconditionError);
  EXPECT_THROW(Example1Family(1.0), PreconditionError);
}

TEST(ExampleTwoTest, Shape) {
  Example2Instance ex = Example2Line(3, 0.1);
  ASSERT_EQ(ex.chain.num_states(), 7);
  EXPECT_EQ(ex.start, 3);
  EXPECT_EQ(ex.target, (std::vector<bool>{true, false, false, false, false,
                                          false, false}));
  EXPECT_EQ(ex.chain.delta[0][0], 1.0);
  EXPECT_EQ(ex.chain.delta[6][6], 1.0);
  EXPECT_DOUBLE_EQ(ex.chain.delta[3][2], 0.6);
  EXPECT_DOUBLE_EQ(ex.chain.delta[3][4], 0.4);
  EXPECT_EQ(ex.parity.priority, (std::vector<int>{0, 1, 1, 1, 1, 1, 1}));
  EXPECT_TRUE(ValidateStructure(FromChain(ex.chain)).empty());
  EXPECT_THROW(Example2Line(0, 0.1), PreconditionError);
  EXPECT_THROW(Example2Line(3, 0.5), PreconditionError);
}

TEST(ExampleTwoTest, FairWalkIsHalf) {
  for (int n : {1, 4, 9}) {
    EXPECT_EQ(Example2ExactValue(n, 0.0), 0.5);
    Example2Instance ex = Example2Line(n, 0.0);
    EXPECT_NEAR(ParityValues(ex.chain, ex.parity)[ex.start], 0.5, 1e-12);
  }
}

TEST(ExampleTwoTest, ClosedFormMatchesSolvers) {
  for (int n : {1, 2, 5, 10}) {
    for (double eps : {1e-6, 1e-4, 1e-2, 0.2, 0.45}) {
      Example2Instance ex = Example2Line(n, eps);
      double exact = Example2ExactValue(n, eps);
      EXPECT_NEAR(exact, testing::GamblersRuinLeft(n, eps), 1e-12);
      EXPECT_NEAR(ReachabilityValues(ex.chain, ex.target)[ex.start], exact, 1e-12);
      EXPECT_NEAR(ParityValues(ex.chain, ex.parity)[ex.start], exact, 1e-12);
    }
  }
}

TEST(ExampleTwoTest, LinearDrift) {
  EXPECT_NEAR(Example2ExactValue(5, 1e-4), 0.5 + 5e-4, 1e-6);
  EXPECT_GT(Example2ExactValue(5, 1e-4), 0.5004999);
  for (int n : {1, 3, 7}) {
    double eps = 1e-6;
    EXPECT_NEAR((Example2ExactValue(n, eps) - 0.5) / (n * eps), 1.0, 1e-6);
  }
  EXPECT_GT(Example2ExactValue(3, 0.5 - 1e-9), 1.0 - 1e-12);
}

TEST(RatioExampleTest, NotAMetric) {
  RatioExampleInstance r = RatioExampleChains(0.1);
  EXPECT_NEAR(RatioDistance(r.g1, r.g2), 1.0, 1e-12);
  EXPECT_NEAR(RatioDistance(r.g2, r.g5), 1.5, 1e-12);
  EXPECT_NEAR(RatioDistance(r.g1, r.g5), 4.0, 1e-12);
  EXPECT_NEAR(AbsoluteDistance(r.g1, r.g2), 0.1, 1e-15);
  EXPECT_LT(RatioDistance(r.g1, r.g2) + RatioDistance(r.g2, r.g5),
            RatioDistance(r.g1, r.g5));
  EXPECT_THROW(RatioExampleChains(1.0 / 7.0), PreconditionError);
  EXPECT_THROW(RatioExampleChains(0.0), PreconditionError);
}

TEST(RandomInstanceTest, RepeatableBySeed) {
  for (StructureKind kind :
       {StructureKind::kMarkovChain, StructureKind::kTurnBased,
        StructureKind::kConcurrent}) {
    InstanceRecipe recipe;
    recipe.kind = kind;
    recipe.seed = 314;
    RandomInstance a = MakeRandomInstance(recipe), b = MakeRandomInstance(recipe);
    EXPECT_EQ(a.game, b.game);
    EXPECT_EQ(a.parity, b.parity);
    EXPECT_EQ(a.discount, b.discount);
    recipe.seed = 315;
    EXPECT_NE(MakeRandomInstance(recipe).game, a.game);
  }
}

TEST(RandomInstanceTest, ChainsClassifyAsChains) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    InstanceRecipe recipe;
    recipe.seed = seed;
    GameStructure g = MakeRandomInstance(recipe).game;
    EXPECT_EQ(Classify(g), StructureKind::kMarkovChain);
    EXPECT_EQ(FromChain(ToChain(g)), g);
  }
}

TEST(RandomInstanceTest, RespectsRecipe) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    InstanceRecipe recipe;
    recipe.kind = static_cast<StructureKind>(seed % 5);
    recipe.states = 1 + static_cast<int>(seed % 7);
    recipe.max_moves = 1 + static_cast<int>(seed % 3);
    recipe.max_support = 1 + static_cast<int>(seed % 4);
    recipe.seed = seed;
    RandomInstance inst = MakeRandomInstance(recipe);
    const GameStructure& g = inst.game;
    ASSERT_TRUE(ValidateStructure(g).empty()) << "seed " << seed;
    EXPECT_TRUE(SatisfiesKind(g, recipe.kind));
    EXPECT_EQ(g.num_states(), recipe.states);
    EXPECT_GE(MinPositiveProbability(g), 0.05);
    for (int s = 0; s < g.num_states(); ++s) {
      EXPECT_LE(g.num_moves(s, Player::kOne), recipe.max_moves);
      EXPECT_LE(g.num_moves(s, Player::kTwo), recipe.max_moves);
      for (const Distribution& d : g.delta[s]) {
        EXPECT_LE(std::count_if(d.begin(), d.end(), InSupport),
                  recipe.max_support);
      }
      EXPECT_GE(inst.parity.priority[s], 0);
      EXPECT_LE(inst.parity.priority[s], recipe.max_priority);
      EXPECT_GE(inst.discount.lambda[s], 0.1);
      EXPECT_LE(inst.discount.lambda[s], 0.9);
      EXPECT_GE(inst.discount.reward[s], 0.0);
      EXPECT_LE(inst.discount.reward[s], 1.0);
    }
  }
}

TEST(RandomInstanceTest, EtaFloorIsAParameter) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    InstanceRecipe recipe;
    recipe.kind = StructureKind::kTurnBased;
    recipe.states = 6;
    recipe.max_support = 2;
    recipe.eta_floor = 0.15;
    recipe.seed = seed;
    EXPECT_GE(MinPositiveProbability(MakeRandomInstance(recipe).game), 0.15);
  }
}

TEST(RandomInstanceTest, RejectsBadRecipes) {
  InstanceRecipe recipe;
  recipe.states = 0;
  EXPECT_THROW(MakeRandomInstance(recipe), PreconditionError);
  recipe = {};
  recipe.max_moves = 0;
  EXPECT_THROW(MakeRandomInstance(recipe), PreconditionError);
  recipe = {};
  recipe.eta_floor = 0.0;
  EXPECT_THROW(MakeRandomInstance(recipe), PreconditionError);
  recipe = {};
  recipe.max_support = 0;
  EXPECT_THROW(MakeRandomInstance(recipe), PreconditionError);
}

}  // namespace
}  // namespace stochrobust
