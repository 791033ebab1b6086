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
#include <numeric>
#include <string>

#include "stochrobust/errors.h"
#include "stochrobust/random.h"

namespace stochrobust {
namespace {

std::vector<std::string> Names(const char* prefix, int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

MarkovChain TwoStateChain(double leave_s0, double leave_s1) {
  MarkovChain chain;
  chain.states = Names("s", 2);
  chain.delta = {{1.0 - leave_s0, leave_s0}, {leave_s1, 1.0 - leave_s1}};
  return chain;
}

Distribution RandomDistribution(Rng& rng, int n, int max_support,
                                double floor) {
  int cap = std::min(max_support, n);
  cap = std::min(cap, static_cast<int>(std::floor(1.0 / floor + 1e-12)));
  const int m = rng.UniformInt(1, std::max(1, cap));
  std::vector<int> targets(n);
  std::iota(targets.begin(), targets.end(), 0);
  for (int k = 0; k < m; ++k) {
    std::swap(targets[k], targets[rng.UniformInt(k, n - 1)]);
  }
  std::vector<double> u(m);
  double total = 0.0;
  for (double& x : u) {
    x = rng.Uniform();
    total += x;
  }
  Distribution d(n, 0.0);
  const double spare = 1.0 - m * floor;
  for (int k = 0; k < m; ++k) {
    d[targets[k]] = total > 0.0 ? floor + spare * u[k] / total : 1.0 / m;
  }
  return d;
}

}  // namespace

Example1Instance Example1Family(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw PreconditionError("example1 needs 0 < eps < 1");
  }
  Example1Instance out;
  out.g1 = TwoStateChain(0.0, 0.0);
  out.g2 = TwoStateChain(eps, 0.0);
  out.parity.priority = {1, 2};
  return out;
}

Example2Instance Example2Line(int n, double eps) {
  if (n < 1) throw PreconditionError("example2 needs n >= 1");
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw PreconditionError("example2 needs 0 <= eps < 1/2");
  }
  const int size = 2 * n + 1;
  Example2Instance out;
  out.chain.states = Names("s", size);
  out.chain.delta.assign(size, Distribution(size, 0.0));
  out.chain.delta[0][0] = 1.0;
  out.chain.delta[size - 1][size - 1] = 1.0;
  for (int s = 1; s < size - 1; ++s) {
    out.chain.delta[s][s - 1] = 0.5 + eps;
    out.chain.delta[s][s + 1] = 0.5 - eps;
  }
  out.parity.priority.assign(size, 1);
  out.parity.priority[0] = 0;
  out.target.assign(size, false);
  out.target[0] = true;
  out.start = n;
  return out;
}

double Example2ExactValue(int n, double eps) {
  if (n < 1) throw PreconditionError("example2 needs n >= 1");
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw PreconditionError("example2 needs 0 <= eps < 1/2");
  }
  // r^n / (r^n + 1) = 1 / (1 + r^-n), with log r computed stably.
  const double log_r = std::log1p(2.0 * eps) - std::log1p(-2.0 * eps);
  return 1.0 / (1.0 + std::exp(-n * log_r));
}

RatioExampleInstance RatioExampleChains(double eps) {
  if (!(eps > 0.0 && eps < 1.0 / 7.0)) {
    throw PreconditionError("ratio example needs 0 < eps < 1/7");
  }
  RatioExampleInstance out;
  out.g1 = TwoStateChain(eps, 1.0 - eps);
  out.g2 = TwoStateChain(2.0 * eps, 1.0 - 2.0 * eps);
  out.g5 = TwoStateChain(5.0 * eps, 1.0 - 5.0 * eps);
  return out;
}

RandomInstance MakeRandomInstance(const InstanceRecipe& recipe) {
  const int n = recipe.states;
  if (n < 1 || n > 64) throw PreconditionError("random instance needs 1..64 states");
  if (recipe.max_moves < 1 || recipe.max_moves > 8) {
    throw PreconditionError("random instance needs 1..8 moves");
  }
  if (recipe.max_support < 1) {
    throw PreconditionError("random instance needs support of at least 1");
  }
  if (!(recipe.eta_floor > 0.0 && recipe.eta_floor <= 1.0)) {
    throw PreconditionError("eta floor must lie in (0,1]");
  }
  if (recipe.max_priority < 0) {
    throw PreconditionError("max priority must be nonnegative");
  }
  Rng rng(recipe.seed);
  RandomInstance out;
  GameStructure& g = out.game;
  g.states = Names("s", n);
  g.moves = Names("a", recipe.max_moves);
  for (auto& b : Names("b", recipe.max_moves)) g.moves.push_back(b);
  g.moves.emplace_back(kNoMove);
  const int no_move = static_cast<int>(g.moves.size()) - 1;

  auto draw_moves = [&](int offset) {
    std::vector<int> moves;
    int k = rng.UniformInt(1, recipe.max_moves);
    for (int i = 0; i < k; ++i) moves.push_back(offset + i);
    return moves;
  };
  const int b_offset = recipe.max_moves;
  for (int s = 0; s < n; ++s) {
    std::vector<int> m1{no_move}, m2{no_move};
    switch (recipe.kind) {
      case StructureKind::kConcurrent:
        m1 = draw_moves(0);
        m2 = draw_moves(b_offset);
        break;
      case StructureKind::kTurnBased:
        if (rng.UniformInt(0, 1) == 0) {
          m1 = draw_moves(0);
        } else {
          m2 = draw_moves(b_offset);
        }
        break;
      case StructureKind::kMdpPlayer1:
        m1 = draw_moves(0);
        break;
      case StructureKind::kMdpPlayer2:
        m2 = draw_moves(b_offset);
        break;
      case StructureKind::kMarkovChain:
        break;
    }
    g.gamma1.push_back(m1);
    g.gamma2.push_back(m2);
    std::vector<Distribution> rows;
    for (std::size_t k = 0; k < m1.size() * m2.size(); ++k) {
      rows.push_back(
          RandomDistribution(rng, n, recipe.max_support, recipe.eta_floor));
    }
    g.delta.push_back(std::move(rows));
  }
  for (int s = 0; s < n; ++s) {
    out.parity.priority.push_back(rng.UniformInt(0, recipe.max_priority));
    out.discount.lambda.push_back(rng.Uniform(0.1, 0.9));
    out.discount.reward.push_back(rng.Uniform());
  }
  if (recipe.kind == StructureKind::kMarkovChain) g = FromChain(ToChain(g));
  return out;
}

}  // namespace stochrobust
