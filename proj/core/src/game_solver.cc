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
#include <numeric>
#include <set>
#include <string>

#include "solver_internal.h"
#include "stochrobust/decision_solver.h"
#include "stochrobust/errors.h"
#include "stochrobust/matrix_game.h"

namespace stochrobust {
namespace {

using internal::MdpView;
using internal::StopSpec;

constexpr long kMaxShapleySweeps = 5'000'000;
constexpr int kMaxStrategyIterations = 500;
constexpr double kSwitchMargin = 1e-13;
// Values closer than this count as equal when certifying turn-based results.
constexpr double kCertificateTolerance = 1e-9;

MatrixGame LocalGame(const GameStructure& game, const StopSpec& spec,
                     const ValueVector& v, int s) {
  MatrixGame mg;
  const int rows = game.num_moves(s, Player::kOne);
  const int cols = game.num_moves(s, Player::kTwo);
  mg.payoff.assign(rows, std::vector<double>(cols));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const Distribution& d = game.transition(s, i, j);
      double e = 0.0;
      for (std::size_t t = 0; t < d.size(); ++t) e += d[t] * v[t];
      mg.payoff[i][j] = internal::StepValue(spec.stop[s], spec.reward[s], e);
    }
  }
  return mg;
}

std::vector<MoveWeight> Mixture(const std::vector<int>& moves,
                                const std::vector<double>& weights) {
  std::vector<MoveWeight> out;
  double sum = 0.0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (weights[i] > 1e-15) {
      out.push_back({moves[i], weights[i]});
      sum += weights[i];
    }
  }
  for (auto& w : out) w.probability /= sum;
  return out;
}

// Best reply of the opponent of `strategy.owner`, by exact policy iteration.
// Returns the player-1 values; the reply is stored in `reply`.
ValueVector BestReply(const GameStructure& game, const StopSpec& spec,
                      const MemorylessStrategy& strategy,
                      MemorylessStrategy* reply) {
  GameStructure restricted = Restrict(game, strategy);
  const Player replier = Opponent(strategy.owner);
  MdpView view{&restricted, replier};
  const double sign = replier == Player::kOne ? 1.0 : -1.0;
  std::vector<int> actions(game.num_states(), 0);
  ValueVector v =
      internal::PolicyIterationDiscounted(view, spec, sign, &actions);
  if (reply != nullptr) *reply = internal::ToStrategy(view, actions);
  return v;
}

double SupDistance(const ValueVector& a, const ValueVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

ConcurrentResult SolveShapley(const GameStructure& game, const StopSpec& spec,
                              double tol) {
  const int n = game.num_states();
  const double stop_min = *std::min_element(spec.stop.begin(), spec.stop.end());
  const double lambda_max = 1.0 - stop_min;
  const double threshold = tol * stop_min / (2.0 * lambda_max);
  ConcurrentResult out;
  out.tolerance = tol;
  ValueVector v(n, 0.0), next(n);
  double step = 0.0;
  long sweeps = 0;
  do {
    step = 0.0;
    for (int s = 0; s < n; ++s) {
      next[s] = SolveMatrixGame(LocalGame(game, spec, v, s)).value;
      step = std::max(step, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    out.residuals.push_back(step);
    ++sweeps;
  } while (step > threshold && sweeps < kMaxShapleySweeps);
  out.converged = step <= threshold;
  out.iterations = static_cast<int>(sweeps);
  out.values = v;
  out.player1.owner = Player::kOne;
  out.player2.owner = Player::kTwo;
  for (int s = 0; s < n; ++s) {
    auto sol = SolveMatrixGame(LocalGame(game, spec, v, s));
    out.player1.assignment.push_back(Mixture(game.gamma1[s], sol.row_strategy));
    out.player2.assignment.push_back(
        Mixture(game.gamma2[s], sol.column_strategy));
  }
  out.lower = BestReply(game, spec, out.player1, nullptr);
  out.upper = BestReply(game, spec, out.player2, nullptr);
  return out;
}

ConcurrentResult SolveStrategyIteration(const GameStructure& game,
                                        const StopSpec& spec, double tol,
                                        const ValueVector& start) {
  const int n = game.num_states();
  ConcurrentResult out;
  out.tolerance = tol;
  out.converged = false;
  out.player1.owner = Player::kOne;
  out.player2.owner = Player::kTwo;
  out.player1.assignment.resize(n);
  out.player2.assignment.resize(n);
  for (int s = 0; s < n; ++s) {
    auto sol = SolveMatrixGame(LocalGame(game, spec, start, s));
    out.player1.assignment[s] = Mixture(game.gamma1[s], sol.row_strategy);
  }
  for (int it = 0; it < kMaxStrategyIterations; ++it) {
    ++out.iterations;
    out.lower = BestReply(game, spec, out.player1, nullptr);
    MemorylessStrategy next = out.player1;
    for (int s = 0; s < n; ++s) {
      auto sol = SolveMatrixGame(LocalGame(game, spec, out.lower, s));
      out.player2.assignment[s] = Mixture(game.gamma2[s], sol.column_strategy);
      if (sol.maximin > out.lower[s] + kSwitchMargin) {
        next.assignment[s] = Mixture(game.gamma1[s], sol.row_strategy);
      }
    }
    out.upper = BestReply(game, spec, out.player2, nullptr);
    double gap = 0.0;
    for (int s = 0; s < n; ++s) gap = std::max(gap, out.upper[s] - out.lower[s]);
    out.residuals.push_back(gap);
    if (gap <= tol || next == out.player1) {
      out.converged = gap <= tol;
      break;
    }
    out.player1 = std::move(next);
  }
  out.values.resize(n);
  for (int s = 0; s < n; ++s) {
    out.values[s] = 0.5 * (out.lower[s] + out.upper[s]);
  }
  return out;
}

void RequireTolerance(double tol) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
}

// -- Turn-based parity -------------------------------------------------------

std::vector<int> PureMoves(const MemorylessStrategy& strategy) {
  std::vector<int> moves;
  for (const auto& a : strategy.assignment) moves.push_back(a.front().move);
  return moves;
}

MemorylessStrategy FirstMoves(const GameStructure& game, Player owner) {
  std::vector<int> moves;
  for (int s = 0; s < game.num_states(); ++s) {
    moves.push_back(owner == Player::kOne ? game.gamma1[s][0]
                                          : game.gamma2[s][0]);
  }
  return PureStrategy(owner, moves);
}

// Pure strategy of `owner` chosen by the solve on the restricted structure,
// or the trivial one when the restriction left a chain.
MemorylessStrategy OwnedStrategy(const GameStructure& game,
                                 const SolveResult& solved, Player owner) {
  if (solved.strategy.owner == owner && Classify(game) != StructureKind::kMarkovChain) {
    return solved.strategy;
  }
  return FirstMoves(game, owner);
}

double StrategyCount(const GameStructure& game, Player p) {
  double count = 1.0;
  for (int s = 0; s < game.num_states(); ++s) count *= game.num_moves(s, p);
  return count;
}

// Calls fn on every pure strategy of p, in mixed-radix order.
template <typename Fn>
void ForEachPure(const GameStructure& game, Player p, Fn fn) {
  const int n = game.num_states();
  std::vector<int> digit(n, 0);
  while (true) {
    std::vector<int> moves(n);
    for (int s = 0; s < n; ++s) {
      moves[s] = p == Player::kOne ? game.gamma1[s][digit[s]]
                                   : game.gamma2[s][digit[s]];
    }
    fn(PureStrategy(p, moves));
    int s = 0;
    while (s < n && ++digit[s] == game.num_moves(s, p)) digit[s++] = 0;
    if (s == n) return;
  }
}

// Per-state optimum for `p` over its pure strategies, each scored by the
// opponent's exact best reply; also returns one uniformly optimal strategy.
ValueVector EnumerateSide(const GameStructure& game,
                          const ParityObjective& parity, Player p,
                          MemorylessStrategy* best_strategy) {
  const int n = game.num_states();
  const double sign = p == Player::kOne ? 1.0 : -1.0;
  std::vector<std::pair<MemorylessStrategy, ValueVector>> scored;
  ValueVector best(n, -2.0);
  ForEachPure(game, p, [&](const MemorylessStrategy& strategy) {
    ValueVector v = StrategyEnumerationOracle(Restrict(game, strategy), parity);
    for (int s = 0; s < n; ++s) best[s] = std::max(best[s], sign * v[s]);
    scored.emplace_back(strategy, std::move(v));
  });
  const auto* chosen = &scored.front();
  double chosen_score = -1e300;
  for (const auto& entry : scored) {
    bool uniform = true;
    double score = 0.0;
    for (int s = 0; s < n; ++s) {
      uniform = uniform &&
                sign * entry.second[s] >= best[s] - kCertificateTolerance;
      score += sign * entry.second[s];
    }
    if (uniform) {
      chosen = &entry;
      break;
    }
    if (score > chosen_score) {
      chosen_score = score;
      chosen = &entry;
    }
  }
  *best_strategy = chosen->first;
  for (double& x : best) x *= sign;
  return best;
}

TurnBasedResult Enumerate(const GameStructure& game,
                          const ParityObjective& parity) {
  double c1 = StrategyCount(game, Player::kOne);
  double c2 = StrategyCount(game, Player::kTwo);
  if (c1 * c2 > kEnumerationBudget) {
    throw BudgetExceededError("strategy profiles exceed the enumeration budget");
  }
  TurnBasedResult out;
  out.values = EnumerateSide(game, parity, Player::kOne, &out.player1);
  ValueVector inf_sup = EnumerateSide(game, parity, Player::kTwo, &out.player2);
  out.determinacy_gap = SupDistance(out.values, inf_sup);
  out.iterations = static_cast<int>(c1 + c2);
  return out;
}

TurnBasedResult Improve(const GameStructure& game,
                        const ParityObjective& parity) {
  const int n = game.num_states();
  TurnBasedResult out;
  MemorylessStrategy sigma1 = FirstMoves(game, Player::kOne);
  std::set<std::vector<int>> visited;
  while (true) {
    ++out.iterations;
    if (!visited.insert(PureMoves(sigma1)).second) break;
    GameStructure h1 = Restrict(game, sigma1);
    SolveResult reply = ParityValueMdp(h1, parity);
    const ValueVector& v = reply.values;
    MemorylessStrategy sigma2 = OwnedStrategy(h1, reply, Player::kTwo);

    bool switched = false;
    for (int s = 0; s < n; ++s) {
      if (game.num_moves(s, Player::kOne) < 2) continue;
      int current = MovePosition(game, s, Player::kOne,
                                 sigma1.assignment[s].front().move);
      double best = v[s];
      int best_i = current;
      for (int i = 0; i < game.num_moves(s, Player::kOne); ++i) {
        const Distribution& d = game.transition(s, i, 0);
        double q = 0.0;
        for (int t = 0; t < n; ++t) q += d[t] * v[t];
        if (q > best + 1e-12) {
          best = q;
          best_i = i;
        }
      }
      if (best_i != current) {
        sigma1.assignment[s] = {{game.gamma1[s][best_i], 1.0}};
        switched = true;
      }
    }
    if (switched) continue;

    // No local switch: v is optimal iff player 2's reply caps player 1 at v.
    GameStructure h2 = Restrict(game, sigma2);
    SolveResult counter = ParityValueMdp(h2, parity);
    if (SupDistance(counter.values, v) <= kCertificateTolerance) {
      out.values = v;
      out.player1 = sigma1;
      out.player2 = sigma2;
      return out;
    }
    // Try player 1's best reply to sigma2 as the next strategy.
    MemorylessStrategy repaired = OwnedStrategy(h2, counter, Player::kOne);
    ValueVector w = ParityValueMdp(Restrict(game, repaired), parity).values;
    bool no_worse = true, better = false;
    for (int s = 0; s < n; ++s) {
      no_worse = no_worse && w[s] >= v[s] - 1e-12;
      better = better || w[s] > v[s] + kCertificateTolerance;
    }
    if (!(no_worse && better)) break;
    sigma1 = repaired;
  }
  TurnBasedResult fallback = Enumerate(game, parity);
  fallback.fell_back = true;
  fallback.iterations += out.iterations;
  return fallback;
}

}  // namespace

ConcurrentResult MultidiscountedValueConcurrent(const GameStructure& game,
                                                const DiscountSpec& spec,
                                                double tol,
                                                ConcurrentMethod method) {
  RequireValid(game);
  RequireDiscount(game, spec);
  RequireTolerance(tol);
  StopSpec stop = internal::ToStopSpec(spec);
  if (method == ConcurrentMethod::kShapley) {
    return SolveShapley(game, stop, tol);
  }
  return SolveStrategyIteration(game, stop, tol,
                                ValueVector(game.num_states(), 0.0));
}

TurnBasedResult ParityValueTurnBased(const GameStructure& game,
                                     const ParityObjective& parity,
                                     TurnBasedMethod method) {
  RequireValid(game);
  RequireParity(game, parity);
  if (!SatisfiesKind(game, StructureKind::kTurnBased)) {
    throw PreconditionError("structure is not turn-based");
  }
  return method == TurnBasedMethod::kEnumeration ? Enumerate(game, parity)
                                                 : Improve(game, parity);
}

LimitSchedule LimitSchedule::Default(const ParityObjective& parity) {
  LimitSchedule schedule;
  schedule.order.resize(parity.priority.size());
  std::iota(schedule.order.begin(), schedule.order.end(), 0);
  std::stable_sort(schedule.order.begin(), schedule.order.end(),
                   [&](int a, int b) {
                     return parity.priority[a] < parity.priority[b];
                   });
  return schedule;
}

namespace {

void RequireSchedule(const LimitSchedule& schedule,
                     const ParityObjective& parity) {
  const std::size_t n = parity.priority.size();
  std::vector<int> sorted = schedule.order;
  std::sort(sorted.begin(), sorted.end());
  bool permutation = sorted.size() == n;
  for (std::size_t i = 0; permutation && i < n; ++i) {
    permutation = sorted[i] == static_cast<int>(i);
  }
  if (!permutation) {
    throw PreconditionError("schedule order is not a permutation of the states");
  }
  if (schedule.k_min < 1 || schedule.k_max < schedule.k_min) {
    throw PreconditionError("ladder needs 1 <= k_min <= k_max");
  }
}

std::vector<int> Levels(const LimitSchedule& schedule,
                        const ParityObjective& parity) {
  std::vector<int> level(parity.priority.size(), 0);
  int current = 0;
  for (std::size_t i = 0; i < schedule.order.size(); ++i) {
    int s = schedule.order[i];
    if (i > 0 && parity.priority[s] != parity.priority[schedule.order[i - 1]]) {
      ++current;
    }
    level[s] = current;
  }
  return level;
}

StopSpec LadderStops(const LimitSchedule& schedule,
                     const ParityObjective& parity, int k) {
  auto level = Levels(schedule, parity);
  StopSpec spec;
  for (std::size_t s = 0; s < level.size(); ++s) {
    spec.stop.push_back(std::ldexp(1.0, -k * (level[s] + 1)));
    spec.reward.push_back(parity.priority[s] % 2 == 0 ? 1.0 : 0.0);
  }
  return spec;
}

}  // namespace

DiscountSpec LadderDiscounts(const LimitSchedule& schedule,
                             const ParityObjective& parity, int k) {
  RequireSchedule(schedule, parity);
  StopSpec stops = LadderStops(schedule, parity, k);
  DiscountSpec spec;
  spec.reward = stops.reward;
  for (double e : stops.stop) spec.lambda.push_back(1.0 - e);
  return spec;
}

LimitApproximation ParityValueConcurrentApprox(const GameStructure& game,
                                               const ParityObjective& parity,
                                               const LimitSchedule& schedule) {
  RequireValid(game);
  RequireParity(game, parity);
  RequireSchedule(schedule, parity);
  LimitApproximation out;
  ValueVector start(game.num_states(), 0.0);
  for (int k = schedule.k_min; k <= schedule.k_max; ++k) {
    StopSpec stops = LadderStops(schedule, parity, k);
    ConcurrentResult rung = SolveStrategyIteration(game, stops, 1e-10, start);
    RungRecord record;
    record.k = k;
    record.values = rung.values;
    if (!out.trace.empty()) {
      record.max_change = SupDistance(rung.values, out.trace.back().values);
    }
    out.trace.push_back(record);
    start = rung.values;
    if (out.trace.size() >= 3 && record.max_change < kRungStability) {
      out.converged = true;
      break;
    }
  }
  out.values = out.trace.back().values;
  return out;
}

}  // namespace stochrobust
