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
#include <limits>
#include <string>

#include "graph.h"
#include "solver_internal.h"
#include "stochrobust/chain_solver.h"
#include "stochrobust/errors.h"

namespace stochrobust {
namespace internal {

MemorylessStrategy ToStrategy(const MdpView& view,
                              const std::vector<int>& actions) {
  std::vector<int> moves(actions.size());
  for (std::size_t s = 0; s < actions.size(); ++s) {
    moves[s] = view.move_id(static_cast<int>(s), actions[s]);
  }
  return PureStrategy(view.controller, moves);
}

MarkovChain InducedChain(const MdpView& view,
                         const std::vector<int>& actions) {
  MarkovChain chain;
  chain.states = view.game->states;
  chain.delta.reserve(actions.size());
  for (std::size_t s = 0; s < actions.size(); ++s) {
    chain.delta.push_back(view.row(static_cast<int>(s), actions[s]));
  }
  return chain;
}

namespace {
constexpr int kMaxImprovementRounds = 1000;
constexpr long kMaxValueIterations = 2'000'000;
// Strict-improvement margin for exact policy improvement.
constexpr double kImprovementMargin = 1e-13;
}  // namespace

ValueVector PolicyIterationDiscounted(const MdpView& view,
                                      const StopSpec& spec, double sign,
                                      std::vector<int>* actions, int* rounds) {
  const int n = view.num_states();
  auto q_value = [&](int s, int a, const ValueVector& v) {
    return StepValue(spec.stop[s], spec.reward[s], view.Expect(s, a, v));
  };
  for (int round = 0; round < kMaxImprovementRounds; ++round) {
    ValueVector v = StoppingValues(InducedChain(view, *actions), spec);
    bool improved = false;
    for (int s = 0; s < n; ++s) {
      double current = sign * q_value(s, (*actions)[s], v);
      int best_a = (*actions)[s];
      for (int a = 0; a < view.num_actions(s); ++a) {
        double q = sign * q_value(s, a, v);
        if (q > current + kImprovementMargin) {
          current = q;
          best_a = a;
        }
      }
      if (best_a != (*actions)[s]) {
        (*actions)[s] = best_a;
        improved = true;
      }
    }
    if (!improved) return v;
    if (rounds != nullptr) ++*rounds;
  }
  throw InternalError("policy iteration did not terminate");
}

}  // namespace internal

namespace {

using internal::MdpView;
using internal::kImprovementMargin;
using internal::kMaxImprovementRounds;
using internal::kMaxValueIterations;

MdpView View(const GameStructure& mdp) {
  RequireValid(mdp);
  return MdpView{&mdp, Controller(mdp)};
}

double Sign(Player controller) {
  return controller == Player::kOne ? 1.0 : -1.0;
}

// Sub-MDP: alive states and, per state, allowed action positions.
struct SubMdp {
  std::vector<bool> alive;
  std::vector<std::vector<int>> allowed;
};

struct EndComponent {
  std::vector<int> states;
  std::vector<std::vector<int>> allowed;  // indexed by state, empty if absent
};

bool StaysInside(const MdpView& view, int s, int a,
                 const std::vector<int>& label, int want) {
  const Distribution& d = view.row(s, a);
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (InSupport(d[t]) && label[t] != want) return false;
  }
  return true;
}

// Maximal end components of the sub-MDP: prune actions that leave their SCC
// and states left without actions until nothing changes.
std::vector<EndComponent> EndComponents(const MdpView& view, SubMdp sub) {
  const int n = view.num_states();
  while (true) {
    internal::Adjacency adj(n);
    for (int s = 0; s < n; ++s) {
      if (!sub.alive[s]) continue;
      for (int a : sub.allowed[s]) {
        const Distribution& d = view.row(s, a);
        for (int t = 0; t < n; ++t) {
          if (InSupport(d[t])) adj[s].push_back(t);
        }
      }
    }
    auto sccs = internal::StronglyConnectedComponents(adj, sub.alive);
    std::vector<int> label(n, -1);
    for (std::size_t c = 0; c < sccs.size(); ++c) {
      for (int s : sccs[c]) label[s] = static_cast<int>(c);
    }
    bool changed = false;
    for (int s = 0; s < n; ++s) {
      if (!sub.alive[s]) continue;
      auto& acts = sub.allowed[s];
      auto keep = std::remove_if(acts.begin(), acts.end(), [&](int a) {
        return !StaysInside(view, s, a, label, label[s]);
      });
      if (keep != acts.end()) {
        acts.erase(keep, acts.end());
        changed = true;
      }
      if (acts.empty()) {
        sub.alive[s] = false;
        changed = true;
      }
    }
    if (changed) continue;
    std::vector<EndComponent> out;
    for (const auto& scc : sccs) {
      EndComponent ec;
      ec.states = scc;
      ec.allowed.assign(n, {});
      for (int s : scc) ec.allowed[s] = sub.allowed[s];
      out.push_back(std::move(ec));
    }
    std::sort(out.begin(), out.end(),
              [](const EndComponent& x, const EndComponent& y) {
                return x.states < y.states;
              });
    return out;
  }
}

struct WinningComponent {
  EndComponent ec;
  int witness = 0;  // a state of minimum (even) priority
};

void CollectWinning(const MdpView& view, const std::vector<int>& priority,
                    const SubMdp& sub, std::vector<WinningComponent>* out) {
  for (auto& ec : EndComponents(view, sub)) {
    int witness = ec.states.front();
    for (int s : ec.states) {
      if (priority[s] < priority[witness]) witness = s;
    }
    const int low = priority[witness];
    if (low % 2 == 0) {
      out->push_back({std::move(ec), witness});
      continue;
    }
    SubMdp inner;
    inner.alive.assign(view.num_states(), false);
    inner.allowed = ec.allowed;
    for (int s : ec.states) inner.alive[s] = priority[s] != low;
    CollectWinning(view, priority, inner, out);
  }
}

// Inside a winning component: lowest action that moves one attractor layer
// closer to the witness; the witness keeps its lowest allowed action.
void WitnessStrategy(const MdpView& view, const WinningComponent& w,
                     std::vector<int>* actions) {
  const int n = view.num_states();
  std::vector<bool> in(n, false), done(n, false);
  for (int s : w.ec.states) in[s] = true;
  done[w.witness] = true;
  (*actions)[w.witness] = w.ec.allowed[w.witness].front();
  std::size_t settled = 1;
  while (settled < w.ec.states.size()) {
    std::vector<int> layer;
    for (int s : w.ec.states) {
      if (done[s]) continue;
      for (int a : w.ec.allowed[s]) {
        const Distribution& d = view.row(s, a);
        bool hits = false;
        for (int t = 0; t < n && !hits; ++t) hits = InSupport(d[t]) && done[t];
        if (hits) {
          (*actions)[s] = a;
          layer.push_back(s);
          break;
        }
      }
    }
    if (layer.empty()) throw InternalError("end component is not connected");
    for (int s : layer) done[s] = true;
    settled += layer.size();
  }
}

// Maximal probability of reaching `goal`, with a pure strategy attaining it.
// Actions already fixed in `actions` for goal states are kept.
ValueVector MaxReachability(const MdpView& view, const std::vector<bool>& goal,
                            std::vector<int>* actions, SolveResult* stats) {
  const int n = view.num_states();
  auto supported = [&](int s, int a, const std::vector<bool>& set, bool all) {
    const Distribution& d = view.row(s, a);
    for (int t = 0; t < n; ++t) {
      if (!InSupport(d[t])) continue;
      if (all && !set[t]) return false;
      if (!all && set[t]) return true;
    }
    return all;
  };

  // Almost-sure region: greatest U such that the attractor of goal within U,
  // using actions that stay in U, is U itself.
  std::vector<bool> sure(n, true);
  std::vector<int> sure_action(n, -1);
  while (true) {
    std::vector<bool> reach = goal;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int s = 0; s < n; ++s) {
        if (reach[s] || !sure[s]) continue;
        for (int a = 0; a < view.num_actions(s); ++a) {
          if (supported(s, a, sure, true) && supported(s, a, reach, false)) {
            reach[s] = true;
            sure_action[s] = a;
            grew = true;
            break;
          }
        }
      }
    }
    if (reach == sure) break;
    sure = reach;
  }

  // Positive region: some action makes progress toward goal.
  std::vector<bool> positive = goal;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int s = 0; s < n; ++s) {
      if (positive[s]) continue;
      for (int a = 0; a < view.num_actions(s); ++a) {
        if (supported(s, a, positive, false)) {
          positive[s] = true;
          grew = true;
          break;
        }
      }
    }
  }

  ValueVector v(n, 0.0);
  std::vector<int> open;
  for (int s = 0; s < n; ++s) {
    if (sure[s]) {
      v[s] = 1.0;
      if (!goal[s]) (*actions)[s] = sure_action[s];
    } else if (positive[s]) {
      open.push_back(s);
    }
  }
  if (open.empty()) return v;

  // Value iteration from below on the undecided states.
  double step = 0.0;
  long it = 0;
  do {
    step = 0.0;
    for (int s : open) {
      double best = 0.0;
      for (int a = 0; a < view.num_actions(s); ++a) {
        best = std::max(best, view.Expect(s, a, v));
      }
      step = std::max(step, best - v[s]);
      v[s] = best;
    }
    ++it;
  } while (step > kParityTolerance * 1e-2 && it < kMaxValueIterations);
  stats->iterations += static_cast<int>(it);
  stats->residual = step;

  // Near-optimal actions that make progress, chosen layer by layer from the
  // almost-sure region so the strategy cannot stall in a loop.
  std::vector<bool> settled = sure;
  std::vector<bool> is_open(n, false);
  for (int s : open) is_open[s] = true;
  std::vector<bool> fixed(n, false);
  grew = true;
  while (grew) {
    grew = false;
    for (int s : open) {
      if (fixed[s]) continue;
      double best = 0.0;
      for (int a = 0; a < view.num_actions(s); ++a) {
        best = std::max(best, view.Expect(s, a, v));
      }
      for (int a = 0; a < view.num_actions(s); ++a) {
        if (view.Expect(s, a, v) >= best - 1e-9 &&
            supported(s, a, settled, false)) {
          (*actions)[s] = a;
          fixed[s] = true;
          grew = true;
          break;
        }
      }
    }
    for (int s : open) settled[s] = settled[s] || fixed[s];
  }
  for (int s : open) {
    if (!fixed[s]) {
      // Fall back to any progressing action; improvement repairs it.
      for (int a = 0; a < view.num_actions(s); ++a) {
        if (supported(s, a, positive, false)) {
          (*actions)[s] = a;
          break;
        }
      }
    }
  }

  // Exact evaluation plus strict policy improvement on the open states.
  for (int round = 0; round < kMaxImprovementRounds; ++round) {
    v = ReachabilityValues(internal::InducedChain(view, *actions), goal);
    bool improved = false;
    for (int s : open) {
      int best_a = (*actions)[s];
      double best = v[s];
      for (int a = 0; a < view.num_actions(s); ++a) {
        double q = view.Expect(s, a, v);
        if (q > best + kImprovementMargin) {
          best = q;
          best_a = a;
        }
      }
      if (best_a != (*actions)[s]) {
        (*actions)[s] = best_a;
        improved = true;
      }
    }
    if (!improved) return v;
    ++stats->improvements;
  }
  throw InternalError("reachability policy improvement did not terminate");
}

SolveResult SolveParityAsMaximizer(const MdpView& view,
                                   const std::vector<int>& priority) {
  const int n = view.num_states();
  SubMdp all;
  all.alive.assign(n, true);
  all.allowed.resize(n);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < view.num_actions(s); ++a) all.allowed[s].push_back(a);
  }
  std::vector<WinningComponent> winning;
  CollectWinning(view, priority, all, &winning);

  std::vector<int> actions(n, 0);
  std::vector<bool> goal(n, false);
  for (const auto& w : winning) {
    WitnessStrategy(view, w, &actions);
    for (int s : w.ec.states) goal[s] = true;
  }
  SolveResult result;
  result.values = MaxReachability(view, goal, &actions, &result);
  result.strategy = internal::ToStrategy(view, actions);
  result.tolerance = kParityTolerance;
  return result;
}

}  // namespace

Player Controller(const GameStructure& mdp) {
  switch (Classify(mdp)) {
    case StructureKind::kMarkovChain:
    case StructureKind::kMdpPlayer1:
      return Player::kOne;
    case StructureKind::kMdpPlayer2:
      return Player::kTwo;
    default:
      throw PreconditionError("structure is not an MDP");
  }
}

ValueVector BellmanMdp(const GameStructure& mdp, const DiscountSpec& spec,
                       const ValueVector& v) {
  MdpView view = View(mdp);
  RequireDiscount(mdp, spec);
  const double sign = Sign(view.controller);
  ValueVector out(view.num_states());
  for (int s = 0; s < view.num_states(); ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < view.num_actions(s); ++a) {
      best = std::max(best, sign * view.Expect(s, a, v));
    }
    out[s] = (1.0 - spec.lambda[s]) * spec.reward[s] +
             spec.lambda[s] * sign * best;
  }
  return out;
}

SolveResult MultidiscountedValueMdp(const GameStructure& mdp,
                                    const DiscountSpec& spec, double tol) {
  MdpView view = View(mdp);
  RequireDiscount(mdp, spec);
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  const int n = view.num_states();
  const double sign = Sign(view.controller);
  const double lambda_max =
      *std::max_element(spec.lambda.begin(), spec.lambda.end());
  const double threshold = tol * (1.0 - lambda_max) / (2.0 * lambda_max);

  auto q_value = [&](int s, int a, const ValueVector& v) {
    return (1.0 - spec.lambda[s]) * spec.reward[s] +
           spec.lambda[s] * view.Expect(s, a, v);
  };
  auto greedy = [&](int s, const ValueVector& v) {
    int best_a = 0;
    double best = sign * q_value(s, 0, v);
    for (int a = 1; a < view.num_actions(s); ++a) {
      double q = sign * q_value(s, a, v);
      if (q > best + kImprovementMargin) {
        best = q;
        best_a = a;
      }
    }
    return best_a;
  };

  SolveResult result;
  result.tolerance = tol;
  ValueVector v(n, 0.0), next(n);
  long it = 0;
  double step = 0.0;
  do {
    step = 0.0;
    for (int s = 0; s < n; ++s) {
      next[s] = q_value(s, greedy(s, v), v);
      step = std::max(step, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    ++it;
  } while (step > threshold && it < kMaxValueIterations);
  result.iterations = static_cast<int>(it);
  result.residual = step;

  std::vector<int> actions(n);
  for (int s = 0; s < n; ++s) actions[s] = greedy(s, v);
  v = internal::PolicyIterationDiscounted(view, internal::ToStopSpec(spec),
                                          sign, &actions,
                                          &result.improvements);
  result.values = v;
  result.strategy = internal::ToStrategy(view, actions);
  return result;
}

std::vector<MaximalEndComponent> MecDecomposition(const GameStructure& mdp) {
  MdpView view = View(mdp);
  const int n = view.num_states();
  SubMdp all;
  all.alive.assign(n, true);
  all.allowed.resize(n);
  for (int s = 0; s < n; ++s) {
    for (int a = 0; a < view.num_actions(s); ++a) all.allowed[s].push_back(a);
  }
  std::vector<MaximalEndComponent> out;
  for (const auto& ec : EndComponents(view, all)) {
    MaximalEndComponent mec;
    mec.states = ec.states;
    for (int s : ec.states) {
      std::vector<int> moves;
      for (int a : ec.allowed[s]) moves.push_back(view.move_id(s, a));
      mec.moves.push_back(std::move(moves));
    }
    out.push_back(std::move(mec));
  }
  return out;
}

SolveResult ParityValueMdp(const GameStructure& mdp,
                           const ParityObjective& parity) {
  MdpView view = View(mdp);
  RequireParity(mdp, parity);
  if (view.controller == Player::kOne) {
    return SolveParityAsMaximizer(view, parity.priority);
  }
  std::vector<int> shifted = parity.priority;
  for (int& p : shifted) ++p;
  SolveResult result = SolveParityAsMaximizer(view, shifted);
  for (double& x : result.values) x = 1.0 - x;
  return result;
}

ValueVector EvaluateChain(const MarkovChain& chain,
                          const Objective& objective) {
  if (const auto* parity = std::get_if<ParityObjective>(&objective)) {
    return ParityValues(chain, *parity);
  }
  const auto& spec = std::get<DiscountSpec>(objective);
  bool moderate = std::all_of(spec.lambda.begin(), spec.lambda.end(),
                              [](double l) { return l <= kMaxChainDiscount; });
  return moderate ? MultidiscountedValues(chain, spec)
                  : StableDiscountedValues(chain, spec);
}

ValueVector StrategyEnumerationOracle(const GameStructure& mdp,
                                      const Objective& objective) {
  MdpView view = View(mdp);
  if (const auto* parity = std::get_if<ParityObjective>(&objective)) {
    RequireParity(mdp, *parity);
  } else {
    RequireDiscount(mdp, std::get<DiscountSpec>(objective));
  }
  const int n = view.num_states();
  double count = 1.0;
  for (int s = 0; s < n; ++s) count *= view.num_actions(s);
  if (count > kEnumerationBudget) {
    throw BudgetExceededError("strategy space of " + std::to_string(count) +
                              " exceeds the enumeration budget");
  }
  const double sign = Sign(view.controller);
  ValueVector best(n, -std::numeric_limits<double>::infinity());
  std::vector<int> actions(n, 0);
  while (true) {
    ValueVector v = EvaluateChain(internal::InducedChain(view, actions),
                                  objective);
    for (int s = 0; s < n; ++s) best[s] = std::max(best[s], sign * v[s]);
    int s = 0;
    while (s < n && ++actions[s] == view.num_actions(s)) actions[s++] = 0;
    if (s == n) break;
  }
  for (double& x : best) x *= sign;
  return best;
}

}  // namespace stochrobust
