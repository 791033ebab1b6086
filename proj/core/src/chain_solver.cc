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

#include "stochrobust/chain_solver.h"

#include <algorithm>
#include <set>
#include <string>

#include "graph.h"
#include "linear.h"
#include "solver_internal.h"
#include "stochrobust/errors.h"

namespace stochrobust {
namespace {

void RequireChain(const MarkovChain& chain) { RequireValid(FromChain(chain)); }

void RequireLambda(const MarkovChain& chain, const DiscountSpec& spec,
                   double max_lambda) {
  if (spec.lambda.size() != static_cast<std::size_t>(chain.num_states())) {
    throw PreconditionError("discount map does not cover every state");
  }
  for (int s = 0; s < chain.num_states(); ++s) {
    double l = spec.lambda[s];
    if (!(l > 0.0 && l <= max_lambda && l < 1.0)) {
      throw PreconditionError("discount factor of " + chain.states[s] +
                              " is outside the supported range");
    }
  }
}

void RequireReward(const MarkovChain& chain, const DiscountSpec& spec) {
  if (spec.reward.size() != static_cast<std::size_t>(chain.num_states())) {
    throw PreconditionError("reward map does not cover every state");
  }
  for (double r : spec.reward) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw PreconditionError("rewards must lie in [0,1]");
    }
  }
}

internal::Adjacency SupportGraph(const MarkovChain& chain) {
  internal::Adjacency adj(chain.num_states());
  for (int s = 0; s < chain.num_states(); ++s) {
    for (int t = 0; t < chain.num_states(); ++t) {
      if (InSupport(chain.delta[s][t])) adj[s].push_back(t);
    }
  }
  return adj;
}

}  // namespace

BsccDecomposition DecomposeBottomSccs(const MarkovChain& chain) {
  RequireChain(chain);
  const int n = chain.num_states();
  auto adj = SupportGraph(chain);
  auto sccs = internal::StronglyConnectedComponents(adj,
                                                    std::vector<bool>(n, true));
  std::vector<int> component(n, -1);
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    for (int s : sccs[c]) component[s] = static_cast<int>(c);
  }
  BsccDecomposition out;
  std::vector<bool> bottom_state(n, false);
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    bool closed = true;
    for (int s : sccs[c]) {
      for (int t : adj[s]) closed = closed && component[t] == component[s];
    }
    if (!closed) continue;
    out.bottom.push_back(sccs[c]);
    for (int s : sccs[c]) bottom_state[s] = true;
  }
  std::sort(out.bottom.begin(), out.bottom.end());
  for (int s = 0; s < n; ++s) {
    if (!bottom_state[s]) out.transient.push_back(s);
  }
  return out;
}

ValueVector ReachabilityValues(const MarkovChain& chain,
                               const std::vector<bool>& target) {
  RequireChain(chain);
  const int n = chain.num_states();
  if (static_cast<int>(target.size()) != n) {
    throw PreconditionError("target mask does not cover every state");
  }
  // Target states are absorbing for the purpose of reachability.
  auto adj = SupportGraph(chain);
  for (int s = 0; s < n; ++s) {
    if (target[s]) adj[s].clear();
  }
  std::vector<bool> reach = internal::BackwardReachable(adj, target);
  std::vector<bool> zero(n);
  for (int s = 0; s < n; ++s) zero[s] = !reach[s];
  // Everything that cannot drift into a zero state reaches the target surely.
  std::vector<bool> risky = internal::BackwardReachable(adj, zero);

  ValueVector value(n, 0.0);
  std::vector<int> unknown;
  std::vector<int> position(n, -1);
  for (int s = 0; s < n; ++s) {
    if (target[s] || !risky[s]) {
      value[s] = 1.0;
    } else if (reach[s]) {
      position[s] = static_cast<int>(unknown.size());
      unknown.push_back(s);
    }
  }
  const int m = static_cast<int>(unknown.size());
  if (m == 0) return value;
  internal::Rows a(m, std::vector<double>(m, 0.0));
  std::vector<double> b(m, 0.0);
  for (int i = 0; i < m; ++i) {
    int s = unknown[i];
    a[i][i] = 1.0;
    for (int t = 0; t < n; ++t) {
      double p = chain.delta[s][t];
      if (!InSupport(p)) continue;
      if (position[t] >= 0) {
        a[i][position[t]] -= p;
      } else {
        b[i] += p * value[t];
      }
    }
  }
  auto x = internal::Solve(a, b);
  for (int i = 0; i < m; ++i) {
    value[unknown[i]] = std::clamp(x[i], 0.0, 1.0);
  }
  return value;
}

ValueVector ParityValues(const MarkovChain& chain,
                         const ParityObjective& parity) {
  RequireParity(FromChain(chain), parity);
  auto decomposition = DecomposeBottomSccs(chain);
  std::vector<bool> winning(chain.num_states(), false);
  for (const auto& bottom : decomposition.bottom) {
    int min_priority = parity.priority[bottom.front()];
    for (int s : bottom) {
      min_priority = std::min(min_priority, parity.priority[s]);
    }
    if (min_priority % 2 != 0) continue;
    for (int s : bottom) winning[s] = true;
  }
  return ReachabilityValues(chain, winning);
}

std::vector<std::vector<double>> MeanDiscountedTime(const MarkovChain& chain,
                                                    const DiscountSpec& spec) {
  RequireChain(chain);
  RequireLambda(chain, spec, kMaxChainDiscount);
  const int n = chain.num_states();
  internal::Rows a(n, std::vector<double>(n, 0.0));
  for (int t = 0; t < n; ++t) {
    a[t][t] = 1.0;
    for (int z = 0; z < n; ++z) a[t][z] -= spec.lambda[t] * chain.delta[t][z];
  }
  internal::Rows columns(n, std::vector<double>(n, 0.0));
  for (int s = 0; s < n; ++s) columns[s][s] = 1.0 - spec.lambda[s];
  auto solved = internal::SolveColumns(a, columns);
  std::vector<std::vector<double>> mt(n, std::vector<double>(n));
  for (int s = 0; s < n; ++s) {
    for (int s0 = 0; s0 < n; ++s0) mt[s0][s] = solved[s][s0];
  }
  return mt;
}

ValueVector MultidiscountedValues(const MarkovChain& chain,
                                  const DiscountSpec& spec) {
  RequireChain(chain);
  RequireLambda(chain, spec, kMaxChainDiscount);
  RequireReward(chain, spec);
  const int n = chain.num_states();
  internal::Rows a(n, std::vector<double>(n, 0.0));
  std::vector<double> b(n);
  for (int s = 0; s < n; ++s) {
    a[s][s] = 1.0;
    for (int t = 0; t < n; ++t) a[s][t] -= spec.lambda[s] * chain.delta[s][t];
    b[s] = (1.0 - spec.lambda[s]) * spec.reward[s];
  }
  return internal::Solve(a, b);
}

ValueVector StableDiscountedValues(const MarkovChain& chain,
                                   const DiscountSpec& spec) {
  RequireChain(chain);
  RequireLambda(chain, spec, 1.0);
  RequireReward(chain, spec);
  return internal::StoppingValues(chain, internal::ToStopSpec(spec));
}

namespace internal {

StopSpec ToStopSpec(const DiscountSpec& spec) {
  StopSpec out;
  out.reward = spec.reward;
  out.stop.reserve(spec.lambda.size());
  for (double l : spec.lambda) out.stop.push_back(1.0 - l);
  return out;
}

ValueVector StoppingValues(const MarkovChain& chain, const StopSpec& spec) {
  const int n = chain.num_states();
  // Row k: v_k = b_k + sum_j q[k][j] v_j, and stop[k] is the mass leaving
  // the system. All updates add nonnegative terms, so nothing cancels.
  Rows q(n, std::vector<double>(n));
  std::vector<double> b(n), stop(n), diag(n);
  for (int k = 0; k < n; ++k) {
    stop[k] = spec.stop[k];
    b[k] = stop[k] * spec.reward[k];
    for (int j = 0; j < n; ++j) q[k][j] = (1.0 - stop[k]) * chain.delta[k][j];
  }
  for (int k = n - 1; k >= 0; --k) {
    double d = stop[k];
    for (int j = 0; j < k; ++j) d += q[k][j];
    diag[k] = d;
    for (int i = 0; i < k; ++i) {
      double w = q[i][k];
      if (w == 0.0) continue;
      w /= d;
      for (int j = 0; j < k; ++j) q[i][j] += w * q[k][j];
      b[i] += w * b[k];
      stop[i] += w * stop[k];
    }
  }
  ValueVector v(n);
  for (int k = 0; k < n; ++k) {
    double acc = b[k];
    for (int j = 0; j < k; ++j) acc += q[k][j] * v[j];
    v[k] = std::clamp(acc / diag[k], 0.0, 1.0);
  }
  return v;
}

}  // namespace internal

MarkovChain AugmentedChain(const MarkovChain& chain, const DiscountSpec& spec) {
  RequireChain(chain);
  RequireLambda(chain, spec, 1.0);
  const int n = chain.num_states();
  std::set<std::string> taken(chain.states.begin(), chain.states.end());
  MarkovChain out;
  out.states = chain.states;
  for (int s = 0; s < n; ++s) {
    std::string copy = chain.states[s] + "'";
    while (taken.count(copy) != 0) copy += "'";
    taken.insert(copy);
    out.states.push_back(copy);
  }
  out.delta.assign(2 * n, Distribution(2 * n, 0.0));
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      out.delta[s][t] = spec.lambda[s] * chain.delta[s][t];
    }
    out.delta[s][n + s] = 1.0 - spec.lambda[s];
    out.delta[n + s][n + s] = 1.0;
  }
  return out;
}

namespace {

Distribution ExitLinear(const MarkovChain& chain, const std::vector<int>& inside,
                        const std::vector<int>& position, int start) {
  const int n = chain.num_states();
  const int m = static_cast<int>(inside.size());
  internal::Rows a(m, std::vector<double>(m, 0.0));
  internal::Rows columns;
  std::vector<int> outside;
  for (int t = 0; t < n; ++t) {
    if (position[t] < 0) outside.push_back(t);
  }
  columns.assign(outside.size(), std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    int s = inside[i];
    a[i][i] = 1.0;
    for (int t = 0; t < n; ++t) {
      if (position[t] >= 0) a[i][position[t]] -= chain.delta[s][t];
    }
    for (std::size_t c = 0; c < outside.size(); ++c) {
      columns[c][i] = chain.delta[s][outside[c]];
    }
  }
  auto x = internal::SolveColumns(a, columns);
  Distribution out(n, 0.0);
  for (std::size_t c = 0; c < outside.size(); ++c) {
    out[outside[c]] = std::max(0.0, x[c][position[start]]);
  }
  return out;
}

// Sums over functions f : C -> S that pick a supported successor for every
// state of C. Only f whose graph is acyclic contribute, to the denominator
// and to the numerator at the exit point of the start's path. Self-loops are
// cycles, so they are never enumerated.
Distribution ExitFreidlinWentzell(const MarkovChain& chain,
                                  const std::vector<int>& inside,
                                  const std::vector<int>& position, int start) {
  const int n = chain.num_states();
  const int m = static_cast<int>(inside.size());
  if (m > kMaxFreidlinWentzellSize) {
    throw BudgetExceededError("exit set has " + std::to_string(m) +
                              " states; the limit is " +
                              std::to_string(kMaxFreidlinWentzellSize));
  }
  std::vector<std::vector<int>> choices(m);
  double count = 1.0;
  for (int i = 0; i < m; ++i) {
    int s = inside[i];
    for (int t = 0; t < n; ++t) {
      if (t != s && InSupport(chain.delta[s][t])) choices[i].push_back(t);
    }
    count *= static_cast<double>(choices[i].size());
  }
  if (count > kFreidlinWentzellBudget) {
    throw BudgetExceededError("too many functions to enumerate");
  }

  std::vector<int> digit(m, 0);
  // Per-state exit point under the current f; -1 unknown, -2 on the stack.
  std::vector<int> exit(m);
  std::vector<int> path;
  Distribution numerator(n, 0.0);
  double denominator = 0.0;
  while (true) {
    std::fill(exit.begin(), exit.end(), -1);
    bool acyclic = true;
    for (int i = 0; i < m && acyclic; ++i) {
      path.clear();
      int cur = i;
      while (cur >= 0 && exit[cur] == -1) {
        exit[cur] = -2;
        path.push_back(cur);
        int next = choices[cur][digit[cur]];
        cur = position[next];
        if (cur < 0) {
          for (int p : path) exit[p] = next;
          path.clear();
        }
      }
      if (cur >= 0 && exit[cur] == -2) {
        acyclic = false;
      } else if (cur >= 0) {
        for (int p : path) exit[p] = exit[cur];
      }
    }
    if (acyclic) {
      double weight = 1.0;
      for (int i = 0; i < m; ++i) {
        weight *= chain.delta[inside[i]][choices[i][digit[i]]];
      }
      denominator += weight;
      numerator[exit[position[start]]] += weight;
    }
    int i = 0;
    while (i < m && ++digit[i] == static_cast<int>(choices[i].size())) {
      digit[i++] = 0;
    }
    if (i == m) break;
  }
  if (!(denominator > 0.0)) {
    throw InternalError("no acyclic exit function has positive weight");
  }
  for (double& x : numerator) x /= denominator;
  return numerator;
}

}  // namespace

Distribution ExitDistribution(const MarkovChain& chain, const ExitQuery& query,
                              ExitMethod method) {
  RequireChain(chain);
  const int n = chain.num_states();
  std::vector<int> position(n, -1);
  std::vector<int> inside;
  for (int s : query.inside) {
    if (s < 0 || s >= n) throw PreconditionError("exit set names no state");
    if (position[s] >= 0) continue;
    position[s] = static_cast<int>(inside.size());
    inside.push_back(s);
  }
  if (inside.empty() || static_cast<int>(inside.size()) == n) {
    throw PreconditionError("exit set must be a nonempty proper subset");
  }
  if (query.start < 0 || query.start >= n || position[query.start] < 0) {
    throw PreconditionError("start state is not in the exit set");
  }
  std::vector<bool> outside(n);
  for (int s = 0; s < n; ++s) outside[s] = position[s] < 0;
  auto can_exit = internal::BackwardReachable(SupportGraph(chain), outside);
  for (int s : inside) {
    if (!can_exit[s]) {
      throw PreconditionError("state " + chain.states[s] +
                              " cannot leave the exit set");
    }
  }
  return method == ExitMethod::kLinear
             ? ExitLinear(chain, inside, position, query.start)
             : ExitFreidlinWentzell(chain, inside, position, query.start);
}

}  // namespace stochrobust
