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

#include "stochrobust/game_core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "stochrobust/errors.h"

namespace stochrobust {
namespace {

std::string MoveName(const GameStructure& game, int move) {
  if (move >= 0 && move < static_cast<int>(game.moves.size())) {
    return game.moves[move];
  }
  return "#" + std::to_string(move);
}

std::string PairName(const GameStructure& game, int s, int i, int j) {
  return MoveName(game, game.gamma1[s][i]) + "," +
         MoveName(game, game.gamma2[s][j]);
}

void CheckDistribution(const GameStructure& game, int s,
                       const std::string& where, const Distribution& dist,
                       std::vector<Diagnostic>* out) {
  const std::string& state = game.states[s];
  if (dist.empty()) {
    out->push_back({"missing transition", state, where,
                    "no successor distribution"});
    return;
  }
  if (static_cast<int>(dist.size()) != game.num_states()) {
    out->push_back({"dimension", state, where,
                    "distribution has " + std::to_string(dist.size()) +
                        " entries for " + std::to_string(game.num_states()) +
                        " states"});
    return;
  }
  double sum = 0.0;
  bool support = false;
  for (int t = 0; t < game.num_states(); ++t) {
    double p = dist[t];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      out->push_back({"negative probability", state, where,
                      "entry for " + game.states[t] + " is not in [0,1]"});
      return;
    }
    sum += p;
    support = support || InSupport(p);
  }
  if (!support) {
    out->push_back({"empty support", state, where, "all entries are zero"});
    return;
  }
  if (std::abs(sum - 1.0) > kDistributionSumTolerance) {
    std::ostringstream detail;
    detail.precision(17);
    detail << "sums to " << sum;
    out->push_back({"distribution sum", state, where, detail.str()});
  }
}

void CheckMoveSet(const GameStructure& game, int s, const char* player,
                  const std::vector<int>& gamma, std::vector<Diagnostic>* out) {
  const std::string& state = game.states[s];
  if (gamma.empty()) {
    out->push_back({"empty move set", state, "",
                    std::string("player ") + player + " has no moves"});
    return;
  }
  std::set<int> seen;
  for (int m : gamma) {
    if (m < 0 || m >= static_cast<int>(game.moves.size())) {
      out->push_back({"unknown move", state, MoveName(game, m),
                      std::string("player ") + player +
                          " references an undeclared move"});
    } else if (!seen.insert(m).second) {
      out->push_back({"duplicate move", state, game.moves[m],
                      std::string("player ") + player + " lists it twice"});
    }
  }
}

// Shared body of the per-entry distance computations.
template <typename Fn>
void ForEachEntryPair(const GameStructure& a, const GameStructure& b, Fn fn) {
  for (int s = 0; s < a.num_states(); ++s) {
    for (std::size_t k = 0; k < a.delta[s].size(); ++k) {
      const Distribution& p = a.delta[s][k];
      const Distribution& q = b.delta[s][k];
      for (int t = 0; t < a.num_states(); ++t) fn(p[t], q[t]);
    }
  }
}

GameStructure RestrictImpl(const GameStructure& game,
                           const MemorylessStrategy& strategy) {
  RequireValid(game, strategy);
  GameStructure out;
  out.states = game.states;
  out.moves = game.moves;
  int bottom = game.MoveIndex(kNoMove);
  if (bottom < 0) {
    bottom = static_cast<int>(out.moves.size());
    out.moves.emplace_back(kNoMove);
  }
  const int n = game.num_states();
  const bool first = strategy.owner == Player::kOne;
  out.gamma1.resize(n);
  out.gamma2.resize(n);
  out.delta.resize(n);
  for (int s = 0; s < n; ++s) {
    const std::vector<int>& other = first ? game.gamma2[s] : game.gamma1[s];
    (first ? out.gamma1 : out.gamma2)[s] = {bottom};
    (first ? out.gamma2 : out.gamma1)[s] = other;
    out.delta[s].assign(other.size(), Distribution(n, 0.0));
    for (const MoveWeight& w : strategy.assignment[s]) {
      int pos = MovePosition(game, s, strategy.owner, w.move);
      for (std::size_t o = 0; o < other.size(); ++o) {
        const Distribution& row =
            first ? game.transition(s, pos, static_cast<int>(o))
                  : game.transition(s, static_cast<int>(o), pos);
        Distribution& target = out.delta[s][o];
        for (int t = 0; t < n; ++t) target[t] += w.probability * row[t];
      }
    }
  }
  return out;
}

}  // namespace

std::string_view KindName(StructureKind kind) {
  switch (kind) {
    case StructureKind::kConcurrent:
      return "concurrent";
    case StructureKind::kTurnBased:
      return "turn-based";
    case StructureKind::kMdpPlayer1:
      return "mdp-player1";
    case StructureKind::kMdpPlayer2:
      return "mdp-player2";
    case StructureKind::kMarkovChain:
      return "markov-chain";
  }
  return "concurrent";
}

std::optional<StructureKind> ParseKind(std::string_view name) {
  for (StructureKind k :
       {StructureKind::kConcurrent, StructureKind::kTurnBased,
        StructureKind::kMdpPlayer1, StructureKind::kMdpPlayer2,
        StructureKind::kMarkovChain}) {
    if (KindName(k) == name) return k;
  }
  return std::nullopt;
}

int GameStructure::StateIndex(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int GameStructure::MoveIndex(std::string_view name) const {
  auto it = std::find(moves.begin(), moves.end(), name);
  return it == moves.end() ? -1 : static_cast<int>(it - moves.begin());
}

GameStructure FromChain(const MarkovChain& chain) {
  GameStructure game;
  game.states = chain.states;
  game.moves = {std::string(kNoMove)};
  const int n = chain.num_states();
  game.gamma1.assign(n, {0});
  game.gamma2.assign(n, {0});
  game.delta.resize(n);
  for (int s = 0; s < n; ++s) game.delta[s] = {chain.delta[s]};
  return game;
}

MarkovChain ToChain(const GameStructure& game) {
  MarkovChain chain;
  chain.states = game.states;
  chain.delta.resize(game.num_states());
  for (int s = 0; s < game.num_states(); ++s) {
    if (game.gamma1[s].size() != 1 || game.gamma2[s].size() != 1) {
      throw PreconditionError("state " + game.states[s] +
                              " has a move choice; not a Markov chain");
    }
    chain.delta[s] = game.transition(s, 0, 0);
  }
  return chain;
}

MemorylessStrategy PureStrategy(Player owner, const std::vector<int>& moves) {
  MemorylessStrategy strategy;
  strategy.owner = owner;
  strategy.assignment.reserve(moves.size());
  for (int m : moves) strategy.assignment.push_back({{m, 1.0}});
  return strategy;
}

bool IsPure(const MemorylessStrategy& strategy) {
  for (const auto& row : strategy.assignment) {
    int used = 0;
    for (const MoveWeight& w : row) used += InSupport(w.probability) ? 1 : 0;
    if (used != 1) return false;
  }
  return true;
}

int MovePosition(const GameStructure& game, int s, Player owner, int move) {
  const std::vector<int>& gamma =
      owner == Player::kOne ? game.gamma1[s] : game.gamma2[s];
  auto it = std::find(gamma.begin(), gamma.end(), move);
  return it == gamma.end() ? -1 : static_cast<int>(it - gamma.begin());
}

std::vector<Diagnostic> ValidateStructure(const GameStructure& game) {
  std::vector<Diagnostic> out;
  const int n = game.num_states();
  if (n == 0) {
    out.push_back({"no states", "", "", "structure declares no states"});
    return out;
  }
  {
    std::set<std::string> seen;
    for (const auto& s : game.states) {
      if (!seen.insert(s).second) {
        out.push_back({"duplicate identifier", s, "", "state declared twice"});
      }
    }
    seen.clear();
    for (const auto& m : game.moves) {
      if (!seen.insert(m).second) {
        out.push_back({"duplicate identifier", "", m, "move declared twice"});
      }
    }
  }
  if (static_cast<int>(game.gamma1.size()) != n ||
      static_cast<int>(game.gamma2.size()) != n ||
      static_cast<int>(game.delta.size()) != n) {
    out.push_back({"dimension", "", "",
                   "move sets or transitions not given for every state"});
    return out;
  }
  for (int s = 0; s < n; ++s) {
    std::size_t before = out.size();
    CheckMoveSet(game, s, "1", game.gamma1[s], &out);
    CheckMoveSet(game, s, "2", game.gamma2[s], &out);
    if (out.size() != before) continue;
    const std::size_t expected = game.gamma1[s].size() * game.gamma2[s].size();
    if (game.delta[s].size() != expected) {
      out.push_back({"missing transition", game.states[s], "",
                     "expected " + std::to_string(expected) +
                         " distributions, found " +
                         std::to_string(game.delta[s].size())});
      continue;
    }
    for (int i = 0; i < game.num_moves(s, Player::kOne); ++i) {
      for (int j = 0; j < game.num_moves(s, Player::kTwo); ++j) {
        CheckDistribution(game, s, PairName(game, s, i, j),
                          game.transition(s, i, j), &out);
      }
    }
  }
  return out;
}

std::vector<Diagnostic> ValidateStrategy(const GameStructure& game,
                                         const MemorylessStrategy& strategy) {
  std::vector<Diagnostic> out;
  if (static_cast<int>(strategy.assignment.size()) != game.num_states()) {
    out.push_back({"dimension", "", "", "strategy does not cover every state"});
    return out;
  }
  for (int s = 0; s < game.num_states(); ++s) {
    double sum = 0.0;
    for (const MoveWeight& w : strategy.assignment[s]) {
      if (MovePosition(game, s, strategy.owner, w.move) < 0) {
        out.push_back({"unavailable move", game.states[s],
                       MoveName(game, w.move),
                       "strategy plays a move outside the owner's move set"});
      }
      if (!(w.probability >= 0.0)) {
        out.push_back({"negative probability", game.states[s],
                       MoveName(game, w.move), "negative move weight"});
      }
      sum += w.probability;
    }
    if (std::abs(sum - 1.0) > kDistributionSumTolerance) {
      out.push_back({"distribution sum", game.states[s], "",
                     "move weights do not sum to one"});
    }
  }
  return out;
}

namespace {
[[noreturn]] void ThrowDiagnostic(const Diagnostic& d) {
  std::string msg = d.rule;
  if (!d.state.empty()) msg += " at state " + d.state;
  if (!d.move.empty()) msg += " move " + d.move;
  if (!d.detail.empty()) msg += ": " + d.detail;
  throw PreconditionError(msg);
}
}  // namespace

void RequireValid(const GameStructure& game) {
  auto diags = ValidateStructure(game);
  if (!diags.empty()) ThrowDiagnostic(diags.front());
}

void RequireValid(const GameStructure& game,
                  const MemorylessStrategy& strategy) {
  auto diags = ValidateStrategy(game, strategy);
  if (!diags.empty()) ThrowDiagnostic(diags.front());
}

void RequireParity(const GameStructure& game, const ParityObjective& parity) {
  if (static_cast<int>(parity.priority.size()) != game.num_states()) {
    throw PreconditionError("priority map does not cover every state");
  }
  for (int p : parity.priority) {
    if (p < 0) throw PreconditionError("priorities must be nonnegative");
  }
}

void RequireDiscount(const GameStructure& game, const DiscountSpec& spec) {
  const auto n = static_cast<std::size_t>(game.num_states());
  if (spec.lambda.size() != n || spec.reward.size() != n) {
    throw PreconditionError("discount or reward map does not cover every state");
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (!(spec.lambda[s] > 0.0 && spec.lambda[s] < 1.0)) {
      throw PreconditionError("discount factor of " + game.states[s] +
                              " is outside (0,1)");
    }
    if (!(spec.reward[s] >= 0.0 && spec.reward[s] <= 1.0)) {
      throw PreconditionError("reward of " + game.states[s] +
                              " is outside [0,1]");
    }
  }
}

bool SatisfiesKind(const GameStructure& game, StructureKind kind) {
  for (int s = 0; s < game.num_states(); ++s) {
    const bool choice1 = game.gamma1[s].size() > 1;
    const bool choice2 = game.gamma2[s].size() > 1;
    switch (kind) {
      case StructureKind::kConcurrent:
        break;
      case StructureKind::kTurnBased:
        if (choice1 && choice2) return false;
        break;
      case StructureKind::kMdpPlayer1:
        if (choice2) return false;
        break;
      case StructureKind::kMdpPlayer2:
        if (choice1) return false;
        break;
      case StructureKind::kMarkovChain:
        if (choice1 || choice2) return false;
        break;
    }
  }
  return true;
}

StructureKind Classify(const GameStructure& game) {
  for (StructureKind k :
       {StructureKind::kMarkovChain, StructureKind::kMdpPlayer1,
        StructureKind::kMdpPlayer2, StructureKind::kTurnBased}) {
    if (SatisfiesKind(game, k)) return k;
  }
  return StructureKind::kConcurrent;
}

bool SameShape(const GameStructure& a, const GameStructure& b) {
  return a.states == b.states && a.moves == b.moves && a.gamma1 == b.gamma1 &&
         a.gamma2 == b.gamma2;
}

void RequireSameShape(const GameStructure& a, const GameStructure& b) {
  if (!SameShape(a, b)) {
    throw ShapeMismatchError(
        "structures differ in states, moves or move sets");
  }
  for (int s = 0; s < a.num_states(); ++s) {
    if (a.delta[s].size() != b.delta[s].size()) {
      throw ShapeMismatchError("transition tables differ in size at state " +
                               a.states[s]);
    }
  }
}

bool StructurallyEquivalent(const GameStructure& a, const GameStructure& b) {
  RequireSameShape(a, b);
  bool same = true;
  ForEachEntryPair(a, b, [&](double p, double q) {
    same = same && (InSupport(p) == InSupport(q));
  });
  return same;
}

double AbsoluteDistance(const GameStructure& a, const GameStructure& b) {
  RequireSameShape(a, b);
  double best = 0.0;
  ForEachEntryPair(a, b, [&](double p, double q) {
    best = std::max(best, std::abs(p - q));
  });
  return best;
}

double RatioDistance(const GameStructure& a, const GameStructure& b) {
  if (!StructurallyEquivalent(a, b)) {
    throw NotStructurallyEquivalentError(
        "ratio distance infinite: supports differ");
  }
  double best = 1.0;
  ForEachEntryPair(a, b, [&](double p, double q) {
    if (InSupport(p)) best = std::max({best, p / q, q / p});
  });
  return best - 1.0;
}

double MinPositiveProbability(const GameStructure& game) {
  double eta = std::numeric_limits<double>::infinity();
  for (const auto& row : game.delta) {
    for (const Distribution& dist : row) {
      for (double p : dist) {
        if (InSupport(p)) eta = std::min(eta, p);
      }
    }
  }
  return eta;
}

bool StructurallyEquivalent(const MarkovChain& a, const MarkovChain& b) {
  return StructurallyEquivalent(FromChain(a), FromChain(b));
}
double AbsoluteDistance(const MarkovChain& a, const MarkovChain& b) {
  return AbsoluteDistance(FromChain(a), FromChain(b));
}
double RatioDistance(const MarkovChain& a, const MarkovChain& b) {
  return RatioDistance(FromChain(a), FromChain(b));
}
double MinPositiveProbability(const MarkovChain& chain) {
  return MinPositiveProbability(FromChain(chain));
}

DistanceReport Distances(const GameStructure& a, const GameStructure& b) {
  DistanceReport report;
  report.absolute = AbsoluteDistance(a, b);
  report.structurally_equivalent = StructurallyEquivalent(a, b);
  report.ratio = report.structurally_equivalent
                     ? RatioDistance(a, b)
                     : std::numeric_limits<double>::infinity();
  report.eta = MinPositiveProbability(a);
  report.eta_joint = std::min(report.eta, MinPositiveProbability(b));
  return report;
}

GameStructure Restrict(const GameStructure& game,
                       const MemorylessStrategy& strategy) {
  return RestrictImpl(game, strategy);
}

GameStructure RestrictPlayer1(const GameStructure& game,
                              const MemorylessStrategy& strategy) {
  if (strategy.owner != Player::kOne) {
    throw PreconditionError("expected a player-1 strategy");
  }
  return RestrictImpl(game, strategy);
}

GameStructure RestrictPlayer2(const GameStructure& game,
                              const MemorylessStrategy& strategy) {
  if (strategy.owner != Player::kTwo) {
    throw PreconditionError("expected a player-2 strategy");
  }
  return RestrictImpl(game, strategy);
}

}  // namespace stochrobust
