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

#ifndef STOCHROBUST_GAME_CORE_H_
#define STOCHROBUST_GAME_CORE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stochrobust {

// Distributions must sum to one within this tolerance.
inline constexpr double kDistributionSumTolerance = 1e-9;
// Entries at or below this are treated as zero when computing supports.
inline constexpr double kSupportThreshold = 1e-12;
// Move identifier used for the single move of a player without choices.
inline constexpr std::string_view kNoMove = "_";

// Dense probability vector over the states of a structure.
using Distribution = std::vector<double>;
// Per-state values, indexed like the states of a structure.
using ValueVector = std::vector<double>;

inline bool InSupport(double probability) {
  return probability > kSupportThreshold;
}

enum class Player { kOne, kTwo };

inline Player Opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}

enum class StructureKind {
  kConcurrent,
  kTurnBased,
  kMdpPlayer1,
  kMdpPlayer2,
  kMarkovChain,
};

std::string_view KindName(StructureKind kind);
std::optional<StructureKind> ParseKind(std::string_view name);

// A finite concurrent stochastic game structure. Moves available to the
// players are indices into `moves`; the successor distribution for the i-th
// move of player 1 and j-th move of player 2 at state s is
// delta[s][i * gamma2[s].size() + j].
//
// Turn-based games, MDPs and Markov chains are the special cases where one or
// both players have a single move at every state.
struct GameStructure {
  std::vector<std::string> states;
  std::vector<std::string> moves;
  std::vector<std::vector<int>> gamma1;
  std::vector<std::vector<int>> gamma2;
  std::vector<std::vector<Distribution>> delta;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_moves(int s, Player p) const {
    return static_cast<int>(p == Player::kOne ? gamma1[s].size()
                                              : gamma2[s].size());
  }
  const Distribution& transition(int s, int i, int j) const {
    return delta[s][i * gamma2[s].size() + j];
  }
  Distribution& mutable_transition(int s, int i, int j) {
    return delta[s][i * gamma2[s].size() + j];
  }
  // -1 when absent.
  int StateIndex(std::string_view name) const;
  int MoveIndex(std::string_view name) const;

  bool operator==(const GameStructure&) const = default;
};

struct MarkovChain {
  std::vector<std::string> states;
  std::vector<Distribution> delta;

  int num_states() const { return static_cast<int>(states.size()); }
  bool operator==(const MarkovChain&) const = default;
};

// Views a chain as a game structure where both players only have kNoMove.
GameStructure FromChain(const MarkovChain& chain);
// Throws PreconditionError unless both players have one move everywhere.
MarkovChain ToChain(const GameStructure& game);

struct ParityObjective {
  std::vector<int> priority;
  bool operator==(const ParityObjective&) const = default;
};

// Multi-discounted objective: per-state discount factor in (0,1) paired with a
// per-state reward in [0,1].
struct DiscountSpec {
  std::vector<double> lambda;
  std::vector<double> reward;
  bool operator==(const DiscountSpec&) const = default;
};

struct MoveWeight {
  int move = 0;  // index into GameStructure::moves
  double probability = 0.0;
  bool operator==(const MoveWeight&) const = default;
};

// Randomized memoryless strategy. assignment[s] lists the moves the owner
// plays at s with their probabilities; a pure strategy has one entry per state.
struct MemorylessStrategy {
  Player owner = Player::kOne;
  std::vector<std::vector<MoveWeight>> assignment;
  bool operator==(const MemorylessStrategy&) const = default;
};

MemorylessStrategy PureStrategy(Player owner, const std::vector<int>& moves);
bool IsPure(const MemorylessStrategy& strategy);
// Position of `move` inside gamma_owner(s), or -1.
int MovePosition(const GameStructure& game, int s, Player owner, int move);

struct Diagnostic {
  std::string rule;
  std::string state;
  std::string move;
  std::string detail;
};

// Checks every structural invariant; empty iff the structure is well formed.
std::vector<Diagnostic> ValidateStructure(const GameStructure& game);
std::vector<Diagnostic> ValidateStrategy(const GameStructure& game,
                                         const MemorylessStrategy& strategy);
// Throws PreconditionError carrying the first diagnostic.
void RequireValid(const GameStructure& game);
void RequireValid(const GameStructure& game,
                  const MemorylessStrategy& strategy);
void RequireParity(const GameStructure& game, const ParityObjective& parity);
void RequireDiscount(const GameStructure& game, const DiscountSpec& spec);

// Most specific kind: chain before MDPs before turn-based before concurrent.
StructureKind Classify(const GameStructure& game);
// True when the structure meets the constraints of `kind` (a chain satisfies
// every kind, an MDP is also turn-based, and so on).
bool SatisfiesKind(const GameStructure& game, StructureKind kind);

// Same states, moves and move sets; throws ShapeMismatchError otherwise.
void RequireSameShape(const GameStructure& a, const GameStructure& b);
bool SameShape(const GameStructure& a, const GameStructure& b);

bool StructurallyEquivalent(const GameStructure& a, const GameStructure& b);
double AbsoluteDistance(const GameStructure& a, const GameStructure& b);
// Throws NotStructurallyEquivalentError: the ratio distance is infinite then.
double RatioDistance(const GameStructure& a, const GameStructure& b);
double MinPositiveProbability(const GameStructure& game);

bool StructurallyEquivalent(const MarkovChain& a, const MarkovChain& b);
double AbsoluteDistance(const MarkovChain& a, const MarkovChain& b);
double RatioDistance(const MarkovChain& a, const MarkovChain& b);
double MinPositiveProbability(const MarkovChain& chain);

struct DistanceReport {
  double absolute = 0.0;
  double ratio = 0.0;  // +inf without structural equivalence
  bool structurally_equivalent = true;
  double eta = 1.0;  // minimum positive probability of the first argument
  // Minimum over both arguments. ratio <= absolute / eta_joint always holds;
  // with the first argument's eta alone it can fail, since the ratio is
  // taken in both directions.
  double eta_joint = 1.0;
};

DistanceReport Distances(const GameStructure& a, const GameStructure& b);

// Fixes the owner's randomized memoryless strategy: the owner is left with
// the single move kNoMove and every successor distribution becomes the
// strategy's convex combination. Restricting an MDP yields a Markov chain.
GameStructure Restrict(const GameStructure& game,
                       const MemorylessStrategy& strategy);
GameStructure RestrictPlayer1(const GameStructure& game,
                              const MemorylessStrategy& strategy);
GameStructure RestrictPlayer2(const GameStructure& game,
                              const MemorylessStrategy& strategy);

}  // namespace stochrobust

#endif  // STOCHROBUST_GAME_CORE_H_
