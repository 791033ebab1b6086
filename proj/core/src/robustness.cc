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

#include "stochrobust/robustness.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stochrobust/chain_solver.h"
#include "stochrobust/errors.h"
#include "stochrobust/game_solver.h"
#include "stochrobust/random.h"

namespace stochrobust {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Tolerances requested from the iterative solvers used for certification.
constexpr double kIterativeTolerance = 1e-10;
constexpr double kExactTolerance = 1e-10;

void RequireBoundInputs(int n, double x) {
  if (n < 1) throw PreconditionError("bound needs at least one state");
  if (!(x >= 0.0)) throw PreconditionError("distance must be nonnegative");
}

double Sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

std::vector<double> AbsDiff(const ValueVector& a, const ValueVector& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = std::abs(a[i] - b[i]);
  return d;
}

MemorylessStrategy TrivialStrategy(const GameStructure& game, Player owner) {
  std::vector<int> moves;
  for (int s = 0; s < game.num_states(); ++s) {
    moves.push_back(owner == Player::kOne ? game.gamma1[s][0]
                                          : game.gamma2[s][0]);
  }
  return PureStrategy(owner, moves);
}

}  // namespace

double PerturbationBound(int n, double ratio) {
  RequireBoundInputs(n, ratio);
  if (std::isinf(ratio)) return kInf;
  return std::expm1(2.0 * n * std::log1p(ratio));
}

double PerturbationBoundAbsolute(int n, double absolute, double eta) {
  RequireBoundInputs(n, absolute);
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw PreconditionError("eta must lie in (0,1]");
  }
  return PerturbationBound(n, absolute / eta);
}

double BetaThreshold(double eta, double eps, int n) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw PreconditionError("eta must lie in (0,1]");
  }
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  if (n < 1) throw PreconditionError("threshold needs at least one state");
  return 0.5 * eta * std::expm1(std::log1p(0.5 * eps) / (2.0 * n));
}

GameStructure Perturb(const GameStructure& game, double eps,
                      std::uint64_t seed) {
  RequireValid(game);
  const double eta = MinPositiveProbability(game);
  if (!(eps >= 0.0)) throw PreconditionError("eps must be nonnegative");
  if (!(eps < eta)) {
    throw PreconditionError(
        "eps must be below the minimum positive probability to keep supports");
  }
  GameStructure out = game;
  if (eps == 0.0) return out;
  const double floor = 0.5 * eta;
  for (int s = 0; s < game.num_states(); ++s) {
    for (std::size_t pair = 0; pair < game.delta[s].size(); ++pair) {
      const Distribution& p = game.delta[s][pair];
      std::vector<int> support;
      for (int t = 0; t < game.num_states(); ++t) {
        if (InSupport(p[t])) support.push_back(t);
      }
      if (support.size() < 2) continue;
      std::vector<double> shift(support.size());
      double mean = 0.0;
      for (std::size_t k = 0; k < support.size(); ++k) {
        shift[k] = eps * KeyedSigned({seed, static_cast<std::uint64_t>(s),
                                      static_cast<std::uint64_t>(pair),
                                      static_cast<std::uint64_t>(support[k])});
        mean += shift[k];
      }
      mean /= static_cast<double>(support.size());
      double largest = 0.0;
      for (double& d : shift) {
        d -= mean;
        largest = std::max(largest, std::abs(d));
      }
      if (largest == 0.0) continue;
      // Largest step keeping |shift| <= eps and entries above the floor.
      double scale = std::min(1.0, eps / largest);
      for (std::size_t k = 0; k < support.size(); ++k) {
        if (shift[k] < 0.0) {
          scale = std::min(scale, (p[support[k]] - floor) / -shift[k]);
        }
      }
      scale *= 1.0 - 1e-9;
      Distribution& q = out.delta[s][pair];
      double sum = 0.0;
      for (std::size_t k = 0; k < support.size(); ++k) {
        q[support[k]] = p[support[k]] + scale * shift[k];
        sum += q[support[k]];
      }
      for (int t : support) q[t] /= sum;
    }
  }
  return out;
}

std::string ObjectiveName(const Objective& objective) {
  return std::holds_alternative<ParityObjective>(objective) ? "parity"
                                                            : "multidiscounted";
}

ValueVector ExactValues(const GameStructure& game, const Objective& objective,
                        double* tolerance) {
  RequireValid(game);
  const auto* parity = std::get_if<ParityObjective>(&objective);
  double tol = kExactTolerance;
  ValueVector values;
  switch (Classify(game)) {
    case StructureKind::kMarkovChain:
      values = EvaluateChain(ToChain(game), objective);
      break;
    case StructureKind::kMdpPlayer1:
    case StructureKind::kMdpPlayer2:
      values = parity != nullptr
                   ? ParityValueMdp(game, *parity).values
                   : MultidiscountedValueMdp(
                         game, std::get<DiscountSpec>(objective),
                         kIterativeTolerance)
                         .values;
      break;
    case StructureKind::kTurnBased:
      if (parity != nullptr) {
        values = ParityValueTurnBased(game, *parity,
                                      TurnBasedMethod::kImprovement)
                     .values;
      } else {
        values = MultidiscountedValueConcurrent(
                     game, std::get<DiscountSpec>(objective),
                     kIterativeTolerance, ConcurrentMethod::kStrategyIteration)
                     .values;
      }
      break;
    case StructureKind::kConcurrent:
      if (parity != nullptr) {
        throw PreconditionError(
            "concurrent parity values have no exact solver; use the limit "
            "approximation");
      }
      values = MultidiscountedValueConcurrent(
                   game, std::get<DiscountSpec>(objective), kIterativeTolerance)
                   .values;
      break;
  }
  if (tolerance != nullptr) *tolerance = tol;
  return values;
}

CertificateReport CertifyValueBound(const GameStructure& g1,
                                    const GameStructure& g2,
                                    const Objective& objective) {
  RequireValid(g1);
  RequireValid(g2);
  RequireSameShape(g1, g2);
  CertificateReport report;
  report.objective = ObjectiveName(objective);
  report.kind = std::string(KindName(Classify(g1)));
  report.distances = Distances(g1, g2);
  double tol1 = 0.0, tol2 = 0.0;
  ValueVector v1 = ExactValues(g1, objective, &tol1);
  ValueVector v2 = ExactValues(g2, objective, &tol2);
  report.tolerance = tol1 + tol2;
  report.difference = AbsDiff(v1, v2);
  report.max_difference = Sup(report.difference);
  const int n = g1.num_states();
  if (!report.distances.structurally_equivalent) {
    report.bound = kInf;
    report.absolute_bound = kInf;
    report.margin = -kInf;
    report.holds = false;
    return report;
  }
  report.bound = PerturbationBound(n, report.distances.ratio);
  report.absolute_bound = PerturbationBoundAbsolute(
      n, report.distances.absolute, report.distances.eta_joint);
  report.margin = report.bound - report.max_difference;
  report.holds = report.margin >= -report.tolerance;
  return report;
}

CertificateReport CertifyStrategyRobustness(const GameStructure& g1,
                                            const GameStructure& g2,
                                            const ParityObjective& parity,
                                            double eps) {
  RequireValid(g1);
  RequireValid(g2);
  RequireSameShape(g1, g2);
  RequireParity(g1, parity);
  if (!(eps > 0.0)) throw PreconditionError("eps must be positive");
  if (!StructurallyEquivalent(g1, g2)) {
    throw NotStructurallyEquivalentError(
        "strategy robustness needs structurally equivalent games");
  }
  const StructureKind kind = Classify(g1);
  if (kind == StructureKind::kConcurrent) {
    throw PreconditionError("strategy robustness needs an MDP or turn-based game");
  }
  CertificateReport report;
  report.objective = "strategy";
  report.kind = std::string(KindName(kind));
  report.distances = Distances(g1, g2);
  report.epsilon = eps;
  report.beta = BetaThreshold(report.distances.eta, eps, g1.num_states());
  report.hypothesis_met = report.distances.absolute <= report.beta;

  MemorylessStrategy pi1;
  if (kind == StructureKind::kTurnBased) {
    pi1 = ParityValueTurnBased(g1, parity, TurnBasedMethod::kImprovement)
              .player1;
  } else if (kind == StructureKind::kMdpPlayer1) {
    pi1 = ParityValueMdp(g1, parity).strategy;
  } else {
    pi1 = TrivialStrategy(g1, Player::kOne);
  }
  double tol = 0.0;
  ValueVector optimum = ExactValues(g2, parity, &tol);
  ValueVector achieved = ParityValueMdp(Restrict(g2, pi1), parity).values;
  report.tolerance = 2.0 * tol;
  report.difference.resize(optimum.size());
  for (std::size_t s = 0; s < optimum.size(); ++s) {
    report.difference[s] = std::max(0.0, optimum[s] - achieved[s]);
  }
  report.max_difference = Sup(report.difference);
  report.bound = eps;
  report.absolute_bound = eps;
  report.margin = eps - report.max_difference;
  report.holds = report.margin >= -report.tolerance;
  return report;
}

std::vector<SweepRow> ContinuitySweep(const GameStructure& game,
                                      const Objective& objective,
                                      const std::vector<double>& epsilons,
                                      int samples, std::uint64_t seed) {
  RequireValid(game);
  if (samples < 1) throw PreconditionError("sweep needs at least one sample");
  std::vector<double> order = epsilons;
  std::stable_sort(order.begin(), order.end(), std::greater<double>());
  const ValueVector base = ExactValues(game, objective);
  std::vector<SweepRow> rows;
  for (double eps : order) {
    for (int k = 0; k < samples; ++k) {
      GameStructure perturbed =
          Perturb(game, eps, KeyedBits({seed, static_cast<std::uint64_t>(k)}));
      SweepRow row;
      row.eps = eps;
      row.sample = k;
      row.sup_diff = Sup(AbsDiff(base, ExactValues(perturbed, objective)));
      row.ratio = RatioDistance(game, perturbed);
      row.bound = PerturbationBound(game.num_states(), row.ratio);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace stochrobust
