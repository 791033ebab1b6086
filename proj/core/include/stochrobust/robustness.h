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

#ifndef STOCHROBUST_ROBUSTNESS_H_
#define STOCHROBUST_ROBUSTNESS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "stochrobust/decision_solver.h"
#include "stochrobust/game_core.h"

namespace stochrobust {

// (1 + ratio)^(2n) - 1.
double PerturbationBound(int n, double ratio);
// Same bound with the ratio distance replaced by absolute / eta. Valid when
// eta is the minimum positive probability over both structures.
double PerturbationBoundAbsolute(int n, double absolute, double eta);
// (eta / 2) ((1 + eps / 2)^(1 / (2n)) - 1).
double BetaThreshold(double eta, double eps, int n);

// Structurally equivalent copy with AbsoluteDistance(game, result) <= eps.
// Every support entry is shifted by a keyed draw from [-eps, eps), the
// shifts are centered and shrunk so entries stay >= eta / 2. Requires
// 0 <= eps < MinPositiveProbability(game).
GameStructure Perturb(const GameStructure& game, double eps,
                      std::uint64_t seed);

// Values with the exact solver for the structure's kind, plus the tolerance
// that solver guarantees. Concurrent parity has no exact solver and throws
// PreconditionError.
ValueVector ExactValues(const GameStructure& game, const Objective& objective,
                        double* tolerance = nullptr);

std::string ObjectiveName(const Objective& objective);

struct CertificateReport {
  std::string objective;  // "parity", "multidiscounted" or "strategy"
  std::string kind;       // KindName of the first structure
  std::vector<double> difference;  // per state
  double max_difference = 0.0;
  double bound = 0.0;           // ratio form; +inf without equivalence
  double absolute_bound = 0.0;  // absolute-distance form
  double margin = 0.0;          // bound - max_difference
  double tolerance = 0.0;       // solver tolerances added to the margin
  bool holds = false;
  DistanceReport distances;
  // Strategy certification only.
  double epsilon = 0.0;
  double beta = 0.0;
  bool hypothesis_met = true;
};

// Solves both structures and compares the per-state value gap with the
// perturbation bound. Pairs that are not structurally equivalent produce a
// report with an infinite bound and holds = false.
CertificateReport CertifyValueBound(const GameStructure& g1,
                                    const GameStructure& g2,
                                    const Objective& objective);

// Takes an optimal pure memoryless player-1 strategy of g1 and measures its
// shortfall against Val(g2) inside g2. difference holds the shortfall per
// state and bound is eps. Throws NotStructurallyEquivalentError.
CertificateReport CertifyStrategyRobustness(const GameStructure& g1,
                                            const GameStructure& g2,
                                            const ParityObjective& parity,
                                            double eps);

struct SweepRow {
  double eps = 0.0;
  int sample = 0;
  double sup_diff = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

// One perturbation per (eps, sample); sample k uses the same keyed
// directions for every eps. Rows are ordered by eps descending, then sample.
std::vector<SweepRow> ContinuitySweep(const GameStructure& game,
                                      const Objective& objective,
                                      const std::vector<double>& epsilons,
                                      int samples, std::uint64_t seed);

}  // namespace stochrobust

#endif  // STOCHROBUST_ROBUSTNESS_H_
