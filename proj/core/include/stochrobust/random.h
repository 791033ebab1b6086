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

#ifndef STOCHROBUST_RANDOM_H_
#define STOCHROBUST_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace stochrobust {

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Counter-based draw: a pure function of the key, so results do not depend
// on the order in which keys are visited.
std::uint64_t KeyedBits(std::initializer_list<std::uint64_t> key);
// Uniform in [0,1) from the top 53 bits.
double ToUnit(std::uint64_t bits);
// Uniform in [-1,1) for the given key.
double KeyedSigned(std::initializer_list<std::uint64_t> key);

// Sequential generator for instance construction. Uses the standard
// mt19937_64 engine with explicit bit-to-value mappings, so draws are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix64(seed)) {}

  std::uint64_t Bits() { return engine_(); }
  double Uniform() { return ToUnit(engine_()); }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Inclusive on both ends.
  int UniformInt(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace stochrobust

#endif  // STOCHROBUST_RANDOM_H_
