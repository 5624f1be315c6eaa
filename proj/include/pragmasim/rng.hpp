// Copyright 2026 The pragmasim Authors
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

#pragma once

#include <cstdint>
#include <vector>

namespace pragmasim {

// Counter-based pseudo-random stream (splitmix64). The state is a plain
// 64-bit counter advanced by a fixed odd constant; every output is a bijective
// hash of the counter. All sampling algorithms are spelled out here instead of
// relying on std::<...>_distribution, so a given seed yields the same draw
// sequence regardless of the standard library in use.
//
// A stream is not thread-safe; concurrent consumers must each own a stream,
// obtained via fork() or independent seeds.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unbiased integer in [0, n), n >= 1, by rejection.
  int uniform_int(int n);

  // Standard normal via Box-Muller (two uniforms per draw, no caching).
  double normal();

  // Gamma(alpha, 1) via Marsaglia-Tsang squeeze, boosted for alpha < 1.
  double gamma(double alpha);

  // Dirichlet draw: normalized vector of Gamma(alpha_i, 1) samples.
  std::vector<double> dirichlet(const std::vector<double>& alpha);

  // Index draw from a probability vector (cumulative scan).
  int categorical(const std::vector<double>& probs);

  // Derives an independently seeded child stream. Advances this stream once.
  SeededRng fork(uint64_t tag);

  // The splitmix64 finalizer; useful for seed derivation.
  static uint64_t mix(uint64_t z);

 private:
  uint64_t state_;
};

}  // namespace pragmasim
