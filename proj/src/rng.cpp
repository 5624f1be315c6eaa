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

#include "pragmasim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pragmasim {

uint64_t SeededRng::mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t SeededRng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix(state_);
}

int SeededRng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int needs n >= 1");
  const uint64_t range = static_cast<uint64_t>(n);
  const uint64_t threshold = (0 - range) % range;  // 2^64 mod range
  for (;;) {
    uint64_t r = next_u64();
    if (r >= threshold) return static_cast<int>(r % range);
  }
}

double SeededRng::normal() {
  double u1 = uniform01();
  while (u1 == 0.0) u1 = uniform01();
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double SeededRng::gamma(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gamma needs alpha > 0");
  if (alpha < 1.0) {
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

std::vector<double> SeededRng::dirichlet(const std::vector<double>& alpha) {
  if (alpha.empty()) throw std::invalid_argument("dirichlet needs at least one concentration");
  std::vector<double> out(alpha.size());
  double sum = 0.0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    out[i] = gamma(alpha[i]);
    sum += out[i];
  }
  if (!(sum > 0.0)) throw std::runtime_error("dirichlet sample degenerated to zero");
  for (double& v : out) v /= sum;
  return out;
}

int SeededRng::categorical(const std::vector<double>& probs) {
  if (probs.empty()) throw std::invalid_argument("categorical needs a nonempty distribution");
  const double u = uniform01();
  double cum = 0.0;
  int last_positive = -1;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = static_cast<int>(i);
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  // Floating-point shortfall in the cumulative sum; fall back to the last
  // index with positive mass.
  if (last_positive < 0) throw std::invalid_argument("categorical needs positive mass");
  return last_positive;
}

SeededRng SeededRng::fork(uint64_t tag) {
  return SeededRng(mix(next_u64() ^ mix(tag ^ 0xA3EC647659359ACDull)));
}

}  // namespace pragmasim
