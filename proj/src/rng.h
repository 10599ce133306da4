// Copyright 2026 The paulisift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAULISIFT_SRC_RNG_H_
#define PAULISIFT_SRC_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>

namespace paulisift {

// SplitMix64 finalizer. Good avalanche, cheap, and stable across platforms.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Uniform double in (0, 1], from the top 53 bits.
inline double bits_to_unit_double(uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Counter-mode Gaussian: the draw is a pure function of (seed, key), so the
// same key always yields the same value regardless of evaluation order.
inline double keyed_gaussian(uint64_t seed, uint64_t key) {
  uint64_t h = splitmix64(seed ^ splitmix64(key ^ 0x5851f42d4c957f2dull));
  uint64_t h2 = splitmix64(h ^ 0xda942042e4dd58b5ull);
  double u1 = bits_to_unit_double(h);
  double u2 = bits_to_unit_double(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Sequential deterministic generator for synthetic data and designs.
// Thin wrapper over mt19937_64 with hand-rolled conversions so outputs are
// identical under any standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(splitmix64(seed)) {}

  uint64_t bits() { return engine_(); }

  // Uniform in [0, n). Rejection keeps it exactly uniform.
  uint64_t below(uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in (0, 1].
  double unit() { return bits_to_unit_double(engine_()); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  double gaussian(double mean = 0.0, double stddev = 1.0) {
    double u1 = unit();
    double u2 = unit();
    return mean + stddev * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(2.0 * M_PI * u2);
  }

  double exponential() { return -std::log(unit()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace paulisift

#endif  // PAULISIFT_SRC_RNG_H_
