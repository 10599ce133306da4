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

#include "src/wht.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "src/pauli.h"

namespace paulisift {
namespace {

std::vector<double> random_vector(size_t size, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(size);
  for (double& x : v) x = dist(rng);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

TEST(WhtBrute, DeltaMapsToAllOnes) {
  std::vector<double> v(4, 0.0);
  v[0] = 1.0;
  auto out = wht_brute(v, Ordering::kSymplectic);
  for (double x : out) EXPECT_DOUBLE_EQ(x, 1.0);
}

TEST(WhtBrute, DepolarizingEigenvalues) {
  // One-qubit depolarizing at q = 0.3: rates (0.7, 0.1, 0.1, 0.1) map to
  // eigenvalues (1, 0.6, 0.6, 0.6).
  double q = 0.3;
  std::vector<double> p = {1.0 - q, q / 3, q / 3, q / 3};
  auto lambda = wht_brute(p, Ordering::kSymplectic);
  EXPECT_NEAR(lambda[0], 1.0, 1e-15);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(lambda[k], 0.6, 1e-15);
}

TEST(WhtBrute, TwoPointNaturalButterfly) {
  std::vector<double> v = {3.0, 5.0};
  auto out = wht_brute(v, Ordering::kNatural);
  EXPECT_DOUBLE_EQ(out[0], 8.0);
  EXPECT_DOUBLE_EQ(out[1], -2.0);
}

TEST(WhtBrute, OddWidthSymplecticThrows) {
  std::vector<double> v(8, 1.0);
  EXPECT_THROW(wht_brute(v, Ordering::kSymplectic), std::invalid_argument);
  EXPECT_NO_THROW(wht_brute(v, Ordering::kNatural));
}

TEST(WhtFast, MatchesBruteAtK10) {
  auto v = random_vector(1 << 10, 17);
  auto expected = wht_brute(v, Ordering::kSymplectic);
  auto fast = v;
  wht_fast_inplace(fast, Ordering::kSymplectic);
  EXPECT_LT(max_abs_diff(fast, expected), 1e-12);
}

TEST(WhtFast, MatchesBruteNaturalOddK) {
  auto v = random_vector(1 << 9, 19);
  auto expected = wht_brute(v, Ordering::kNatural);
  auto fast = v;
  wht_fast_inplace(fast, Ordering::kNatural);
  EXPECT_LT(max_abs_diff(fast, expected), 1e-12);
}

TEST(WhtFast, ScaledInvolution) {
  for (Ordering ordering : {Ordering::kNatural, Ordering::kSymplectic}) {
    auto v = random_vector(1 << 12, 23);
    auto twice = v;
    wht_fast_inplace(twice, ordering);
    wht_fast_inplace(twice, ordering);
    double scale = static_cast<double>(v.size());
    double err = 0.0;
    for (size_t i = 0; i < v.size(); ++i)
      err = std::max(err, std::abs(twice[i] / scale - v[i]));
    EXPECT_LT(err, 1e-12);
  }
}

TEST(WhtFast, SymplecticIsNaturalComposedWithHalfSwap) {
  for (uint32_t k : {2u, 4u, 6u, 8u}) {
    auto v = random_vector(1ull << k, 100 + k);
    auto sym = v;
    wht_fast_inplace(sym, Ordering::kSymplectic);
    std::vector<double> permuted(v.size());
    for (uint64_t i = 0; i < v.size(); ++i) permuted[i] = v[swap_halves(i, k / 2)];
    wht_fast_inplace(permuted, Ordering::kNatural);
    EXPECT_EQ(sym, permuted) << "k=" << k;
  }
}

TEST(WhtFast, HalfSwapOfBitPattern) {
  // "10|01" under the half swap reads "01|10".
  PauliLabel a = label_from_string("10|01");
  EXPECT_EQ(label_to_bit_string(a.half_swapped()), "01|10");
}

TEST(WhtFast, Parseval) {
  auto v = random_vector(1 << 10, 29);
  double in = 0.0;
  for (double x : v) in += x * x;
  wht_fast_inplace(v, Ordering::kSymplectic);
  double out = 0.0;
  for (double x : v) out += x * x;
  EXPECT_NEAR(out / (in * v.size()), 1.0, 1e-10);
}

TEST(InverseWht, AllOnesIsDelta) {
  std::vector<double> lambda(4, 1.0);
  auto p = inverse_wht(lambda);
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  for (int j = 1; j < 4; ++j) EXPECT_NEAR(p[j], 0.0, 1e-15);
}

TEST(InverseWht, RoundTrip) {
  auto v = random_vector(1 << 12, 31);
  auto lambda = v;
  wht_fast_inplace(lambda, Ordering::kSymplectic);
  auto back = inverse_wht(lambda);
  EXPECT_LT(max_abs_diff(back, v), 1e-12);
}

TEST(InverseWht, RecoversDepolarizingRates) {
  std::vector<double> lambda = {1.0, 0.6, 0.6, 0.6};
  auto p = inverse_wht(lambda);
  EXPECT_NEAR(p[0], 0.7, 1e-15);
  for (int j = 1; j < 4; ++j) EXPECT_NEAR(p[j], 0.1, 1e-15);
}

}  // namespace
}  // namespace paulisift
