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

#include "src/detector.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paulisift {

namespace {

constexpr double kGammaCap = 0.95;

double clamp_gamma(double g) { return std::clamp(g, 0.0, kGammaCap); }

}  // namespace

double DetectorParams::effective_gamma1(double t_mult, double nu2) const {
  if (!eps0 || nu2 <= 0.0) return clamp_gamma(gamma1);
  double limit = (*eps0 * *eps0) / (t_mult * nu2);
  return clamp_gamma(0.9 * std::min(1.0, limit));
}

double DetectorParams::effective_gamma2(double t_mult, double nu2) const {
  if (!eps0 || nu2 <= 0.0) return clamp_gamma(gamma2);
  double limit = (*eps0 * *eps0) / (2.0 * t_mult * nu2);
  return clamp_gamma(0.9 * std::min(1.0, limit));
}

BinVerdict detect(std::span<const double> bin, const OffsetSet& offsets,
                  const OffsetCodeSpec& code, double t_mult, double nu2,
                  const DetectorParams& params) {
  if (bin.size() != offsets.size())
    throw std::invalid_argument("detect: bin length differs from offset count");
  const size_t p1 = offsets.num_random;
  const size_t p2 = offsets.num_coded;
  if (p1 == 0) throw std::invalid_argument("detect: no random offsets");

  const double nu2_eff = std::max(nu2, params.nu2_floor);
  BinVerdict verdict;

  double mean_square = 0.0;
  for (size_t t = 0; t < p1; ++t) mean_square += bin[t] * bin[t];
  mean_square /= static_cast<double>(p1);
  double g1 = params.effective_gamma1(t_mult, nu2_eff);
  if (mean_square <= t_mult * (1.0 + g1) * nu2_eff) {
    verdict.kind = BinKind::kZeroTon;
    return verdict;
  }

  std::vector<uint8_t> coded_signs(p2);
  for (size_t t = 0; t < p2; ++t) coded_signs[t] = sgn_bit(bin[p1 + t]);
  std::vector<uint8_t> random_signs(p1);
  for (size_t t = 0; t < p1; ++t) random_signs[t] = sgn_bit(bin[t]);
  std::optional<PauliLabel> decoded =
      code_decode(coded_signs, random_signs, code, offsets.n);
  if (!decoded) {
    verdict.kind = BinKind::kMultiTon;
    verdict.decode_failed = true;
    return verdict;
  }
  const PauliLabel label = *decoded;
  const uint64_t swapped = label.half_swapped().bits;

  double rate = 0.0;
  for (size_t t = 0; t < p1; ++t) {
    double sign = parity64(offsets.offsets[t] & swapped) ? -1.0 : 1.0;
    rate += sign * bin[t];
  }
  rate /= static_cast<double>(p1);
  if (rate <= 0.0) {
    // Rates are probabilities; a non-positive fit cannot be a single-ton.
    verdict.kind = BinKind::kMultiTon;
    return verdict;
  }

  double residual = 0.0;
  for (size_t t = 0; t < p1; ++t) {
    double sign = parity64(offsets.offsets[t] & swapped) ? -1.0 : 1.0;
    double r = bin[t] - sign * rate;
    residual += r * r;
  }
  residual /= static_cast<double>(p1);
  double g2 = params.effective_gamma2(t_mult, nu2_eff);
  if (residual <= t_mult * (1.0 + g2) * nu2_eff) {
    verdict.kind = BinKind::kSingleTon;
    verdict.label = label;
    verdict.rate = rate;
  } else {
    verdict.kind = BinKind::kMultiTon;
  }
  return verdict;
}

PauliLabel estimate_index_basis(std::span<const double> basis_values, double u0,
                                uint32_t n) {
  if (basis_values.size() != 2 * static_cast<size_t>(n))
    throw std::invalid_argument("estimate_index_basis: need 2n basis values");
  uint8_t base_sign = sgn_bit(u0);
  uint64_t read = 0;
  for (uint32_t i = 0; i < 2 * n; ++i)
    if (sgn_bit(basis_values[i]) ^ base_sign) read |= 1ull << i;
  // Bit i of the read-out is <e_i, m>, i.e. the half-swapped label.
  return PauliLabel(n, swap_halves(read, n));
}

double singleton_flip_probability(double p_m, double t_mult, double nu2) {
  if (p_m <= 0.0) throw std::invalid_argument("flip probability needs p_m > 0");
  double var = t_mult * nu2;
  if (var <= 0.0) return 0.0;
  double ratio = p_m * p_m / (2.0 * var);
  return std::sqrt(var / (2.0 * M_PI * p_m * p_m)) * std::exp(-ratio);
}

}  // namespace paulisift
