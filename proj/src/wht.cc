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

#include <bit>
#include <stdexcept>

#include "src/pauli.h"

namespace paulisift {

namespace {

uint32_t log2_size(uint64_t size) {
  if (size == 0 || (size & (size - 1)) != 0)
    throw std::invalid_argument("transform length must be a power of two");
  return static_cast<uint32_t>(std::countr_zero(size));
}

uint32_t half_bits_for(uint64_t size, Ordering ordering) {
  uint32_t k = log2_size(size);
  if (ordering == Ordering::kSymplectic && (k & 1))
    throw std::invalid_argument("commutation ordering needs an even number of index bits");
  return k / 2;
}

}  // namespace

double wht_brute_entry(const std::vector<double>& v, Ordering ordering,
                       uint64_t index) {
  uint32_t half = half_bits_for(v.size(), ordering);
  uint64_t mask =
      ordering == Ordering::kSymplectic ? swap_halves(index, half) : index;
  double sum = 0.0;
  for (uint64_t j = 0; j < v.size(); ++j) {
    uint64_t sign = static_cast<uint64_t>(parity64(mask & j)) << 63;
    sum += std::bit_cast<double>(std::bit_cast<uint64_t>(v[j]) ^ sign);
  }
  return sum;
}

std::vector<double> wht_brute(const std::vector<double>& v, Ordering ordering) {
  std::vector<double> out(v.size());
  for (uint64_t i = 0; i < v.size(); ++i) out[i] = wht_brute_entry(v, ordering, i);
  return out;
}

void wht_fast_inplace(double* v, uint64_t size, Ordering ordering) {
  uint32_t half = half_bits_for(size, ordering);
  if (ordering == Ordering::kSymplectic) {
    for (uint64_t i = 0; i < size; ++i) {
      uint64_t j = swap_halves(i, half);
      if (i < j) std::swap(v[i], v[j]);
    }
  }
  for (uint64_t stride = 1; stride < size; stride <<= 1) {
    for (uint64_t base = 0; base < size; base += stride << 1) {
      for (uint64_t i = base; i < base + stride; ++i) {
        double a = v[i];
        double b = v[i + stride];
        v[i] = a + b;
        v[i + stride] = a - b;
      }
    }
  }
}

void wht_fast_inplace(std::vector<double>& v, Ordering ordering) {
  wht_fast_inplace(v.data(), v.size(), ordering);
}

std::vector<double> inverse_wht(const std::vector<double>& eigenvalues,
                                Ordering ordering) {
  std::vector<double> out = eigenvalues;
  wht_fast_inplace(out, ordering);
  double scale = 1.0 / static_cast<double>(out.size());
  for (double& x : out) x *= scale;
  return out;
}

}  // namespace paulisift
