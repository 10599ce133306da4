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

#ifndef PAULISIFT_SRC_WHT_H_
#define PAULISIFT_SRC_WHT_H_

#include <cstdint>
#include <vector>

namespace paulisift {

// Sign convention of the transform. Natural ordering pairs indices with the
// bitwise dot product. Commutation ordering reads each index as an (x|z) pair
// of k/2 bits and pairs indices with the symplectic product, so a Pauli keeps
// its position when mapping between error rates and eigenvalues.
enum class Ordering { kNatural, kSymplectic };

// Quadratic-time oracle: out_i = sum_j (-1)^{<i,j>} v_j. Test reference only.
std::vector<double> wht_brute(const std::vector<double>& v, Ordering ordering);

// Single output entry of the brute transform, so callers can shard work.
double wht_brute_entry(const std::vector<double>& v, Ordering ordering,
                       uint64_t index);

// In-place O(B log B) transform. The commutation ordering is realized by the
// half-swap index permutation (an involution) followed by the natural
// butterfly.
void wht_fast_inplace(std::vector<double>& v, Ordering ordering);
void wht_fast_inplace(double* v, uint64_t size, Ordering ordering);

// p_j = (1/N) sum_k (-1)^{<j,k>} lambda_k.
std::vector<double> inverse_wht(const std::vector<double>& eigenvalues,
                                Ordering ordering = Ordering::kSymplectic);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_WHT_H_
