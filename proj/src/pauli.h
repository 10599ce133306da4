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

#ifndef PAULISIFT_SRC_PAULI_H_
#define PAULISIFT_SRC_PAULI_H_

#include <cstdint>
#include <string>

#include "src/gf2.h"

namespace paulisift {

// An n-qubit Pauli modulo phase, packed into 2n bits: the x half in bits
// [0, n) and the z half in bits [n, 2n). Bit q of a half belongs to qubit q,
// and qubit 0 is the leftmost character of the word rendering. X sets the
// x bit, Z the z bit, Y both.
struct PauliLabel {
  uint32_t n = 0;
  uint64_t bits = 0;

  PauliLabel() = default;
  PauliLabel(uint32_t n_qubits, uint64_t packed_bits) : n(n_qubits), bits(packed_bits) {}

  static PauliLabel identity(uint32_t n) { return PauliLabel(n, 0); }

  uint64_t x_half() const { return bits & ((n == 32) ? 0xffffffffull : ((1ull << n) - 1)); }
  uint64_t z_half() const { return bits >> n; }

  // Image under the symplectic form: x and z halves exchanged.
  PauliLabel half_swapped() const {
    return PauliLabel(n, (z_half() | (x_half() << n)));
  }

  bool operator==(const PauliLabel& other) const = default;
};

// Swaps the k/2-bit halves of a 2*(k/2)-bit index. Used to permute between
// natural and commutation-ordered transforms.
inline uint64_t swap_halves(uint64_t v, uint32_t half_bits) {
  uint64_t lo_mask = (half_bits == 64) ? ~0ull : ((1ull << half_bits) - 1);
  return ((v >> half_bits) & lo_mask) | ((v & lo_mask) << half_bits);
}

// <a,b> = a_x.b_z + a_z.b_x mod 2. Zero exactly when the Paulis commute.
uint8_t symplectic_product(const PauliLabel& a, const PauliLabel& b);

// Same form on raw 2n-bit strings of equal width.
inline uint8_t symplectic_product_bits(uint64_t a, uint64_t b, uint32_t n) {
  return static_cast<uint8_t>(parity64(a & swap_halves(b, n)));
}

// Parses either a Pauli word over {I,X,Y,Z} or an "x|z" bit string.
PauliLabel label_from_string(const std::string& s);
std::string label_to_string(const PauliLabel& a);
std::string label_to_bit_string(const PauliLabel& a);

// Number of qubits acted on nontrivially.
uint32_t weight(const PauliLabel& a);

// Stabilizer group given by generator rows (b x 2n matrix, row i = s_i).
struct StabilizerGroup {
  Gf2Matrix generators;

  uint32_t num_qubits() const { return static_cast<uint32_t>(generators.cols() / 2); }
};

// True iff every pair of rows has vanishing symplectic product and the rows
// are independent. Matrix form of the test: S J S^T = 0 and rank(S) = b.
bool is_stabilizer_group(const Gf2Matrix& s);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_PAULI_H_
