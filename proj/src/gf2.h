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

#ifndef PAULISIFT_SRC_GF2_H_
#define PAULISIFT_SRC_GF2_H_

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace paulisift {

inline int parity64(uint64_t x) { return std::popcount(x) & 1; }

// Dense GF(2) matrix with bit-packed rows. One 64-bit word per row, which
// covers every shape this project needs (cols <= 64, i.e. up to 32 qubits).
class Gf2Matrix {
 public:
  Gf2Matrix() : rows_(0), cols_(0) {}
  Gf2Matrix(size_t rows, size_t cols);

  static Gf2Matrix identity(size_t n);
  // The symplectic form on 2n bits: swaps the two n-bit halves.
  static Gf2Matrix symplectic_form(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const { return (data_[r] >> c) & 1; }
  void set(size_t r, size_t c, bool v) {
    if (v)
      data_[r] |= (1ull << c);
    else
      data_[r] &= ~(1ull << c);
  }
  uint64_t row(size_t r) const { return data_[r]; }
  void set_row(size_t r, uint64_t bits) { data_[r] = bits; }

  bool operator==(const Gf2Matrix& other) const = default;

  Gf2Matrix transposed() const;

  // Matrix-vector product A*v where v is packed with bit i = coefficient of
  // column i. Returns the packed result (bit r = row r of A*v).
  uint64_t apply(uint64_t v) const;

  // String of '0'/'1' per row, column 0 leftmost.
  std::string row_string(size_t r) const;
  static uint64_t parse_row(const std::string& s);

 private:
  size_t rows_, cols_;
  std::vector<uint64_t> data_;
};

Gf2Matrix gf2_matmul(const Gf2Matrix& a, const Gf2Matrix& b);
size_t gf2_rank(const Gf2Matrix& a);
// Basis of {x : A x = 0}, each vector packed as a uint64.
std::vector<uint64_t> gf2_nullspace(const Gf2Matrix& a);

}  // namespace paulisift

#endif  // PAULISIFT_SRC_GF2_H_
