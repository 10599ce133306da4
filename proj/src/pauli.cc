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

#include "src/pauli.h"

#include <stdexcept>

namespace paulisift {

uint8_t symplectic_product(const PauliLabel& a, const PauliLabel& b) {
  if (a.n != b.n) throw std::invalid_argument("symplectic_product: qubit counts differ");
  return symplectic_product_bits(a.bits, b.bits, a.n);
}

namespace {

PauliLabel parse_word(const std::string& s) {
  uint32_t n = static_cast<uint32_t>(s.size());
  if (n == 0 || n > 32) throw std::invalid_argument("Pauli word must have 1..32 qubits");
  uint64_t x = 0, z = 0;
  for (uint32_t q = 0; q < n; ++q) {
    switch (s[q]) {
      case 'I':
        break;
      case 'X':
        x |= 1ull << q;
        break;
      case 'Z':
        z |= 1ull << q;
        break;
      case 'Y':
        x |= 1ull << q;
        z |= 1ull << q;
        break;
      default:
        throw std::invalid_argument("Pauli word must be over {I,X,Y,Z}");
    }
  }
  return PauliLabel(n, x | (z << n));
}

PauliLabel parse_bit_string(const std::string& s, size_t bar) {
  const std::string xs = s.substr(0, bar);
  const std::string zs = s.substr(bar + 1);
  if (xs.size() != zs.size() || xs.empty() || xs.size() > 32)
    throw std::invalid_argument("x|z halves must have equal length 1..32");
  uint32_t n = static_cast<uint32_t>(xs.size());
  uint64_t x = 0, z = 0;
  for (uint32_t q = 0; q < n; ++q) {
    if (xs[q] == '1')
      x |= 1ull << q;
    else if (xs[q] != '0')
      throw std::invalid_argument("x|z string must be over {0,1}");
    if (zs[q] == '1')
      z |= 1ull << q;
    else if (zs[q] != '0')
      throw std::invalid_argument("x|z string must be over {0,1}");
  }
  return PauliLabel(n, x | (z << n));
}

}  // namespace

PauliLabel label_from_string(const std::string& s) {
  size_t bar = s.find('|');
  if (bar != std::string::npos) return parse_bit_string(s, bar);
  return parse_word(s);
}

std::string label_to_string(const PauliLabel& a) {
  std::string s(a.n, 'I');
  uint64_t x = a.x_half(), z = a.z_half();
  for (uint32_t q = 0; q < a.n; ++q) {
    bool xb = (x >> q) & 1, zb = (z >> q) & 1;
    if (xb && zb)
      s[q] = 'Y';
    else if (xb)
      s[q] = 'X';
    else if (zb)
      s[q] = 'Z';
  }
  return s;
}

std::string label_to_bit_string(const PauliLabel& a) {
  std::string s;
  s.reserve(2 * a.n + 1);
  uint64_t x = a.x_half(), z = a.z_half();
  for (uint32_t q = 0; q < a.n; ++q) s.push_back(((x >> q) & 1) ? '1' : '0');
  s.push_back('|');
  for (uint32_t q = 0; q < a.n; ++q) s.push_back(((z >> q) & 1) ? '1' : '0');
  return s;
}

uint32_t weight(const PauliLabel& a) {
  return static_cast<uint32_t>(std::popcount(a.x_half() | a.z_half()));
}

bool is_stabilizer_group(const Gf2Matrix& s) {
  if (s.cols() % 2 != 0) return false;
  size_t n = s.cols() / 2;
  uint32_t nq = static_cast<uint32_t>(n);
  for (size_t i = 0; i < s.rows(); ++i)
    for (size_t j = i + 1; j < s.rows(); ++j)
      if (symplectic_product_bits(s.row(i), s.row(j), nq)) return false;
  return gf2_rank(s) == s.rows();
}

}  // namespace paulisift
