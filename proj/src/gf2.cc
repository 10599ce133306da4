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

#include "src/gf2.h"

#include <stdexcept>

namespace paulisift {

Gf2Matrix::Gf2Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {
  if (cols > 64) throw std::invalid_argument("Gf2Matrix supports <= 64 columns");
  data_.assign(rows, 0);
}

Gf2Matrix Gf2Matrix::identity(size_t n) {
  Gf2Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::symplectic_form(size_t n) {
  Gf2Matrix m(2 * n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    m.set(i, i + n, true);
    m.set(i + n, i, true);
  }
  return m;
}

Gf2Matrix Gf2Matrix::transposed() const {
  Gf2Matrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r) {
    uint64_t bits = data_[r];
    while (bits) {
      size_t c = static_cast<size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      t.set(c, r, true);
    }
  }
  return t;
}

uint64_t Gf2Matrix::apply(uint64_t v) const {
  uint64_t out = 0;
  for (size_t r = 0; r < rows_; ++r) {
    out |= static_cast<uint64_t>(parity64(data_[r] & v)) << r;
  }
  return out;
}

std::string Gf2Matrix::row_string(size_t r) const {
  std::string s(cols_, '0');
  for (size_t c = 0; c < cols_; ++c)
    if (get(r, c)) s[c] = '1';
  return s;
}

uint64_t Gf2Matrix::parse_row(const std::string& s) {
  if (s.size() > 64) throw std::invalid_argument("row too wide");
  uint64_t bits = 0;
  for (size_t c = 0; c < s.size(); ++c) {
    if (s[c] == '1')
      bits |= (1ull << c);
    else if (s[c] != '0')
      throw std::invalid_argument("bit row must be over {0,1}");
  }
  return bits;
}

Gf2Matrix gf2_matmul(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("gf2_matmul: shape mismatch");
  // Row r of A*B is the XOR of B's rows selected by the bits of A's row r.
  Gf2Matrix out(a.rows(), b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    uint64_t acc = 0;
    uint64_t bits = a.row(r);
    while (bits) {
      size_t k = static_cast<size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      acc ^= b.row(k);
    }
    out.set_row(r, acc);
  }
  return out;
}

size_t gf2_rank(const Gf2Matrix& a) {
  std::vector<uint64_t> rows;
  rows.reserve(a.rows());
  for (size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
  size_t rank = 0;
  for (size_t c = 0; c < a.cols(); ++c) {
    uint64_t mask = 1ull << c;
    size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

std::vector<uint64_t> gf2_nullspace(const Gf2Matrix& a) {
  // Column-reduce a copy and read free columns off the echelon form.
  std::vector<uint64_t> rows;
  rows.reserve(a.rows());
  for (size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row(r));
  size_t n = a.cols();
  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t c = 0; c < n; ++c) {
    uint64_t mask = 1ull << c;
    size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<uint64_t> basis;
  for (size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    uint64_t v = 1ull << free;
    for (size_t r = 0; r < rank; ++r) {
      if ((rows[r] >> free) & 1) v |= 1ull << pivot_col[r];
    }
    basis.push_back(v);
  }
  return basis;
}

}  // namespace paulisift
