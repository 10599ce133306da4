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

#include <random>

#include "gtest/gtest.h"

namespace paulisift {
namespace {

TEST(Gf2Matrix, SymplecticFormIsSelfInverse) {
  for (size_t n : {1, 2, 5, 8}) {
    Gf2Matrix j = Gf2Matrix::symplectic_form(n);
    EXPECT_EQ(gf2_matmul(j, j), Gf2Matrix::identity(2 * n)) << "n=" << n;
  }
}

TEST(Gf2Matrix, RankOfIdentity) {
  EXPECT_EQ(gf2_rank(Gf2Matrix::identity(10)), 10u);
  EXPECT_EQ(gf2_rank(Gf2Matrix::symplectic_form(5)), 10u);
}

TEST(Gf2Matrix, RankDropsForDependentRows) {
  Gf2Matrix m(3, 4);
  m.set_row(0, 0b0011);
  m.set_row(1, 0b0101);
  m.set_row(2, 0b0110);  // row0 ^ row1
  EXPECT_EQ(gf2_rank(m), 2u);
}

TEST(Gf2Matrix, NullspaceOfParityRow) {
  Gf2Matrix m(1, 2);
  m.set_row(0, 0b11);
  auto basis = gf2_nullspace(m);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], 0b11u);
}

TEST(Gf2Matrix, NullspaceSpansKernel) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    size_t rows = 1 + rng() % 6, cols = 1 + rng() % 12;
    Gf2Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
      m.set_row(r, rng() & ((cols == 64) ? ~0ull : ((1ull << cols) - 1)));
    auto basis = gf2_nullspace(m);
    EXPECT_EQ(basis.size(), cols - gf2_rank(m));
    for (uint64_t v : basis) EXPECT_EQ(m.apply(v), 0u);
  }
}

TEST(Gf2Matrix, MatmulMatchesApply) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Gf2Matrix a(5, 7), b(7, 3);
    for (size_t r = 0; r < 5; ++r) a.set_row(r, rng() & 0x7f);
    for (size_t r = 0; r < 7; ++r) b.set_row(r, rng() & 0x7);
    Gf2Matrix ab = gf2_matmul(a, b);
    // (AB)^T v == B^T (A^T v) for packed vectors.
    Gf2Matrix abt = ab.transposed(), at = a.transposed(), bt = b.transposed();
    for (int k = 0; k < 8; ++k) {
      uint64_t v = rng() & 0x1f;
      EXPECT_EQ(abt.apply(v), bt.apply(at.apply(v)));
    }
  }
}

TEST(Gf2Matrix, MatmulAssociative) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Gf2Matrix a(4, 5), b(5, 6), c(6, 3);
    for (size_t r = 0; r < 4; ++r) a.set_row(r, rng() & 0x1f);
    for (size_t r = 0; r < 5; ++r) b.set_row(r, rng() & 0x3f);
    for (size_t r = 0; r < 6; ++r) c.set_row(r, rng() & 0x7);
    EXPECT_EQ(gf2_matmul(gf2_matmul(a, b), c), gf2_matmul(a, gf2_matmul(b, c)));
  }
}

TEST(Gf2Matrix, ShapeMismatchThrows) {
  EXPECT_THROW(gf2_matmul(Gf2Matrix(2, 3), Gf2Matrix(2, 3)), std::invalid_argument);
}

TEST(Gf2Matrix, RowStringRoundTrip) {
  Gf2Matrix m(1, 6);
  m.set_row(0, 0b101001);
  EXPECT_EQ(m.row_string(0), "100101");
  EXPECT_EQ(Gf2Matrix::parse_row("100101"), 0b101001u);
}

}  // namespace
}  // namespace paulisift
