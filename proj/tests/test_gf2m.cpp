/**************************************************************************
 * test_gf2m.cpp
 *
 * Copyright 2026 The scc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scc/combinatorics.hpp"
#include "scc/gf2m.hpp"

namespace scc {
namespace {

const Field kGF4(FieldParams::with_default_modulus(2));

TEST(Gf2m, DefaultModuliAreIrreducibleOfExactDegree) {
  for (int m = 1; m <= 16; ++m) {
    const auto p = FieldParams::with_default_modulus(m);
    EXPECT_EQ(detail::poly_degree(p.modulus), m);
    EXPECT_TRUE(is_irreducible(p.modulus)) << "m=" << m;
    EXPECT_NO_THROW(Field{p});
  }
}

TEST(Gf2m, RejectsReducibleOrMisdegreedModulus) {
  EXPECT_THROW(Field(FieldParams{2, 0x5}), FieldError);  // x^2 + 1 = (x + 1)^2
  EXPECT_THROW(Field(FieldParams{3, 0x7}), FieldError);  // degree 2
  EXPECT_THROW(FieldParams::with_default_modulus(17), FieldError);
  EXPECT_THROW(FieldParams::with_default_modulus(0), FieldError);
}

TEST(Gf2m, SmallestFieldWithSize) {
  EXPECT_EQ(FieldParams::smallest_with_size(4).m, 2);
  EXPECT_EQ(FieldParams::smallest_with_size(5).m, 3);
  EXPECT_EQ(FieldParams::smallest_with_size(12).m, 4);
  EXPECT_EQ(FieldParams::smallest_with_size(1).m, 1);
}

TEST(Gf2m, AddExamples) {
  const Elem a = kGF4.elem(3);
  EXPECT_EQ(Field::add(a, a), Elem(0));
  EXPECT_EQ(Field::add(a, Elem(0)), a);
  EXPECT_EQ(Field::add(kGF4.elem(2), kGF4.elem(3)), Elem(1));
}

TEST(Gf2m, MulExamples) {
  const Elem a = kGF4.elem(2);
  EXPECT_EQ(kGF4.mul(a, Elem(1)), a);
  EXPECT_EQ(kGF4.mul(a, Elem(0)), Elem(0));
  // x * x = x^2 = x + 1 mod x^2 + x + 1.
  EXPECT_EQ(oracle::poly_mulmod(2, 2, 0x7), 3u);
  EXPECT_EQ(kGF4.mul(a, a), Elem(3));
}

TEST(Gf2m, InvExamples) {
  EXPECT_EQ(kGF4.inv(Elem(1)), Elem(1));
  EXPECT_EQ(oracle::inverse_by_search(2, 2, 0x7), 3u);
  EXPECT_EQ(kGF4.inv(Elem(2)), Elem(3));
  EXPECT_THROW(kGF4.inv(Elem(0)), ZeroDivisionError);
}

TEST(Gf2m, MulMatchesSchoolbookOracleExhaustivelyUpToGF256) {
  for (int m = 1; m <= 8; ++m) {
    const Field f(FieldParams::with_default_modulus(m));
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      for (std::uint32_t b = 0; b < f.order(); ++b) {
        ASSERT_EQ(f.mul(Elem(a), Elem(b)).value(), oracle::poly_mulmod(a, b, f.params().modulus))
            << "m=" << m << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(Gf2m, FieldAxiomsOnRandomTriples) {
  std::mt19937 rng(17);
  for (int m : {2, 3, 4, 8, 12, 16}) {
    const Field f(FieldParams::with_default_modulus(m));
    std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
    for (int i = 0; i < 2000; ++i) {
      const Elem a(pick(rng)), b(pick(rng)), c(pick(rng));
      ASSERT_EQ(f.mul(a, b), f.mul(b, a));
      ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_EQ(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
      if (!a.is_zero()) {
        ASSERT_EQ(f.mul(a, f.inv(a)), Elem(1));
      }
    }
  }
}

TEST(Gf2m, CauchyMatrixShapes) {
  const Field f4(FieldParams::with_default_modulus(4));
  const Matrix g1 = cauchy_matrix(f4, 1);
  ASSERT_EQ(g1.rows(), 1u);
  EXPECT_FALSE(g1(0, 0).is_zero());

  const Matrix g6 = cauchy_matrix(f4, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) EXPECT_FALSE(g6(i, j).is_zero());
  }
  EXPECT_THROW(cauchy_matrix(Field(FieldParams::with_default_modulus(3)), 6), FieldTooSmallError);
}

TEST(Gf2m, EverySquareSubmatrixOfCauchyIsNonsingular) {
  const Field f(FieldParams::with_default_modulus(4));
  const Matrix g = cauchy_matrix(f, 6);
  for (std::size_t k = 1; k <= 4; ++k) {
    for_each_subset(6, k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(6, k, [&](const std::vector<std::size_t>& cols) {
        EXPECT_NE(oracle::leibniz_det(oracle::minor_of(g, rows, cols), f.params().modulus), 0u);
        EXPECT_EQ(rank(f, g.submatrix(rows, cols)), k);
        return true;
      });
      return true;
    });
  }
}

TEST(Gf2m, RankExamples) {
  EXPECT_EQ(rank(kGF4, Matrix::identity(5)), 5u);
  EXPECT_EQ(rank(kGF4, Matrix(4, 3)), 0u);
  Matrix dup(2, 2);
  dup(0, 0) = Elem(2);
  dup(0, 1) = Elem(3);
  dup(1, 0) = kGF4.mul(Elem(2), Elem(2));
  dup(1, 1) = kGF4.mul(Elem(3), Elem(2));
  EXPECT_EQ(rank(kGF4, dup), 1u);
}

TEST(Gf2m, SolveExamples) {
  const Symbols v{Elem(1), Elem(2), Elem(3)};
  EXPECT_EQ(solve(kGF4, Matrix::identity(3), v), v);
  EXPECT_THROW(solve(kGF4, Matrix(3, 3), v), SingularMatrixError);
  EXPECT_THROW(solve(kGF4, Matrix(2, 3), Symbols(2)), std::invalid_argument);
}

TEST(Gf2m, SolveInvertsMultiplyOnRandomVectors) {
  std::mt19937 rng(5);
  for (int m : {4, 6, 8}) {
    const Field f(FieldParams::with_default_modulus(m));
    std::uniform_int_distribution<std::uint32_t> pick(0, f.order() - 1);
    for (std::size_t n : {1u, 3u, 6u, 10u}) {
      if (2 * n > f.order()) continue;
      const Matrix g = cauchy_matrix(f, n);
      for (int trial = 0; trial < 50; ++trial) {
        Symbols x(n);
        for (auto& e : x) e = Elem(pick(rng));
        ASSERT_EQ(solve(f, g, multiply(f, g, x)), x);
      }
      const Matrix gi = inverse(f, g);
      Symbols e(n);
      e[0] = Elem(1);
      EXPECT_EQ(multiply(f, g, multiply(f, gi, e)), e);
    }
  }
}

}  // namespace
}  // namespace scc
