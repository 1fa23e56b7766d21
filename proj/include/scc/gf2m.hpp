/**************************************************************************
 * gf2m.hpp
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

#pragma once

// Binary extension fields GF(2^m), 1 <= m <= 16, and dense matrices over
// them. Elements are polynomials over GF(2) packed into an integer; products
// are carry-less multiplies reduced by a fixed irreducible modulus.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scc {

class FieldError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ZeroDivisionError : public FieldError {
public:
  ZeroDivisionError() : FieldError("inverse of the zero element") {}
};

class SingularMatrixError : public FieldError {
public:
  SingularMatrixError() : FieldError("matrix is singular") {}
};

class FieldTooSmallError : public FieldError {
public:
  using FieldError::FieldError;
};

/// Element of GF(2^m). The field is carried separately by `Field`.
class Elem {
public:
  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t v) : value_(v) {}

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  // Addition in characteristic two does not depend on the modulus.
  friend constexpr Elem operator+(Elem a, Elem b) { return Elem(a.value_ ^ b.value_); }
  constexpr Elem& operator+=(Elem o) {
    value_ ^= o.value_;
    return *this;
  }
  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;

private:
  std::uint32_t value_ = 0;
};

using Symbols = std::vector<Elem>;

inline void add_into(std::span<Elem> acc, std::span<const Elem> x) {
  if (acc.size() != x.size()) throw std::invalid_argument("symbol length mismatch");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

namespace detail {

constexpr int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    p >>= 1;
    ++d;
  }
  return d;
}

constexpr std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); a && da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

}  // namespace detail

/// Smallest (as an integer bitmask) irreducible polynomial of each degree 1..16.
inline constexpr std::array<std::uint32_t, 17> kDefaultModulus = {
    0x0,   0x2,   0x7,   0xb,    0x13,   0x25,   0x43,   0x83,   0x11b,
    0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021, 0x8003, 0x1002b};

/// Trial division by every polynomial of degree 1..deg/2.
constexpr bool is_irreducible(std::uint32_t poly) {
  const int m = detail::poly_degree(poly);
  if (m < 1) return false;
  for (std::uint64_t q = 2; q < (std::uint64_t{1} << (m / 2 + 1)); ++q) {
    if (detail::poly_mod(poly, q) == 0) return false;
  }
  return true;
}

struct FieldParams {
  int m = 0;
  std::uint32_t modulus = 0;

  static FieldParams with_default_modulus(int m) {
    if (m < 1 || m > 16) throw FieldError("extension degree must be in [1, 16]");
    return FieldParams{m, kDefaultModulus[static_cast<std::size_t>(m)]};
  }

  /// Smallest m such that 2^m >= min_size.
  static FieldParams smallest_with_size(std::uint64_t min_size) {
    int m = 1;
    while ((std::uint64_t{1} << m) < min_size) {
      if (++m > 16) throw FieldTooSmallError("no GF(2^m) with m <= 16 has enough elements");
    }
    return with_default_modulus(m);
  }

  friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

class Field {
public:
  explicit Field(FieldParams p) : params_(p) {
    if (p.m < 1 || p.m > 16) throw FieldError("extension degree must be in [1, 16]");
    if (detail::poly_degree(p.modulus) != p.m || !is_irreducible(p.modulus)) {
      throw FieldError("modulus is not irreducible of degree " + std::to_string(p.m));
    }
  }

  const FieldParams& params() const { return params_; }
  int degree() const { return params_.m; }
  std::uint32_t order() const { return std::uint32_t{1} << params_.m; }

  Elem elem(std::uint32_t v) const {
    if (v >= order()) throw FieldError("value out of range for GF(2^" + std::to_string(params_.m) + ")");
    return Elem(v);
  }

  static Elem add(Elem a, Elem b) { return a + b; }

  Elem mul(Elem a, Elem b) const {
    std::uint32_t x = a.value();
    std::uint32_t y = b.value();
    std::uint32_t prod = 0;
    while (y) {
      if (y & 1u) prod ^= x;
      y >>= 1;
      x <<= 1;
    }
    for (int d = 2 * params_.m - 2; d >= params_.m; --d) {
      if (prod & (std::uint32_t{1} << d)) prod ^= params_.modulus << (d - params_.m);
    }
    return Elem(prod);
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r(1);
    while (e) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// a^(2^m - 2), which is a^-1 for a != 0.
  Elem inv(Elem a) const {
    if (a.is_zero()) throw ZeroDivisionError();
    return pow(a, order() - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  friend bool operator==(const Field& a, const Field& b) { return a.params_ == b.params_; }

private:
  FieldParams params_;
};

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix submatrix(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const {
    Matrix out(row_ids.size(), col_ids.size());
    for (std::size_t i = 0; i < row_ids.size(); ++i) {
      for (std::size_t j = 0; j < col_ids.size(); ++j) out(i, j) = (*this)(row_ids[i], col_ids[j]);
    }
    return out;
  }

  void append_row(std::span<const Elem> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline Symbols multiply(const Field& f, const Matrix& a, std::span<const Elem> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  Symbols y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem acc;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += f.mul(a(i, j), x[j]);
    y[i] = acc;
  }
  return y;
}

/// Cauchy matrix G[i][j] = 1 / (x_i + y_j) with x_i = i and y_j = n + j
/// (0-based), so the 2n evaluation points are 0..2n-1.
inline Matrix cauchy_matrix(const Field& f, std::size_t n) {
  if (2 * n > f.order()) {
    throw FieldTooSmallError("cauchy matrix of size " + std::to_string(n) + " needs 2^m >= " +
                             std::to_string(2 * n));
  }
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g(i, j) = f.inv(Elem(static_cast<std::uint32_t>(i)) + Elem(static_cast<std::uint32_t>(n + j)));
    }
  }
  return g;
}

namespace detail {

// Reduces `a` in place to row echelon form, applying the same row operations
// to `rhs` when given. Returns the rank.
inline std::size_t eliminate(const Field& f, Matrix& a, Symbols* rhs) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != rank) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(rank, c));
      if (rhs) std::swap((*rhs)[pivot], (*rhs)[rank]);
    }
    const Elem scale = f.inv(a(rank, col));
    for (std::size_t c = col; c < a.cols(); ++c) a(rank, c) = f.mul(a(rank, c), scale);
    if (rhs) (*rhs)[rank] = f.mul((*rhs)[rank], scale);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == rank || a(r, col).is_zero()) continue;
      const Elem factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) += f.mul(factor, a(rank, c));
      if (rhs) (*rhs)[r] += f.mul(factor, (*rhs)[rank]);
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

inline std::size_t rank(const Field& f, Matrix a) { return detail::eliminate(f, a, nullptr); }

/// Solves a x = rhs for square nonsingular a (Gauss-Jordan).
inline Symbols solve(const Field& f, Matrix a, Symbols rhs) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve requires a square matrix");
  if (rhs.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  if (detail::eliminate(f, a, &rhs) != a.rows()) throw SingularMatrixError();
  return rhs;
}

inline Matrix inverse(const Field& f, const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse requires a square matrix");
  const std::size_t n = a.rows();
  Matrix out(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    Symbols e(n);
    e[c] = Elem(1);
    const Symbols col = solve(f, a, std::move(e));
    for (std::size_t r = 0; r < n; ++r) out(r, c) = col[r];
  }
  return out;
}

}  // namespace scc
