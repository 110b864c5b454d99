#pragma once

// Small dense matrices over exact scalars, plus the handful of exact
// elimination routines the lattice code needs (symmetric inertia,
// Bareiss determinant, Gauss-Jordan solve, integer kernels, Hermite form).

#include "kvanish/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace kvanish {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()) {
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  template <typename U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// Inertia of a symmetric matrix.
struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

namespace linalg {

/// Inertia by symmetric Gaussian elimination over the rationals.
///
/// The pivot is the first nonzero diagonal entry in row order. When every
/// remaining diagonal entry vanishes but some off-diagonal entry a_ij does
/// not, row/column j is added to row/column i, which makes the new diagonal
/// entry 2*a_ij nonzero.
inline Signature inertia(const RatMatrix& input) {
  if (!input.symmetric()) throw DimensionError("inertia needs a symmetric matrix");
  RatMatrix a = input;
  const std::size_t n = a.rows();
  std::vector<std::size_t> live(n);
  for (std::size_t i = 0; i < n; ++i) live[i] = i;

  Signature sig;
  while (!live.empty()) {
    std::optional<std::size_t> pivot;
    for (std::size_t k = 0; k < live.size() && !pivot; ++k)
      if (a(live[k], live[k]) != 0) pivot = k;

    if (!pivot) {
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t k = 0; k < live.size() && !off; ++k)
        for (std::size_t l = k + 1; l < live.size() && !off; ++l)
          if (a(live[k], live[l]) != 0) off = std::pair{k, l};
      if (!off) break;  // remaining block is zero
      const std::size_t i = live[off->first], j = live[off->second];
      for (std::size_t c = 0; c < n; ++c) a(i, c) += a(j, c);
      for (std::size_t r = 0; r < n; ++r) a(r, i) += a(r, j);
      pivot = off->first;
    }

    const std::size_t p = live[*pivot];
    const Rational d = a(p, p);
    (d > 0 ? sig.positive : sig.negative) += 1;
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(*pivot));
    for (std::size_t r : live) {
      if (a(r, p) == 0) continue;
      const Rational f = a(r, p) / d;
      for (std::size_t c : live) a(r, c) -= f * a(p, c);
    }
  }
  sig.zero = n - sig.positive - sig.negative;
  return sig;
}

/// Fraction-free determinant (Bareiss).
inline Integer determinant(IntMatrix a) {
  if (!a.square()) throw DimensionError("determinant needs a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(s, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Inverse of a nonsingular rational matrix by Gauss-Jordan elimination.
inline RatMatrix inverse(const RatMatrix& input) {
  if (!input.square()) throw DimensionError("inverse needs a square matrix");
  const std::size_t n = input.rows();
  RatMatrix a = input;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) throw PreconditionError("matrix is singular");
    if (p != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(p, c), a(col, c));
        std::swap(inv(p, c), inv(col, c));
      }
    }
    const Rational d = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

inline std::vector<Rational> multiply(const RatMatrix& m, std::span<const Rational> v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<Rational> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

/// Result of reducing one integer row c by unimodular column operations.
///
/// `transform` is unimodular with c * transform = (0, ..., g, ..., 0), where
/// g = gcd(c) >= 0 sits at column `pivot`. The remaining columns of
/// `transform` form a basis of the integer kernel {x : c.x = 0}, and column
/// `pivot` is a particular solution of c.x = g. When c is zero there is no
/// pivot and every column lies in the kernel.
struct RowReduction {
  Integer gcd;
  std::optional<std::size_t> pivot;
  IntMatrix transform;
};

inline RowReduction reduce_row(std::span<const Integer> c) {
  const std::size_t n = c.size();
  std::vector<Integer> a(c.begin(), c.end());
  IntMatrix u = IntMatrix::identity(n);

  auto column_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t r = 0; r < n; ++r) u(r, dst) -= q * u(r, src);
  };

  while (true) {
    std::optional<std::size_t> p;
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != 0 && (!p || num::abs(a[i]) < num::abs(a[*p]))) p = i;
    if (!p) return {0, std::nullopt, std::move(u)};
    bool done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == *p || a[j] == 0) continue;
      const Integer q = a[j] / a[*p];
      a[j] -= q * a[*p];
      column_axpy(j, *p, q);
      if (a[j] != 0) done = false;
    }
    if (done) {
      if (a[*p] < 0) {
        a[*p] = -a[*p];
        for (std::size_t r = 0; r < n; ++r) u(r, *p) = -u(r, *p);
      }
      return {a[*p], p, std::move(u)};
    }
  }
}

/// Row-style Hermite normal form of a full-row-rank integer matrix.
///
/// Pivots are positive and entries above a pivot are reduced into
/// [0, pivot). Rows that become zero are dropped.
inline std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    // Euclid on column `col` across rows r..end.
    while (true) {
      std::optional<std::size_t> p;
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (!p || num::abs(rows[i][col]) < num::abs(rows[*p][col]))) p = i;
      if (!p) break;
      std::swap(rows[r], rows[*p]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        const Integer q = rows[i][col] / rows[r][col];
        for (std::size_t c = col; c < n; ++c) rows[i][c] -= q * rows[r][c];
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = num::floor_div(rows[i][col], rows[r][col]);
      if (q == 0) continue;
      for (std::size_t c = col; c < n; ++c) rows[i][c] -= q * rows[r][c];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Diagonalization Q = L D L^T of a positive definite rational matrix,
/// with L unit lower triangular. Then
///   x^T Q x = sum_k d[k] * (x_k + sum_{j>k} l(j,k) x_j)^2.
struct LdlFactor {
  RatMatrix l;
  std::vector<Rational> d;
};

inline LdlFactor ldl(const RatMatrix& q) {
  if (!q.symmetric()) throw DimensionError("ldl needs a symmetric matrix");
  const std::size_t n = q.rows();
  LdlFactor f{RatMatrix::identity(n), std::vector<Rational>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    Rational dj = q(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= f.l(j, k) * f.l(j, k) * f.d[k];
    if (dj <= 0) throw PreconditionError("form is not positive definite");
    f.d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = q(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= f.l(i, k) * f.l(j, k) * f.d[k];
      f.l(i, j) = s / dj;
    }
  }
  return f;
}

}  // namespace linalg
}  // namespace kvanish
