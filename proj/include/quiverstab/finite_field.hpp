#pragma once

// Dense matrices over a prime field F_p with Gaussian elimination.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "quiverstab/errors.hpp"

namespace quiverstab::ff {

using Elem = std::uint64_t;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw domain_error(std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 31)) throw domain_error("prime must be below 2^31");
}

inline Elem add(Elem a, Elem b, Elem p) { return (a + b) % p; }
inline Elem sub(Elem a, Elem b, Elem p) { return (a + p - b) % p; }
inline Elem mul(Elem a, Elem b, Elem p) { return (a * b) % p; }
inline Elem neg(Elem a, Elem p) { return a == 0 ? 0 : p - a; }

inline Elem pow(Elem base, std::uint64_t exp, Elem p) {
  Elem result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1U) result = mul(result, base, p);
    base = mul(base, base, p);
    exp >>= 1U;
  }
  return result;
}

inline Elem inv(Elem a, Elem p) {
  if (a % p == 0) throw domain_error("zero has no inverse");
  return pow(a, p - 2, p);
}

// Reduces a signed integer into [0, p).
inline Elem from_int(std::int64_t v, Elem p) {
  const auto m = static_cast<std::int64_t>(p);
  return static_cast<Elem>(((v % m) + m) % m);
}

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const noexcept {
    for (auto x : data_)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const Matrix&) const = default;
  auto operator<=>(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b, Elem p) {
  if (a.cols() != b.rows()) throw domain_error("matrix shape mismatch in multiply");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = (out(i, j) + aik * b(k, j)) % p;
    }
  return out;
}

inline Matrix scale(const Matrix& a, Elem s, Elem p) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = mul(a(i, j), s, p);
  return out;
}

// Rows of `top` followed by rows of `bottom`.
inline Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() != 0 && bottom.rows() != 0 && top.cols() != bottom.cols())
    throw domain_error("matrix shape mismatch in stack");
  const std::size_t cols = top.rows() != 0 ? top.cols() : bottom.cols();
  Matrix out(top.rows() + bottom.rows(), cols);
  for (std::size_t r = 0; r < top.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = top(r, c);
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c) out(top.rows() + r, c) = bottom(r, c);
  return out;
}

struct EchelonForm {
  Matrix reduced;  // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;
};

inline EchelonForm rref(Matrix m, Elem p) {
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(pivot, c));
    const Elem scale_by = inv(m(row, col), p);
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = mul(m(row, c), scale_by, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Elem factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = sub(m(r, c), mul(factor, m(row, c), p), p);
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix reduced(row, m.cols());
  for (std::size_t r = 0; r < row; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) reduced(r, c) = m(r, c);
  return {std::move(reduced), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m, Elem p) { return rref(m, p).pivots.size(); }

// Determinant of a square matrix; the empty matrix has determinant 1.
inline Elem determinant(Matrix m, Elem p) {
  if (m.rows() != m.cols())
    throw domain_error("determinant of a non-square " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       " matrix");
  const std::size_t n = m.rows();
  Elem det = 1 % p;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(pivot, c));
      det = neg(det, p);
    }
    det = mul(det, m(col, col), p);
    const Elem pivot_inv = inv(m(col, col), p);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Elem factor = mul(m(r, col), pivot_inv, p);
      for (std::size_t c = col; c < n; ++c) m(r, c) = sub(m(r, c), mul(factor, m(col, c), p), p);
    }
  }
  return det;
}

inline Matrix inverse(const Matrix& m, Elem p) {
  if (m.rows() != m.cols()) throw domain_error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const EchelonForm e = rref(aug, p);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw domain_error("matrix is singular");
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = e.reduced(r, n + c);
  return out;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Elem p, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng() % p;
  return m;
}

inline Matrix random_invertible(std::size_t n, Elem p, std::mt19937_64& rng) {
  while (true) {
    Matrix m = random_matrix(n, n, p, rng);
    if (determinant(m, p) != 0) return m;
  }
}

}  // namespace quiverstab::ff
