#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "coxsaito/errors.hpp"

namespace coxsaito {

/// Dense rectangular matrix, row-major.  The entry type only needs ring
/// operations (+, -, *) and a way to build zero/one values, supplied by the
/// caller where the type cannot infer them (polynomials need a variable
/// count, for instance).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const T& fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
  Matrix(size_t rows, size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) throw DimensionMismatch("matrix entry count does not match shape");
  }

  static Matrix identity(size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<T>& entries() const { return a_; }

  Matrix transpose() const {
    std::vector<T> t;
    t.reserve(a_.size());
    for (size_t j = 0; j < cols_; ++j)
      for (size_t i = 0; i < rows_; ++i) t.push_back((*this)(i, j));
    return Matrix(cols_, rows_, std::move(t));
  }

  /// Column j as a vector.
  std::vector<T> column(size_t j) const {
    std::vector<T> c;
    c.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(a_.size());
    for (const auto& x : a_) out.push_back(f(x));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
    std::vector<T> out;
    out.reserve(rows_ * o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < o.cols_; ++j) {
        T acc = (*this)(i, 0) * o(0, j);
        for (size_t k = 1; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
        out.push_back(std::move(acc));
      }
    return Matrix(rows_, o.cols_, std::move(out));
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shape mismatch");
  }

  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<T> a_;
};

namespace detail {

// Determinant of the submatrix on rows [first_row, n) and the given columns,
// by Laplace expansion along the first row with memoization on column sets.
template <class T>
T minor_det(const Matrix<T>& m, size_t first_row, unsigned colmask, std::vector<T>& memo,
            std::vector<char>& have) {
  const size_t n = m.rows();
  if (have[colmask]) return memo[colmask];
  T acc;
  bool started = false;
  int sign = 1;
  for (size_t j = 0; j < n; ++j) {
    if (!(colmask & (1u << j))) continue;
    const T& a = m(first_row, j);
    unsigned rest = colmask & ~(1u << j);
    if (first_row + 1 == n) {
      acc = a;
      started = true;
      break;
    }
    T sub = minor_det(m, first_row + 1, rest, memo, have);
    T term = a * sub;
    if (!started) {
      acc = sign > 0 ? term : -term;
      started = true;
    } else {
      acc = sign > 0 ? acc + term : acc - term;
    }
    sign = -sign;
  }
  memo[colmask] = acc;
  have[colmask] = 1;
  return acc;
}

}  // namespace detail

/// Exact determinant by cofactor expansion with memoized minors
/// (O(n 2^n) ring multiplications).  Supports n <= 16.
template <class T>
T determinant(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  const size_t n = m.rows();
  if (n == 0) throw DimensionMismatch("determinant of an empty matrix");
  if (n > 16) throw DimensionMismatch("determinant: matrix too large");
  std::vector<T> memo(size_t{1} << n);
  std::vector<char> have(size_t{1} << n, 0);
  return detail::minor_det(m, 0, (1u << n) - 1u, memo, have);
}

/// Adjugate (classical adjoint): adj(M) * M = M * adj(M) = det(M) I.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m, const T& one) {
  if (!m.is_square()) throw DimensionMismatch("adjugate of a non-square matrix");
  const size_t n = m.rows();
  if (n == 1) return Matrix<T>(1, 1, one);
  std::vector<T> out;
  out.reserve(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      // adj(i, j) = (-1)^(i+j) det(M without row j, column i)
      std::vector<T> sub;
      sub.reserve((n - 1) * (n - 1));
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        for (size_t c = 0; c < n; ++c)
          if (c != i) sub.push_back(m(r, c));
      }
      T d = determinant(Matrix<T>(n - 1, n - 1, std::move(sub)));
      out.push_back(((i + j) % 2 == 0) ? d : -d);
    }
  }
  return Matrix<T>(n, n, std::move(out));
}

}  // namespace coxsaito
