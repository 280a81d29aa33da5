#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tame/bigint.hpp"

namespace tame {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (long long x : r) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix scalar(std::size_t n, const Int& c) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0) {
    IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) fail(ErrorKind::DimensionMismatch, "ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows_if_empty = 0) {
    return from_rows(cols, rows_if_empty).transpose();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Int> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector row(std::size_t i) const { return IntVector(row_span(i).begin(), row_span(i).end()); }
  IntVector col(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  const std::vector<Int>& data() const noexcept { return data_; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix select_rows(std::span<const std::size_t> idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  IntMatrix select_cols(std::span<const std::size_t> idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
  }
  /// col[dst] += c * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix& a, const IntMatrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
      if (a.data_[k] < b.data_[k]) return std::strong_ordering::less;
      if (b.data_[k] < a.data_[k]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) fail(ErrorKind::DimensionMismatch, "matrix-vector shape");
    IntVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend RationalVector operator*(const IntMatrix& a, const RationalVector& v) {
    if (a.cols_ != v.size()) fail(ErrorKind::DimensionMismatch, "matrix-vector shape");
    RationalVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (a(i, j) != 0) out[i] += Rational(a(i, j)) * v[j];
    return out;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::DimensionMismatch, "matrix sum shape");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::DimensionMismatch, "matrix difference shape");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend IntMatrix operator*(const Int& c, IntMatrix a) {
    for (auto& x : a.data_) x *= c;
    return a;
  }

  IntMatrix power(unsigned k) const {
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (k > 0) {
      if (k & 1u) result = result * base;
      base = base * base;
      k >>= 1u;
    }
    return result;
  }

  /// Fraction-free (Bareiss) determinant.
  Int determinant() const {
    if (!is_square()) fail(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (m(k, k) == 0) {
        std::size_t r = k + 1;
        while (r < n && m(r, k) == 0) ++r;
        if (r == n) return 0;
        m.swap_rows(k, r);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.str(); }

inline Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "pairing of vectors of different length");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVector operator+(IntVector a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline IntVector operator-(IntVector a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline IntVector operator-(IntVector a) {
  for (auto& x : a) x = -x;
  return a;
}
inline IntVector scale(const Int& c, IntVector a) {
  for (auto& x : a) x *= c;
  return a;
}

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

/// Solves A x = b over the rationals for square nonsingular A.
inline RationalVector solve_rational(const IntMatrix& a, const RationalVector& b) {
  if (!a.is_square() || a.rows() != b.size()) fail(ErrorKind::DimensionMismatch, "solve_rational shape");
  const std::size_t n = a.rows();
  std::vector<RationalVector> m(n, RationalVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a(i, j));
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) fail(ErrorKind::SingularMatrix, "matrix is singular");
    std::swap(m[piv], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

/// Inverse of a matrix that is invertible over the integers.
inline IntMatrix inverse_unimodular(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n);
    e[j] = 1;
    RationalVector x = solve_rational(a, e);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_integer(x[i])) fail(ErrorKind::NonInvertible, "matrix is not invertible over Z: " + a.str());
      inv(i, j) = numerator(x[i]);
    }
  }
  return inv;
}

}  // namespace tame
