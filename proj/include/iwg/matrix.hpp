#pragma once

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "iwg/arith.hpp"

namespace iwg {

/// Small dense row-major matrix over a commutative ring.
template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const R& fill) : r_(rows), c_(cols), d_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const R& like) {
    Matrix m(n, n, zero_like(like));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(like);
    return m;
  }

  /// Build from nested integer rows (rows must have equal length).
  static Matrix from_rows(const std::vector<std::vector<long>>& rows, const R& like) {
    std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
    Matrix m(nr, nc, zero_like(like));
    for (std::size_t i = 0; i < nr; ++i) {
      if (rows[i].size() != nc) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = from_int_like(like, rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  R& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
    R z = a.d_.empty() ? (b.d_.empty() ? R() : zero_like(b.d_[0])) : zero_like(a.d_[0]);
    Matrix m(a.r_, b.c_, z);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const R& x = a(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) = m(i, j) + x * b(k, j);
      }
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.d_.size(); ++i) a.d_[i] = a.d_[i] + b.d_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.d_.size(); ++i) a.d_[i] = a.d_[i] - b.d_[i];
    return a;
  }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.d_) x = -x;
    return m;
  }
  friend Matrix operator*(const R& s, Matrix a) {
    for (auto& x : a.d_) x = s * x;
    return a;
  }

  Matrix transpose() const {
    Matrix m(c_, r_, d_.empty() ? R() : zero_like(d_[0]));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  /// Apply f entrywise, producing a matrix over another ring.
  template <class F>
  auto map(F f) const {
    using S = decltype(f(d_[0]));
    Matrix<S> m;
    m.r_ = r_;
    m.c_ = c_;
    m.d_.reserve(d_.size());
    for (const auto& x : d_) m.d_.push_back(f(x));
    return m;
  }

  /// Horizontal concatenation [a | b].
  friend Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_) throw std::invalid_argument("row count mismatch in hconcat");
    R z = !a.d_.empty() ? zero_like(a.d_[0]) : zero_like(b.d_.at(0));
    Matrix m(a.r_, a.c_ + b.c_, z);
    for (std::size_t i = 0; i < a.r_; ++i) {
      for (std::size_t j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
    }
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (std::size_t i = 0; i < a.d_.size(); ++i)
      if (!is_zero(R(a.d_[i] - b.d_[i]))) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.r_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.c_; ++j) os << (j ? ", " : "") << m(i, j);
      os << "]";
    }
    return os << "]";
  }

  template <class S>
  friend class Matrix;

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<R> d_;
};

using MatZ = Matrix<Integer>;
using MatQ = Matrix<Rational>;

inline MatQ to_rational(const MatZ& m) {
  return m.map([](const Integer& x) { return Rational(x); });
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
inline MatQ inverse(const MatQ& a) {
  std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  MatQ m = a, inv = MatQ::identity(n, Rational(0));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) throw InputError("singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    Rational s = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= s;
      inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Minimum p-adic valuation over all entries (infinity for the zero matrix).
inline Valuation min_valuation(const MatQ& m, long p) {
  Valuation v = Valuation::infinity();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v = min(v, vp(m(i, j), p));
  return v;
}

inline bool is_p_integral(const MatQ& m, long p) { return min_valuation(m, p) >= Valuation(0); }

}  // namespace iwg
