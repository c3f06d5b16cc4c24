#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rootreg/rational.hpp"

namespace rootreg {

// Dense row-major matrix over double or Rational; sized for the chart and
// jet computations (n <= 12), so no blocking or pivax tuning.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c, T(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }

  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product shape");
    Matrix out(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const T& v = (*this)(i, k);
        if (v == T(0)) continue;
        for (int j = 0; j < o.c_; ++j) out(i, j) += v * o(k, j);
      }
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
  }

  Matrix block(int i0, int j0, int r, int c) const {
    Matrix out(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
    return out;
  }

  void set_block(int i0, int j0, const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) (*this)(i0 + i, j0 + j) = m(i, j);
  }

  // Gauss-Jordan inverse; throws std::domain_error when singular.  For
  // doubles, partial pivoting; for rationals, any nonzero pivot is exact.
  Matrix inverse() const {
    if (r_ != c_) throw std::invalid_argument("inverse: not square");
    int n = r_;
    Matrix a = *this, inv = identity(n);
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      if constexpr (std::is_floating_point_v<T>) {
        T best = 0;
        for (int i = col; i < n; ++i)
          if (std::fabs(a(i, col)) > best) { best = std::fabs(a(i, col)); piv = i; }
        if (piv < 0 || best == 0) throw std::domain_error("singular matrix");
      } else {
        for (int i = col; i < n; ++i)
          if (a(i, col) != T(0)) { piv = i; break; }
        if (piv < 0) throw std::domain_error("singular matrix");
      }
      if (piv != col) {
        for (int j = 0; j < n; ++j) {
          std::swap(a(piv, j), a(col, j));
          std::swap(inv(piv, j), inv(col, j));
        }
      }
      T d = a(col, col);
      for (int j = 0; j < n; ++j) { a(col, j) /= d; inv(col, j) /= d; }
      for (int i = 0; i < n; ++i) {
        if (i == col) continue;
        T f = a(i, col);
        if (f == T(0)) continue;
        for (int j = 0; j < n; ++j) { a(i, j) -= f * a(col, j); inv(i, j) -= f * inv(col, j); }
      }
    }
    return inv;
  }

  T det() const {
    if (r_ != c_) throw std::invalid_argument("det: not square");
    int n = r_;
    Matrix a = *this;
    T out(1);
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      if constexpr (std::is_floating_point_v<T>) {
        T best = 0;
        for (int i = col; i < n; ++i)
          if (std::fabs(a(i, col)) > best) { best = std::fabs(a(i, col)); piv = i; }
        if (piv < 0 || best == 0) return T(0);
      } else {
        for (int i = col; i < n; ++i)
          if (a(i, col) != T(0)) { piv = i; break; }
        if (piv < 0) return T(0);
      }
      if (piv != col) {
        for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
        out = -out;
      }
      out *= a(col, col);
      for (int i = col + 1; i < n; ++i) {
        T f = a(i, col) / a(col, col);
        if (f == T(0)) continue;
        for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      }
    }
    return out;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) {
      double x;
      if constexpr (std::is_floating_point_v<T>) x = std::fabs(static_cast<double>(v));
      else x = std::fabs(to_double(v));
      m = std::max(m, x);
    }
    return m;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  double m = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      double x;
      if constexpr (std::is_floating_point_v<T>) x = std::fabs(static_cast<double>(a(i, j) - b(i, j)));
      else x = std::fabs(to_double(a(i, j) - b(i, j)));
      m = std::max(m, x);
    }
  return m;
}

}  // namespace rootreg
