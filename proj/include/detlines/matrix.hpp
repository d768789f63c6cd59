#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "detlines/exactnum.hpp"

namespace detlines {

// Dense row-major matrix over an exact field F. Zero-sized shapes are valid.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, F(0)) {}
  Matrix(std::initializer_list<std::initializer_list<F>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
      if (row.size() != c_) throw DimensionError("ragged matrix literal");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix zeros(size_t r, size_t c) { return Matrix(r, c); }
  static Matrix unit_vector(size_t n, size_t k) {
    Matrix v(n, 1);
    v(k, 0) = F(1);
    return v;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }

  F& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const F& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const {
    for (const auto& x : a_) {
      if (!detlines::is_zero(x)) return false;
    }
    return true;
  }

  Matrix col(size_t j) const { return cols_range(j, j + 1); }
  Matrix cols_range(size_t from, size_t to) const {
    Matrix m(r_, to - from);
    for (size_t i = 0; i < r_; ++i) {
      for (size_t j = from; j < to; ++j) m(i, j - from) = (*this)(i, j);
    }
    return m;
  }
  Matrix rows_range(size_t from, size_t to) const {
    Matrix m(to - from, c_);
    for (size_t i = from; i < to; ++i) {
      for (size_t j = 0; j < c_; ++j) m(i - from, j) = (*this)(i, j);
    }
    return m;
  }
  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    Matrix m(nr, nc);
    for (size_t i = 0; i < nr; ++i) {
      for (size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    }
    return m;
  }
  void set_block(size_t r0, size_t c0, const Matrix& b) {
    for (size_t i = 0; i < b.rows(); ++i) {
      for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
  }
  Matrix select_cols(const std::vector<size_t>& idx) const {
    Matrix m(r_, idx.size());
    for (size_t i = 0; i < r_; ++i) {
      for (size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    }
    return m;
  }
  Matrix select_rows(const std::vector<size_t>& idx) const {
    Matrix m(idx.size(), c_);
    for (size_t k = 0; k < idx.size(); ++k) {
      for (size_t j = 0; j < c_; ++j) m(k, j) = (*this)(idx[k], j);
    }
    return m;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (size_t i = 0; i < r_; ++i) {
      for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) {
      throw DimensionError("matrix product shape mismatch " + a.shape() + " * " + b.shape());
    }
    Matrix m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i) {
      for (size_t k = 0; k < a.c_; ++k) {
        const F& x = a(i, k);
        if (detlines::is_zero(x)) continue;
        for (size_t j = 0; j < b.c_; ++j) {
          if (!detlines::is_zero(b(k, j))) m(i, j) += x * b(k, j);
        }
      }
    }
    return m;
  }
  Matrix scaled(const F& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string shape() const { return std::to_string(r_) + "x" + std::to_string(c_); }

  std::string str() const {
    std::string s = "[";
    for (size_t i = 0; i < r_; ++i) {
      s += i ? ", [" : "[";
      for (size_t j = 0; j < c_; ++j) {
        if (j) s += ", ";
        s += to_text((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) {
      throw DimensionError("matrix shape mismatch " + shape() + " vs " + o.shape());
    }
  }

  size_t r_ = 0;
  size_t c_ = 0;
  std::vector<F> a_;
};

template <class F>
Matrix<F> hcat(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw DimensionError("hcat row mismatch");
  Matrix<F> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

template <class F>
Matrix<F> hcat(std::initializer_list<Matrix<F>> parts) {
  size_t rows = parts.size() ? parts.begin()->rows() : 0;
  size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw DimensionError("hcat row mismatch");
    cols += p.cols();
  }
  Matrix<F> m(rows, cols);
  size_t at = 0;
  for (const auto& p : parts) {
    m.set_block(0, at, p);
    at += p.cols();
  }
  return m;
}

template <class F>
Matrix<F> vcat(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw DimensionError("vcat column mismatch");
  Matrix<F> m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

template <class F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

using Mat = Matrix<Gaussian>;
using RMat = Matrix<RatFunc>;
using PMat = Matrix<Polynomial>;

}  // namespace detlines
