#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "detlines/matrix.hpp"

namespace detlines {

template <class F>
struct RrefResult {
  Matrix<F> echelon;
  std::vector<size_t> pivots;
  Matrix<F> transform;  // transform * M == echelon
};

// Gauss-Jordan elimination to reduced row echelon form.
template <class F>
RrefResult<F> rref(const Matrix<F>& m, bool with_transform = true) {
  RrefResult<F> out;
  Matrix<F>& e = out.echelon;
  e = m;
  Matrix<F> t = with_transform ? Matrix<F>::identity(m.rows()) : Matrix<F>();
  const size_t rows = m.rows();
  const size_t cols = m.cols();
  const size_t tcols = t.cols();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && is_zero(e(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (size_t j = 0; j < cols; ++j) std::swap(e(p, j), e(r, j));
      for (size_t j = 0; j < tcols; ++j) std::swap(t(p, j), t(r, j));
    }
    const F inv = inverse(e(r, c));
    if (!(e(r, c) == F(1))) {
      for (size_t j = c; j < cols; ++j) e(r, j) *= inv;
      for (size_t j = 0; j < tcols; ++j) t(r, j) *= inv;
    }
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(e(i, c))) continue;
      const F f = e(i, c);
      for (size_t j = c; j < cols; ++j) {
        if (!is_zero(e(r, j))) e(i, j) -= f * e(r, j);
      }
      for (size_t j = 0; j < tcols; ++j) {
        if (!is_zero(t(r, j))) t(i, j) -= f * t(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  if (with_transform) out.transform = std::move(t);
  return out;
}

template <class F>
size_t rank(const Matrix<F>& m) {
  return rref(m, false).pivots.size();
}

// Subspace of F^n held by its canonical basis: the columns are in reduced
// column echelon form, so equal subspaces have identical bases.
template <class F>
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const Matrix<F>& vectors) {
    Subspace s;
    s.n_ = vectors.rows();
    auto r = rref(vectors.transpose(), false);
    const size_t k = r.pivots.size();
    s.basis_ = r.echelon.rows_range(0, k).transpose();
    s.pivots_ = std::move(r.pivots);
    return s;
  }
  static Subspace zero(size_t n) {
    Subspace s;
    s.n_ = n;
    s.basis_ = Matrix<F>(n, 0);
    return s;
  }
  static Subspace full(size_t n) {
    Subspace s;
    s.n_ = n;
    s.basis_ = Matrix<F>::identity(n);
    for (size_t i = 0; i < n; ++i) s.pivots_.push_back(i);
    return s;
  }

  size_t ambient() const { return n_; }
  size_t dim() const { return basis_.cols(); }
  const Matrix<F>& basis() const { return basis_; }
  // Leading coordinate of each basis column.
  const std::vector<size_t>& pivots() const { return pivots_; }

  // Coordinates in the canonical basis, or nullopt when some column is outside.
  std::optional<Matrix<F>> coords(const Matrix<F>& v) const {
    if (v.rows() != n_) throw DimensionError("vector dimension mismatch");
    Matrix<F> c = v.select_rows(pivots_);
    if (basis_ * c != v) return std::nullopt;
    return c;
  }
  bool contains(const Matrix<F>& v) const { return coords(v).has_value(); }
  bool contains(const Subspace& o) const { return contains(o.basis_); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  size_t n_ = 0;
  Matrix<F> basis_;
  std::vector<size_t> pivots_;
};

template <class F>
Subspace<F> image_basis(const Matrix<F>& m) {
  return Subspace<F>::span(m);
}

template <class F>
Subspace<F> kernel_basis(const Matrix<F>& m) {
  auto r = rref(m, false);
  const size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (size_t p : r.pivots) is_pivot[p] = true;
  std::vector<size_t> free;
  for (size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free.push_back(j);
  }
  Matrix<F> k(n, free.size());
  for (size_t a = 0; a < free.size(); ++a) {
    k(free[a], a) = F(1);
    for (size_t i = 0; i < r.pivots.size(); ++i) k(r.pivots[i], a) = -r.echelon(i, free[a]);
  }
  return Subspace<F>::span(k);
}

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& a, const Subspace<F>& b) {
  return Subspace<F>::span(hcat(a.basis(), b.basis()));
}

template <class F>
Subspace<F> subspace_intersection(const Subspace<F>& a, const Subspace<F>& b) {
  Matrix<F> sys = hcat(a.basis(), -b.basis());
  Subspace<F> k = kernel_basis(sys);
  return Subspace<F>::span(a.basis() * k.basis().rows_range(0, a.dim()));
}

// Complement of s in the ambient space: standard vectors at non-pivot coordinates.
template <class F>
Subspace<F> complement(const Subspace<F>& s) {
  const size_t n = s.ambient();
  std::vector<bool> used(n, false);
  for (size_t p : s.pivots()) used[p] = true;
  std::vector<size_t> idx;
  for (size_t i = 0; i < n; ++i) {
    if (!used[i]) idx.push_back(i);
  }
  return Subspace<F>::span(Matrix<F>::identity(n).select_cols(idx));
}

// Complement of s inside `inside`, using the pivot rule on coordinates
// relative to the canonical basis of `inside`.
template <class F>
Subspace<F> complement(const Subspace<F>& s, const Subspace<F>& inside) {
  auto c = inside.coords(s.basis());
  if (!c) throw ContainmentError("complement: subspace is not contained in the enclosing space");
  Subspace<F> local = Subspace<F>::span(*c);
  Subspace<F> rest = complement(local);
  return Subspace<F>::span(inside.basis() * rest.basis());
}

// Some X with a*X == b; free variables set to zero. nullopt if inconsistent.
template <class F>
std::optional<Matrix<F>> try_solve(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve: row mismatch");
  auto r = rref(hcat(a, b), false);
  const size_t n = a.cols();
  Matrix<F> x(n, b.cols());
  for (size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] >= n) return std::nullopt;
    for (size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.echelon(i, n + j);
  }
  return x;
}

template <class F>
Matrix<F> solve(const Matrix<F>& a, const Matrix<F>& b) {
  auto x = try_solve(a, b);
  if (!x) throw ContainmentError("linear system has no solution");
  return *x;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square matrix " + m.shape());
  auto r = rref(m, true);
  if (r.pivots.size() != m.rows()) throw NotInvertible("matrix is singular");
  return r.transform;
}

// Coordinates relative to a family of independent columns, with membership
// check. Reuses one elimination for many queries.
template <class F>
class CoordSystem {
 public:
  CoordSystem() = default;
  explicit CoordSystem(Matrix<F> basis) : basis_(std::move(basis)) {
    auto r = rref(basis_, true);
    if (r.pivots.size() != basis_.cols()) throw DimensionError("coordinate basis is dependent");
    left_ = r.transform.rows_range(0, basis_.cols());
  }
  size_t dim() const { return basis_.cols(); }
  const Matrix<F>& basis() const { return basis_; }
  std::optional<Matrix<F>> try_coords(const Matrix<F>& v) const {
    Matrix<F> c = left_ * v;
    if (basis_ * c != v) return std::nullopt;
    return c;
  }
  Matrix<F> coords(const Matrix<F>& v) const {
    auto c = try_coords(v);
    if (!c) throw ContainmentError("vector outside the span of the coordinate basis");
    return *c;
  }

 private:
  Matrix<F> basis_;
  Matrix<F> left_;
};

// Fraction-free (Bareiss) elimination.
template <class F>
F det(const Matrix<F>& m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix " + m.shape());
  const size_t n = m.rows();
  if (n == 0) return F(1);
  Matrix<F> a = m;
  bool negate = false;
  F prev(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t p = k;
    while (p < n && is_zero(a(p, k))) ++p;
    if (p == n) return F(0);
    if (p != k) {
      for (size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      negate = !negate;
    }
    const F pinv = inverse(prev);
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        F v = a(i, j) * a(k, k);
        v -= a(i, k) * a(k, j);
        a(i, j) = v * pinv;
      }
      a(i, k) = F(0);
    }
    prev = a(k, k);
  }
  F d = a(n - 1, n - 1);
  return negate ? F(-d) : d;
}

// Pseudo-inverse inverting m from Im(m) onto dom_complement (a complement of
// Ker m) and vanishing on cod_complement (a complement of Im m).
template <class F>
Matrix<F> pseudo_inverse_with(const Matrix<F>& m, const Matrix<F>& dom_complement,
                              const Matrix<F>& cod_complement) {
  Matrix<F> image = m * dom_complement;
  Matrix<F> frame = hcat(image, cod_complement);
  if (!frame.is_square()) throw DimensionError("pseudo-inverse: complement dimensions do not fit");
  Matrix<F> target = hcat(dom_complement, Matrix<F>(m.cols(), cod_complement.cols()));
  return target * inverse(frame);
}

template <class F>
Matrix<F> pseudo_inverse(const Matrix<F>& m) {
  Subspace<F> c = complement(kernel_basis(m));
  Subspace<F> r = complement(image_basis(m));
  return pseudo_inverse_with(m, c.basis(), r.basis());
}

// det(T) computed on a T-invariant subspace E containing Im(1 - T).
template <class F>
F det_on_invariant(const Matrix<F>& t, const Matrix<F>& e_basis) {
  const size_t n = t.rows();
  Subspace<F> e = Subspace<F>::span(e_basis);
  if (!e.contains(Matrix<F>::identity(n) - t)) {
    throw ContainmentError("subspace does not contain Im(1 - T)");
  }
  auto c = e.coords(t * e.basis());
  if (!c) throw ContainmentError("subspace is not T-invariant");
  return det(*c);
}

template <class F>
F det_class_det(const Matrix<F>& t) {
  if (!t.is_square()) throw DimensionError("determinant of non-square matrix " + t.shape());
  const size_t n = t.rows();
  if (rank(t) != n) throw NotInvertible("determinant class requires an invertible operator");
  Subspace<F> e = image_basis(Matrix<F>::identity(n) - t);
  if (e.dim() == 0) return F(1);
  return det(*e.coords(t * e.basis()));
}

}  // namespace detlines
