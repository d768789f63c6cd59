#include "detlines/detline.hpp"

namespace detlines {

Gaussian wedge_scalar(const Mat& vectors, const Mat& reference) {
  if (vectors.cols() != reference.cols() || vectors.rows() != reference.rows()) {
    throw DimensionError("wedge: " + vectors.shape() + " against reference " + reference.shape());
  }
  return wedge_scalar(vectors, CoordSystem<Gaussian>(reference));
}

Gaussian wedge_scalar(const Mat& vectors, const CoordSystem<Gaussian>& reference) {
  if (vectors.cols() != reference.dim()) {
    throw DimensionError("wedge: vector count differs from the reference basis size");
  }
  return det(reference.coords(vectors));
}

LineIso compose(const LineIso& f, const LineIso& g) {
  if (f.target != g.source) {
    throw DimensionError("cannot compose line isomorphisms: '" + f.target + "' vs '" + g.source + "'");
  }
  return {f.source, g.target, f.scalar * g.scalar};
}

LineIso inverse(const LineIso& f) {
  if (f.scalar.is_zero()) throw DivisionByZero();
  return {f.target, f.source, f.scalar.inv()};
}

LineIso tensor(const LineIso& f, const LineIso& g) {
  return {f.source + " (x) " + g.source, f.target + " (x) " + g.target, f.scalar * g.scalar};
}

Gaussian graded_basis_change(const Mat& g_plus, const Mat& g_minus) {
  return det(g_plus) / det(g_minus);
}

LineIso change_source_basis(const LineIso& l, const Mat& g_plus, const Mat& g_minus) {
  return {l.source, l.target, l.scalar * graded_basis_change(g_plus, g_minus)};
}

LineIso change_target_basis(const LineIso& l, const Mat& g_plus, const Mat& g_minus) {
  return {l.source, l.target, l.scalar / graded_basis_change(g_plus, g_minus)};
}

}  // namespace detlines
