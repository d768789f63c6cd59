#pragma once

#include <string>

#include "detlines/linalg.hpp"

namespace detlines {

// The c with v_1 ^ ... ^ v_n = c * (b_1 ^ ... ^ b_n). Columns of `vectors`
// must lie in the span of the independent columns of `reference`.
Gaussian wedge_scalar(const Mat& vectors, const Mat& reference);

// Same, with the reference given by an existing coordinate system.
Gaussian wedge_scalar(const Mat& vectors, const CoordSystem<Gaussian>& reference);

// Isomorphism of determinant lines stored as a scalar relative to fixed bases
// on both sides. The labels name the lines and are checked on composition.
struct LineIso {
  std::string source;
  std::string target;
  Gaussian scalar{1};

  static LineIso identity(const std::string& line) { return {line, line, Gaussian(1)}; }
};

// g after f; requires f.target == g.source.
LineIso compose(const LineIso& f, const LineIso& g);
LineIso inverse(const LineIso& f);
// f (x) g between tensor product lines.
LineIso tensor(const LineIso& f, const LineIso& g);

// Effect on the stored scalar of a line |H+| (x) |H-|* when its bases are
// replaced by g_plus * basis and g_minus * basis.
Gaussian graded_basis_change(const Mat& g_plus, const Mat& g_minus);

// Re-express l after the source bases change by (g_plus, g_minus).
LineIso change_source_basis(const LineIso& l, const Mat& g_plus, const Mat& g_minus);
// Re-express l after the target bases change by (g_plus, g_minus).
LineIso change_target_basis(const LineIso& l, const Mat& g_plus, const Mat& g_minus);

}  // namespace detlines
