#include "detlines/torsion.hpp"

namespace detlines {

namespace {

Subspace<Gaussian> kernel_of(const Mat& m) {
  return m.rows() == 0 ? Subspace<Gaussian>::full(m.cols()) : kernel_basis(m);
}

void require_exact(const SixTermSequence& s) {
  if (auto bad = first_inexact_node(s)) {
    throw ValidationError("hexagon is not exact at node " + std::to_string(*bad), *bad);
  }
}

}  // namespace

TorsionChoices canonical_choices(const SixTermSequence& s) {
  TorsionChoices c;
  for (size_t k = 0; k < 6; ++k) c.complements[k] = complement(kernel_of(s.maps[k])).basis();
  return c;
}

TorsionChoices random_choices(const SixTermSequence& s, Rng& rng, bool gaussian) {
  TorsionChoices c;
  for (size_t k = 0; k < 6; ++k) {
    Subspace<Gaussian> ker = kernel_of(s.maps[k]);
    Mat t = complement(ker).basis();
    t += ker.basis() * rng.matrix(ker.dim(), t.cols(), gaussian);
    Mat g = rng.unipotent(t.cols(), gaussian);
    for (size_t j = 0; j < g.cols(); ++j) {
      Gaussian f = rng.nonzero(gaussian);
      for (size_t i = 0; i < g.rows(); ++i) g(i, j) *= f;
    }
    c.complements[k] = t * g;
  }
  return c;
}

long torsion_sign_exponent(const std::array<size_t, 6>& eps) {
  const long e1p = static_cast<long>(eps[0]), e2p = static_cast<long>(eps[1]);
  const long ep = static_cast<long>(eps[2]), e1m = static_cast<long>(eps[3]);
  const long e2m = static_cast<long>(eps[4]), em = static_cast<long>(eps[5]);
  return (e2p + 1) * (e1m + e1p) + e1m * (ep + em) + em * (e2p + e2m) + ep;
}

LineIso torsion_scalar(const SixTermSequence& s) { return torsion_scalar(s, canonical_choices(s)); }

LineIso torsion_scalar(const SixTermSequence& s, const TorsionChoices& c) {
  require_exact(s);
  const auto& t = c.complements;
  for (size_t k = 0; k < 6; ++k) {
    if (t[k].rows() != s.dims[k]) throw DimensionError("complement has the wrong ambient size");
    if (rank(hcat(kernel_of(s.maps[k]).basis(), t[k])) != s.dims[k] ||
        rank(t[k]) != t[k].cols()) {
      throw ValidationError("chosen subspace is not a complement at node " + std::to_string(k),
                            static_cast<int>(k));
    }
  }
  // Node k+1 splits as (image of the complement at k) + (complement at k+1).
  auto node_wedge = [&](size_t k) {
    const size_t prev = (k + 5) % 6;
    const Mat v = hcat(s.maps[prev] * t[prev], t[k]);
    return det(v);
  };
  const Gaussian a1 = node_wedge(1);
  const Gaussian a2 = node_wedge(4);
  const Gaussian b1 = node_wedge(0);
  const Gaussian b2 = node_wedge(3);
  const Gaussian b3 = node_wedge(2);
  const Gaussian b4 = node_wedge(5);
  std::array<size_t, 6> eps{};
  for (size_t k = 0; k < 6; ++k) eps[k] = c.degree(k);
  Gaussian value = (b1 * b3) / (b2 * b4) * (a2 / a1);
  if (torsion_sign_exponent(eps) % 2 != 0) value = -value;
  return {"|V+2|(x)|V-2|*", "(|V+1|(x)|V-1|*)(x)(|V+|(x)|V-|*)", value};
}

TriangleData triangle_data(const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a) {
  TriangleData out;
  out.triangle = fold_triangle(d1, d2, a);
  out.h1 = homology(out.triangle.d1);
  out.h2 = homology(out.triangle.d2);
  out.hc = homology(out.triangle.cone);
  out.hexagon = six_term(out.triangle, out.h1, out.h2, out.hc);
  return out;
}

LineIso triangle_torsion(const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a) {
  LineIso l = torsion_scalar(triangle_data(d1, d2, a).hexagon);
  l.source = "|D2|";
  l.target = "|D1|(x)|C|";
  return l;
}

SixTermSequence stabilize_hexagon(const SixTermSequence& s, size_t n_plus, size_t n_minus,
                                  size_t m_plus, size_t m_minus) {
  const auto& m = s.maps;
  auto incl_last = [](const Mat& old, size_t skip, size_t extra) {
    // [[old, 0], [0, 0], [0, I]] : old.cols + extra -> old.rows + skip + extra
    Mat r(old.rows() + skip + extra, old.cols() + extra);
    r.set_block(0, 0, old);
    r.set_block(old.rows() + skip, old.cols(), Mat::identity(extra));
    return r;
  };
  auto proj_middle = [](const Mat& old, size_t keep, size_t drop) {
    // [[old, 0, 0], [0, I, 0]] : old.cols + keep + drop -> old.rows + keep
    Mat r(old.rows() + keep, old.cols() + keep + drop);
    r.set_block(0, 0, old);
    r.set_block(old.rows(), old.cols(), Mat::identity(keep));
    return r;
  };
  return SixTermSequence::make({
      block_diag(m[0], Mat(m_plus, n_plus)),
      incl_last(m[1], n_minus, m_plus),
      proj_middle(m[2], n_minus, m_plus),
      block_diag(m[3], Mat(m_minus, n_minus)),
      incl_last(m[4], n_plus, m_minus),
      proj_middle(m[5], n_plus, m_minus),
  });
}

int stabilization_sign(size_t n_plus, size_t n_minus, size_t m_plus, size_t m_minus) {
  return ((n_minus + n_plus * (m_plus + m_minus)) % 2 == 0) ? 1 : -1;
}

}  // namespace detlines
