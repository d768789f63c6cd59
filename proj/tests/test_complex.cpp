#include "doctest.h"

#include "detlines/complex.hpp"
#include "detlines/generators.hpp"

using namespace detlines;

namespace {

ChainComplex point_complex(int degree) {
  ChainComplex d;
  d.space.dims[degree] = 1;
  return d;
}

ChainMap scalar_map(int degree, int c) {
  ChainMap a;
  a.comps[degree] = Mat{{c}};
  return a;
}

// Exactness at a node: the composite vanishes and the ranks add up.
bool exact_at(const Mat& in, const Mat& out, size_t dim) {
  return (out * in).is_zero() && rank(in) + rank(out) == dim;
}

}  // namespace

TEST_CASE("validate_complex") {
  ChainComplex d;
  d.space.dims = {{0, 1}, {1, 1}, {2, 1}};
  d.diffs[1] = Mat{{1}};
  d.diffs[2] = Mat{{1}};
  try {
    validate_complex(d);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.degree() == 2);
  }
  d.diffs[1] = Mat{{0}};
  CHECK_NOTHROW(validate_complex(d));
  CHECK_NOTHROW(validate_complex(ChainComplex{}));
}

TEST_CASE("homology") {
  CHECK(homology(point_complex(3)).degrees.at(3).dim() == 1);

  ChainComplex id;
  id.space.dims = {{0, 1}, {1, 1}};
  id.diffs[1] = Mat{{1}};
  for (const auto& [j, h] : homology(id).degrees) CHECK(h.dim() == 0);

  ChainComplex row;
  row.space.dims = {{0, 1}, {1, 2}};
  row.diffs[1] = Mat{{1, 0}};
  const HomologyData h = homology(row);
  CHECK(h.degrees.at(1).dim() == 1);
  CHECK(h.degrees.at(0).dim() == 0);
  CHECK(index(fold_z2(row)) == -1);
}

TEST_CASE("fold_z2") {
  ChainComplex d;
  d.space.dims = {{0, 1}, {1, 2}, {2, 1}};
  const Z2Complex f = fold_z2(d);
  CHECK(f.np == 2);
  CHECK(f.nm == 2);
  const Z2Complex e = fold_z2(ChainComplex{});
  CHECK(e.np == 0);
  CHECK(e.nm == 0);
  ChainComplex odd;
  odd.space.dims[1] = 3;
  CHECK(fold_z2(odd).np == 0);
  CHECK(fold_z2(odd).nm == 3);
}

TEST_CASE("index") {
  CHECK(index(Z2Complex::make(Mat(0, 1), Mat(1, 0))) == 1);
  CHECK(index(Z2Complex::make(Mat{{1}}, Mat{{0}})) == 0);
}

TEST_CASE("mapping cone") {
  const ChainComplex d = point_complex(0);
  SUBCASE("identity gives an exact cone") {
    const Cone c = mapping_cone(d, d, scalar_map(0, 1));
    CHECK(c.complex.dim(0) == 1);
    CHECK(c.complex.dim(1) == 1);
    CHECK(c.complex.d(1) == Mat{{1}});
    for (const auto& [j, h] : homology(c.complex).degrees) CHECK(h.dim() == 0);
  }
  SUBCASE("zero map") {
    const Cone c = mapping_cone(d, d, scalar_map(0, 0));
    const HomologyData h = homology(c.complex);
    CHECK(h.degrees.at(0).dim() == 1);
    CHECK(h.degrees.at(1).dim() == 1);
  }
  SUBCASE("zero complexes") {
    const Cone c = mapping_cone(ChainComplex{}, ChainComplex{}, ChainMap{});
    CHECK(c.complex.space.total() == 0);
  }
  SUBCASE("block differential [[d2, A], [0, -d1]]") {
    ChainComplex d1;
    d1.space.dims = {{0, 1}, {1, 1}};
    d1.diffs[1] = Mat{{2}};
    ChainMap a;
    a.comps[0] = Mat{{3}};
    a.comps[1] = Mat{{3}};
    const Cone c = mapping_cone(d1, d1, a);
    // degree 1 chains: X2_1 + X1_0, degree 0 chains: X2_0
    CHECK(c.complex.d(1) == Mat{{2, 3}});
    // degree 2 chains: X1_1 -> X2_1 + X1_0
    CHECK(c.complex.d(2) == Mat{{3}, {-2}});
  }
  SUBCASE("invalid chain map") {
    ChainComplex d1;
    d1.space.dims = {{0, 1}, {1, 1}};
    d1.diffs[1] = Mat{{1}};
    ChainMap a;
    a.comps[1] = Mat{{1}};
    CHECK_THROWS_AS(mapping_cone(d1, d1, a), ValidationError);
  }
}

TEST_CASE("six-term sequence") {
  const ChainComplex d = point_complex(0);
  auto hexagon = [](const ChainComplex& d1, const ChainComplex& d2, const ChainMap& a) {
    const Z2Triangle t = fold_triangle(d1, d2, a);
    return six_term(t, homology(t.d1), homology(t.d2), homology(t.cone));
  };
  SUBCASE("identity") {
    const SixTermSequence s = hexagon(d, d, scalar_map(0, 1));
    CHECK(rank(s.maps[0]) == 1);
    CHECK(s.dims[2] == 0);
    CHECK(s.dims[3] == 0);
    CHECK(s.dims[4] == 0);
    CHECK(s.dims[5] == 0);
  }
  SUBCASE("zero map") {
    const SixTermSequence s = hexagon(d, d, scalar_map(0, 0));
    CHECK(s.maps[0].is_zero());
    CHECK(rank(s.maps[1]) == 1);  // i+ : H+(D2) -> H+(C)
    CHECK(rank(s.maps[5]) == 1);  // p- : H-(C) -> H+(D1)
    CHECK(s.maps[3].is_zero());
  }
}

TEST_CASE("stabilize") {
  const Z2Complex d = fold_z2(point_complex(0));
  const Stabilized same = stabilize(d, 0, 0);
  CHECK(same.embedding == Gaussian(1));
  CHECK(same.complex.np == d.np);
  // index 1, so one extra minus dimension
  CHECK(index(stabilize(d, 0, 1).complex) == 0);
  CHECK(index(stabilize(Z2Complex::make(Mat(0, 0), Mat(0, 0)), 1, 0).complex) == 1);
}

TEST_CASE("complex pseudo-inverse") {
  const PseudoInverseComplex z = complex_pseudo_inverse(Z2Complex::make(Mat(2, 2), Mat(2, 2)));
  CHECK(z.dp_dag.is_zero());
  CHECK(z.dm_dag.is_zero());
  const Z2Complex one = Z2Complex::make(Mat{{1}}, Mat{{0}});
  const PseudoInverseComplex p = complex_pseudo_inverse(one);
  CHECK(p.dp_dag == Mat{{1}});
  CHECK(p.dm_dag == Mat{{0}});
}

TEST_CASE("property: random complexes") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    GenProfile prof;
    prof.lo = -1;
    prof.hi = 2;
    prof.max_dim = 4;
    prof.seed = seed;
    const ChainComplex d1 = gen_random_complex(prof);
    prof.seed = seed + 1000;
    const ChainComplex d2 = gen_random_complex(prof);
    const ChainMap a = gen_chain_map(seed, d1, d2);

    // Euler characteristic from chains and from homology
    long chi_h = 0;
    for (const auto& [j, h] : homology(d1).degrees) {
      chi_h += (j % 2 == 0 ? 1 : -1) * static_cast<long>(h.dim());
    }
    CHECK(euler_characteristic(d1) == chi_h);
    CHECK(index(fold_z2(d1)) == chi_h);

    const Z2Triangle t = fold_triangle(d1, d2, a);
    CHECK(index(t.cone) == index(t.d2) - index(t.d1));

    const SixTermSequence s = six_term(t, homology(t.d1), homology(t.d2), homology(t.cone));
    for (size_t k = 0; k < 6; ++k) {
      CHECK(exact_at(s.maps[(k + 5) % 6], s.maps[k], s.dims[k]));
    }
    CHECK_FALSE(first_inexact_node(s).has_value());

    for (const Z2Complex& z : {t.d1, t.d2, t.cone}) {
      CHECK(check_pseudo_inverse_complex(z, complex_pseudo_inverse(z)).empty());
      Rng rng(seed);
      CHECK(check_pseudo_inverse_complex(z, complex_pseudo_inverse(z, homology(z), &rng)).empty());
    }
  }
}
