#include "doctest.h"

#include "detlines/generators.hpp"
#include "detlines/torsion.hpp"

using namespace detlines;

namespace {

// Hexagon with V+1 = V+2 = F (or the minus row) joined by c, all else zero.
SixTermSequence one_row(bool plus, int c) {
  std::array<Mat, 6> m{Mat(0, 0), Mat(0, 0), Mat(0, 0), Mat(0, 0), Mat(0, 0), Mat(0, 0)};
  const size_t k = plus ? 0 : 3;
  m[k] = Mat{{c}};
  m[k + 1] = Mat(0, 1);
  m[(k + 5) % 6] = Mat(1, 0);
  return SixTermSequence::make(m);
}

ChainComplex point(int degree) {
  ChainComplex d;
  d.space.dims[degree] = 1;
  return d;
}

ChainMap scalar_map(int degree, int c) {
  ChainMap a;
  a.comps[degree] = Mat{{c}};
  return a;
}

}  // namespace

TEST_CASE("torsion of small hexagons") {
  const std::array<Mat, 6> zero{Mat(0, 0), Mat(0, 0), Mat(0, 0), Mat(0, 0), Mat(0, 0), Mat(0, 0)};
  CHECK(torsion_scalar(SixTermSequence::make(zero)).scalar == Gaussian(1));
  CHECK(torsion_scalar(one_row(true, 1)).scalar == Gaussian(-1));
  CHECK(torsion_scalar(one_row(false, 1)).scalar == Gaussian(-1));
  CHECK(torsion_scalar(one_row(true, 2)).scalar == Gaussian(Rational(-1, 2)));
  CHECK_THROWS_AS(torsion_scalar(one_row(true, 0)), ValidationError);
}

TEST_CASE("sign exponent") {
  CHECK(torsion_sign_exponent({0, 0, 0, 0, 0, 0}) == 0);
  CHECK(torsion_sign_exponent({1, 0, 0, 0, 0, 0}) % 2 == 1);
  CHECK(torsion_sign_exponent({0, 0, 1, 0, 0, 0}) % 2 == 1);
  CHECK(stabilization_sign(0, 0, 0, 0) == 1);
  CHECK(stabilization_sign(0, 1, 0, 0) == -1);
  CHECK(stabilization_sign(1, 0, 1, 0) == -1);
  CHECK(stabilization_sign(1, 1, 1, 1) == -1);
}

TEST_CASE("triangle torsion") {
  const LineIso id = triangle_torsion(point(0), point(0), scalar_map(0, 1));
  CHECK(id.scalar == Gaussian(-1));
  CHECK(id.source == "|D2|");
  CHECK(triangle_torsion(point(1), point(1), scalar_map(1, 1)).scalar == Gaussian(-1));
  CHECK(triangle_torsion(point(0), point(0), scalar_map(0, 2)).scalar == Gaussian(Rational(-1, 2)));
  CHECK(triangle_torsion(ChainComplex{}, ChainComplex{}, ChainMap{}).scalar == Gaussian(1));
}

TEST_CASE("property: torsion is independent of the chosen complements") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    GenProfile p;
    p.max_dim = 3;
    p.seed = derive_seed(seed, 1);
    const ChainComplex d1 = gen_random_complex(p);
    p.seed = derive_seed(seed, 2);
    const ChainComplex d2 = gen_random_complex(p);
    const ChainMap a = gen_chain_map(derive_seed(seed, 3), d1, d2);
    const TriangleData td = triangle_data(d1, d2, a);
    CHECK_FALSE(first_inexact_node(td.hexagon).has_value());
    const Gaussian canonical = torsion_scalar(td.hexagon).scalar;
    CHECK_FALSE(canonical.is_zero());
    for (uint64_t k = 0; k < 3; ++k) {
      Rng rng(derive_seed(seed, 10 + k));
      CHECK(torsion_scalar(td.hexagon, random_choices(td.hexagon, rng)).scalar == canonical);
    }
  }
}

TEST_CASE("property: stabilization to index zero changes torsion by the expected sign") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    GenProfile p;
    p.max_dim = 3;
    p.seed = derive_seed(seed, 4);
    const ChainComplex d1 = gen_random_complex(p);
    p.seed = derive_seed(seed, 5);
    const ChainComplex d2 = gen_random_complex(p);
    const ChainMap a = gen_chain_map(derive_seed(seed, 6), d1, d2);
    const TriangleData td = triangle_data(d1, d2, a);
    Rng rng(seed);
    auto sizes = [&](long ind) {
      const long plus = rng.uniform(std::max<long>(0, -ind), std::max<long>(0, -ind) + 2);
      return std::pair<size_t, size_t>(plus, plus + ind);
    };
    const auto [np, nm] = sizes(index(td.triangle.d1));
    const auto [mp, mm] = sizes(index(td.triangle.d2));
    const SixTermSequence big = stabilize_hexagon(td.hexagon, np, nm, mp, mm);
    CHECK_FALSE(first_inexact_node(big).has_value());
    CHECK(torsion_scalar(big).scalar ==
          Gaussian(stabilization_sign(np, nm, mp, mm)) * torsion_scalar(td.hexagon).scalar);
  }
}
