#include "doctest.h"

#include <algorithm>

#include "detlines/generators.hpp"
#include "detlines/holomorphic.hpp"

using namespace detlines;

namespace {

Polynomial poly(const char* s) { return Polynomial::parse(s); }

// X_{-1} = X_0 = F with d_0 = p(z).
HoloFamily line_family(const Polynomial& p) {
  HoloFamily f;
  f.space.dims = {{-1, 1}, {0, 1}};
  f.diffs[0] = PolyMat{{p}};
  return f;
}

PolyMat poly_identity(size_t n) {
  PolyMat m(n, n);
  for (size_t k = 0; k < n; ++k) m(k, k) = Polynomial(1);
  return m;
}

}  // namespace

TEST_CASE("family evaluation") {
  const HoloFamily f = line_family(poly("1 + z"));
  CHECK(eval_family(f, Gaussian(2)).d(0) == Mat{{3}});
  CHECK(eval_family(f, Gaussian::i()).d(0) == Mat{{Gaussian::parse("1+i")}});
  CHECK(f.max_degree() == 1);
  CHECK(constant_family(eval_family(f, Gaussian(0))).max_degree() == 0);

  HoloFamily bad;
  bad.space.dims = {{0, 1}, {1, 1}, {2, 1}};
  bad.diffs[1] = PolyMat{{poly("z")}};
  bad.diffs[2] = PolyMat{{poly("1")}};
  CHECK_THROWS_AS(validate_family(bad), ValidationError);
}

TEST_CASE("default grid") {
  const std::vector<Gaussian> g = default_grid(50);
  CHECK(g.size() == 50);
  for (size_t a = 0; a < g.size(); ++a) {
    CHECK_FALSE(g[a].im().get_den() == 1);
    for (size_t b = a + 1; b < g.size(); ++b) CHECK(g[a] != g[b]);
  }
  CHECK(default_grid(0).empty());
}

TEST_CASE("kernel idempotent family") {
  const PolyMat a{{Polynomial(1), poly("z")}};
  const std::vector<Gaussian> grid = default_grid(10);
  const IdempotentFamily k = kernel_idempotent_family(a, Gaussian(0), grid);
  CHECK(k.rank == 1);
  CHECK(k.excluded.empty());
  CHECK(k.k * k.k == k.k);
  for (const Gaussian& z : grid) {
    const Mat kz = eval_matrix(k.k, z);
    CHECK((eval_matrix(a, z) * kz).is_zero());
    CHECK(image_basis(kz) == kernel_basis(eval_matrix(a, z)));
  }

  SUBCASE("constant operator") {
    const Mat c{{1, 1}, {0, 0}};
    const IdempotentFamily kc = kernel_idempotent_family(to_polymat(c), Gaussian(0), grid);
    CHECK(eval_matrix(kc.k, Gaussian(5)) == Mat::identity(2) - pseudo_inverse(c) * c);
  }
  SUBCASE("rank drop at the origin") {
    const PolyMat d{{poly("z")}};
    const std::vector<Gaussian> g{Gaussian(Rational(1, 2)), Gaussian(0), Gaussian(2)};
    try {
      kernel_idempotent_family(d, Gaussian(1), g, GridPolicy::strict);
      FAIL("expected a rank degeneracy");
    } catch (const RankDegeneracyError& e) {
      CHECK(e.points() == std::vector<std::string>{"0"});
    }
    const IdempotentFamily ex = kernel_idempotent_family(d, Gaussian(1), g, GridPolicy::exclude);
    CHECK(ex.excluded == std::vector<Gaussian>{Gaussian(0)});
  }
}

TEST_CASE("local trivializations") {
  const std::vector<Gaussian> grid = default_grid(20);
  SUBCASE("exact family needs nothing") {
    const LocalTrivialization t = build_local_trivialization(line_family(poly("1 + z")), Gaussian(0), grid);
    CHECK(t.n_plus() + t.n_minus() == 0);
  }
  SUBCASE("single line in degree zero") {
    HoloFamily f;
    f.space.dims[0] = 1;
    const LocalTrivialization t = build_local_trivialization(f, Gaussian(0), grid);
    CHECK(t.n_plus() + t.n_minus() == 1);
    CHECK(inexact_points(f, t, grid).empty());
    CHECK(is_exact(perturbed_complex(f, t, Gaussian(3))));
    CHECK_FALSE(is_exact(augmented_complex(f, t, Gaussian(3))));
  }
  SUBCASE("random families") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
      GenProfile p;
      p.max_dim = 3;
      p.seed = seed;
      const PolyFamilyData fam = gen_poly_family(p, 2);
      Rng rng(seed);
      TrivializationOptions o;
      o.rng = &rng;
      o.extra = 1;
      const LocalTrivialization t = build_local_trivialization(fam.family, Gaussian(0), grid, o);
      CHECK(inexact_points(fam.family, t, grid).empty());
      CHECK(static_cast<long>(t.n_minus()) - static_cast<long>(t.n_plus()) ==
            euler_characteristic(eval_family(fam.family, Gaussian(0))));
    }
  }
}

TEST_CASE("perturbation functions") {
  const std::vector<Gaussian> grid = default_grid(40);
  const HoloFamily d = line_family(Polynomial(1));
  CHECK(perturbation_function(d, d, 0, 0, grid).f == RatFunc(1));
  const FunctionResult r = perturbation_function(d, line_family(poly("1 + z")), 0, 0, grid);
  CHECK(r.f == RatFunc(poly("1 + z")));
  CHECK(r.held_out.size() == 10);
  for (const Sample& s : r.held_out) CHECK(r.f.eval(s.point) == s.value);
  CHECK(perturbation_value(d, line_family(poly("1 + z")), 0, 0, Gaussian(4)) == Gaussian(5));
}

TEST_CASE("transition functions") {
  const std::vector<Gaussian> grid = default_grid(150);
  GenProfile p;
  p.max_dim = 3;
  p.seed = 77;
  const PolyFamilyData fam = gen_poly_family(p, 2);
  const LocalTrivialization t1 = build_local_trivialization(fam.family, Gaussian(0), grid);
  CHECK(transition_function(fam.family, t1, t1, grid).f == RatFunc(1));

  Rng r2(2), r3(3);
  TrivializationOptions o2, o3;
  o2.rng = &r2;
  o2.extra = 1;
  o3.rng = &r3;
  o2.policy = o3.policy = GridPolicy::exclude;
  const LocalTrivialization t2 = build_local_trivialization(fam.family, Gaussian(1), grid, o2);
  const LocalTrivialization t3 =
      build_local_trivialization(fam.family, Gaussian(Rational(0), Rational(1)), grid, o3);
  const RatFunc f12 = transition_function(fam.family, t1, t2, grid).f;
  const RatFunc f23 = transition_function(fam.family, t2, t3, grid).f;
  const RatFunc f13 = transition_function(fam.family, t1, t3, grid).f;
  CHECK(f13 == f23 * f12);
  CHECK(transition_function(fam.family, t2, t1, grid).f == RatFunc(1) / f12);
}

TEST_CASE("torsion sections") {
  const std::vector<Gaussian> grid = default_grid(20);
  SUBCASE("identity chain map of an exact family") {
    const HoloFamily f = line_family(poly("1 + z"));
    PolyChainMap a;
    a[-1] = poly_identity(1);
    a[0] = poly_identity(1);
    const TrivializationPair pair = cone_trivialization(f, f, a, Gaussian(0), grid);
    CHECK(pair.f.n_plus() + pair.f.n_minus() == 0);
    CHECK(pair.g.n_plus() + pair.g.n_minus() == 0);
    CHECK(torsion_section_sign(pair) == 1);
    CHECK(torsion_section_constant(f, f, a, pair, grid) == Gaussian(1));
  }
  SUBCASE("zero chain map") {
    HoloFamily f;
    f.space.dims[0] = 1;
    const PolyChainMap a;
    const TrivializationPair pair = cone_trivialization(f, f, a, Gaussian(0), grid);
    CHECK(torsion_section_constant(f, f, a, pair, grid) == Gaussian(torsion_section_sign(pair)));
  }
  SUBCASE("random families") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      GenProfile p;
      p.max_dim = 3;
      p.seed = derive_seed(seed, 1);
      const PolyFamilyData fa = gen_poly_family(p, 2);
      p.seed = derive_seed(seed, 2);
      const PolyFamilyData fb = gen_poly_family(p, 2);
      const PolyChainMap a = gen_poly_chain_map(derive_seed(seed, 3), fa, fb);
      CHECK_NOTHROW(validate_family_map(fa.family, fb.family, a));
      std::vector<Gaussian> both = default_grid(30);
      const std::vector<Gaussian> first(both.begin(), both.begin() + 15);
      const std::vector<Gaussian> second(both.begin() + 15, both.end());
      const TrivializationPair pair = cone_trivialization(fa.family, fb.family, a, Gaussian(0), both);
      const Gaussian c1 = torsion_section_constant(fa.family, fb.family, a, pair, first);
      CHECK(c1 == Gaussian(torsion_section_sign(pair)));
      CHECK(torsion_section_constant(fa.family, fb.family, a, pair, second) == c1);
    }
  }
}
