#include "doctest.h"

#include "detlines/generators.hpp"
#include "detlines/perturbation.hpp"

using namespace detlines;

namespace {

Gaussian pscalar(const Z2Complex& d, const Z2Complex& delta) {
  return complex_perturbation_scalar(d, delta).scalar;
}

Mat random_rank(Rng& rng, size_t r, size_t c, size_t k) {
  return rng.matrix(r, k, true) * rng.matrix(k, c, true);
}

}  // namespace

TEST_CASE("perturbation triple") {
  SUBCASE("empty operators") {
    const Mat e(0, 0);
    const PerturbationTriple t = build_perturbation_triple(e, e, e, e);
    CHECK(check_perturbation_triple(t, e, e, e).empty());
    CHECK(perturbation_context(t, e, e, e, e).det_sigma == Gaussian(1));
  }
  SUBCASE("A = 0, B = 1 on a line") {
    const Mat a{{0}}, b{{1}};
    const PerturbationTriple t = build_perturbation_triple(a, a, b, b);
    CHECK(check_perturbation_triple(t, a, b, b).empty());
    CHECK(t.ker_a.cols() == 1);
    CHECK(t.ker_bdag.cols() == 0);
    CHECK(t.l_images.cols() == 1);
    CHECK_FALSE(t.l_images.is_zero());
  }
  SUBCASE("both branches at index zero") {
    const Mat a{{1, 0}, {0, 0}}, b{{0, 0}, {0, 1}};
    for (Branch br : {Branch::nonnegative, Branch::nonpositive}) {
      TripleOptions o;
      o.branch = br;
      const PerturbationTriple t =
          build_perturbation_triple(a, pseudo_inverse(a), b, pseudo_inverse(b), o);
      CHECK(t.nonnegative == (br == Branch::nonnegative));
      CHECK(check_perturbation_triple(t, a, b, pseudo_inverse(b)).empty());
    }
  }
}

TEST_CASE("property: random triples satisfy the composite conditions") {
  Rng rng(307);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t r = rng.uniform(0, 4), c = rng.uniform(0, 4);
    const size_t mn = std::min(r, c);
    const Mat a = random_rank(rng, r, c, rng.uniform(0, static_cast<long>(mn)));
    const Mat b = random_rank(rng, r, c, rng.uniform(0, static_cast<long>(mn)));
    Rng choice(static_cast<uint64_t>(trial) + 1);
    TripleOptions o;
    o.rng = &choice;
    const Mat bd = pseudo_inverse(b);
    const PerturbationTriple t = build_perturbation_triple(a, pseudo_inverse(a), b, bd, o);
    CHECK(check_perturbation_triple(t, a, b, bd).empty());
    CHECK_FALSE(perturbation_context(t, a, pseudo_inverse(a), b, bd).det_sigma.is_zero());
  }
}

TEST_CASE("operator perturbation scalar") {
  const Mat a{{2, 1}, {0, 1}};
  CHECK(operator_perturbation_scalar(a, a).scalar == Gaussian(1));
  const Mat b{{1, 0}, {3, 6}};
  CHECK(operator_perturbation_scalar(a, b).scalar == det(b) / det(a));
  CHECK(operator_perturbation_scalar(a, b).scalar == Gaussian(3));
  CHECK(operator_perturbation_scalar(Mat{{0}}, Mat{{1}}).scalar == Gaussian(1));
  CHECK(operator_perturbation_scalar(Mat(0, 0), Mat(0, 0)).scalar == Gaussian(1));
}

TEST_CASE("complex perturbation scalar") {
  const Z2Complex d = Z2Complex::make(Mat(2, 2), Mat{{2, 1}, {0, 3}});
  const Z2Complex delta = Z2Complex::make(Mat(2, 2), Mat{{1, 0}, {1, 1}});
  CHECK(pscalar(d, d) == Gaussian(1));
  CHECK(pscalar(d, delta) == Gaussian(6));
  CHECK(pscalar(delta, d) == Gaussian(Rational(1, 6)));
  CHECK(pscalar(Z2Complex::make(Mat{{0}}, Mat{{0}}), Z2Complex::make(Mat{{1}}, Mat{{0}})) ==
        Gaussian(1));
  CHECK_THROWS(pscalar(Z2Complex::make(Mat(1, 1), Mat(1, 1)), Z2Complex::make(Mat(1, 2), Mat(2, 1))));
}

TEST_CASE("property: symmetry and transitivity") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    const size_t np = rng.uniform(0, 4), nm = rng.uniform(0, 4);
    const Z2Complex d1 = gen_random_z2(derive_seed(seed, 1), np, nm);
    const Z2Complex d2 = gen_random_z2(derive_seed(seed, 2), np, nm);
    const Z2Complex d3 = gen_random_z2(derive_seed(seed, 3), np, nm);
    CHECK(pscalar(d2, d1) * pscalar(d1, d2) == Gaussian(1));
    CHECK(pscalar(d1, d3) == pscalar(d2, d3) * pscalar(d1, d2));
  }
}

TEST_CASE("property: independence of pseudo-inverse and triple choices") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const size_t np = rng.uniform(0, 4), nm = rng.uniform(0, 4);
    const Z2Complex d1 = gen_random_z2(derive_seed(seed, 1), np, nm);
    const Z2Complex d2 = gen_random_z2(derive_seed(seed, 2), np, nm);
    const Gaussian reference = pscalar(d1, d2);
    const Z2Homology h1 = homology(d1), h2 = homology(d2);
    for (uint64_t k = 0; k < 3; ++k) {
      Rng choice(derive_seed(seed, 50 + k));
      ComplexPerturbationOptions o;
      o.rng = &choice;
      if (index(d1) == 0) o.branch = k % 2 ? Branch::nonpositive : Branch::nonnegative;
      CHECK(complex_perturbation_scalar(d1, d2, h1, h2, o).scalar == reference);
    }
  }
}

TEST_CASE("property: explicitly solvable case") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    Rng rng(seed);
    const size_t np = rng.uniform(0, 3), nm = rng.uniform(0, 3);
    const Z2Complex d = gen_random_z2(derive_seed(seed, 1), np, nm);
    for (bool full : {false, true}) {
      Rng inst(derive_seed(seed, full ? 3 : 2));
      SpecialOptions o;
      o.full = full;
      const SpecialInstance si = make_special_instance(d, inst, o);
      CHECK_NOTHROW(validate_special_instance(si));
      const Gaussian general = pscalar(si.stabilized(), si.perturbed());
      CHECK(special_perturbation_scalar(si).scalar == general);
      if (full) CHECK(general * special_source_wedge(si) == Gaussian(1));
    }
  }
}

TEST_CASE("special instance validation rejects broken data") {
  Rng rng(5);
  const Z2Complex d = gen_random_z2(9, 2, 1);
  SpecialInstance si = make_special_instance(d, rng);
  CHECK_NOTHROW(validate_special_instance(si));
  // stabilization sizes no longer match the index
  si.n_minus += 1;
  CHECK_THROWS_AS(validate_special_instance(si), HypothesisError);
}

TEST_CASE("square-zero perturbations of the identity") {
  Rng rng(401);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t n = rng.uniform(0, 6);
    const Mat a = random_square_zero(rng, n), b = random_square_zero(rng, n);
    CHECK((a * a).is_zero());
    CHECK((b * b).is_zero());
    const Mat one = Mat::identity(n);
    CHECK(det_class_det((one + a) * (one + b)) == Gaussian(1));
  }
}

TEST_CASE("determinant equality") {
  SUBCASE("V = W = F") {
    DetEquInstance d{Mat{{1}}, Mat{{1}}, Mat{{2}}, Mat{{0}}, Mat(1, 0), Mat{{1}}};
    CHECK_NOTHROW(validate_detequ_instance(d));
    const DetEquSides s = detequ_sides(d);
    CHECK(s.det_sigma_tilde == Gaussian(2));
    CHECK(s.det_omega_sigma == Gaussian(2));
  }
  SUBCASE("V = 0, W = F") {
    DetEquInstance d{Mat(1, 0), Mat(0, 1), Mat(0, 0), Mat{{5}}, Mat{{1}}, Mat(1, 0)};
    CHECK_NOTHROW(validate_detequ_instance(d));
    CHECK(detequ_sides(d).det_sigma_tilde == Gaussian(5));
    CHECK(detequ_sides(d).det_omega_sigma == Gaussian(5));
  }
  SUBCASE("singular omega") {
    DetEquInstance d{Mat{{1}}, Mat{{1}}, Mat{{0}}, Mat{{0}}, Mat(1, 0), Mat{{1}}};
    CHECK_THROWS_AS(validate_detequ_instance(d), HypothesisError);
  }
  SUBCASE("random instances") {
    Rng rng(409);
    for (int trial = 0; trial < 50; ++trial) {
      const size_t w = rng.uniform(0, 5), v = rng.uniform(0, static_cast<long>(w));
      const DetEquInstance d = make_detequ_instance(rng, v, w);
      CHECK_NOTHROW(validate_detequ_instance(d));
      const DetEquSides s = detequ_sides(d);
      CHECK(s.det_sigma_tilde == s.det_omega_sigma);
    }
  }
}
