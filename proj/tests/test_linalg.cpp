#include "doctest.h"

#include "detlines/linalg.hpp"
#include "detlines/random.hpp"

using namespace detlines;

namespace {

Mat random_rank(Rng& rng, size_t r, size_t c, size_t k) {
  return rng.matrix(r, k, true) * rng.matrix(k, c, true);
}

bool idempotent(const Mat& p) { return p * p == p; }

}  // namespace

TEST_CASE("rref") {
  const auto id = rref(Mat::identity(3));
  CHECK(id.echelon == Mat::identity(3));
  CHECK(id.pivots == std::vector<size_t>{0, 1, 2});

  const auto z = rref(Mat(2, 3));
  CHECK(z.echelon.is_zero());
  CHECK(z.pivots.empty());

  const Mat m{{1, 2}, {2, 4}};
  const auto r = rref(m);
  CHECK(r.pivots == std::vector<size_t>{0});
  CHECK(r.transform * m == r.echelon);
}

TEST_CASE("kernel and image") {
  const Mat row{{1, 0}};
  CHECK(kernel_basis(row) == Subspace<Gaussian>::span(Mat{{0}, {1}}));
  CHECK(image_basis(row) == Subspace<Gaussian>::full(1));

  const Mat inv{{2, 1}, {1, 1}};
  CHECK(kernel_basis(inv).dim() == 0);
  CHECK(image_basis(inv) == Subspace<Gaussian>::full(2));

  CHECK(kernel_basis(Mat(2, 3)) == Subspace<Gaussian>::full(3));
  CHECK(image_basis(Mat(2, 3)).dim() == 0);
}

TEST_CASE("complement") {
  const auto e1 = Subspace<Gaussian>::span(Mat{{1}, {0}});
  const auto e2 = Subspace<Gaussian>::span(Mat{{0}, {1}});
  CHECK(complement(e1) == e2);

  const auto diag = Subspace<Gaussian>::span(Mat{{1}, {1}});
  CHECK(complement(diag) == e2);
  CHECK(subspace_sum(diag, complement(diag)) == Subspace<Gaussian>::full(2));

  CHECK(complement(Subspace<Gaussian>::full(3)).dim() == 0);
  CHECK_THROWS_AS(complement(Subspace<Gaussian>::full(2), e1), ContainmentError);
}

TEST_CASE("pseudo-inverse") {
  const Mat inv{{2, 1}, {1, 1}};
  CHECK(pseudo_inverse(inv) == inverse(inv));
  CHECK(pseudo_inverse(Mat(2, 3)) == Mat(3, 2));
  const Mat p{{1, 0}, {0, 0}};
  const Mat pd = pseudo_inverse(p);
  CHECK(pd == p);
  CHECK(p * pd * p == p);
  CHECK(idempotent(p * pd));
  CHECK(idempotent(Mat::identity(2) - pd * p));
}

TEST_CASE("determinant") {
  CHECK(det(Mat::identity(4)) == Gaussian(1));
  CHECK(det(Mat{{0, 1}, {1, 0}}) == Gaussian(-1));
  CHECK(det(Mat{{2, 0}, {0, 3}}) == Gaussian(6));
  CHECK(det(Mat(0, 0)) == Gaussian(1));
  CHECK_THROWS_AS(det(Mat(2, 3)), DimensionError);
}

TEST_CASE("determinant over rational functions") {
  // [[z, 1], [1, z]] has determinant z^2 - 1
  const RatFunc z(Polynomial::z());
  const Matrix<RatFunc> m{{z, RatFunc(1)}, {RatFunc(1), z}};
  CHECK(det(m) == RatFunc(Polynomial::parse("z^2 - 1")));
}

TEST_CASE("determinant-class determinant") {
  CHECK(det_class_det(Mat::identity(3)) == Gaussian(1));
  const Mat t{{1, 1}, {0, 1}};
  CHECK(det_class_det(t) == det(t));
  CHECK(det_class_det(t) == Gaussian(1));
  for (const Gaussian c : {Gaussian(0), Gaussian(5), Gaussian(Rational(1), Rational(-3))}) {
    const Mat a{{0, 1}, {0, 0}};
    const Mat b{{0, c}, {0, 0}};
    const Mat one = Mat::identity(2);
    CHECK(det_class_det((one + a) * (one + b)) == Gaussian(1));
  }
  CHECK_THROWS_AS(det_class_det(Mat{{1, 1}, {1, 1}}), NotInvertible);
}

TEST_CASE("property: pseudo-inverse identities") {
  Rng rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t r = rng.uniform(0, 5), c = rng.uniform(0, 5);
    const size_t k = rng.uniform(0, static_cast<long>(std::min(r, c)));
    const Mat m = random_rank(rng, r, c, k);
    const Mat md = pseudo_inverse(m);
    CHECK(m * md * m == m);
    CHECK(md * m * md == md);
    CHECK(image_basis(Mat(m * md)) == image_basis(m));
    CHECK(image_basis(Mat(Mat::identity(c) - md * m)) == kernel_basis(m));
    CHECK(idempotent(m * md));
    CHECK(idempotent(Mat::identity(c) - md * m));
  }
}

TEST_CASE("property: det_class_det agrees with det on every invariant extension") {
  Rng rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const size_t n = rng.uniform(1, 6);
    const size_t k = rng.uniform(0, static_cast<long>(n));
    Mat t = Mat::identity(n) + random_rank(rng, n, n, k);
    if (rank(t) != n) continue;
    const Gaussian d = det(t);
    CHECK(det_class_det(t) == d);
    // E' = Im(1 - T) plus the T-orbit of a random vector
    Mat e = image_basis(Mat(Mat::identity(n) - t)).basis();
    Mat v = rng.matrix(n, 1, true);
    for (size_t s = 0; s < n; ++s) {
      e = hcat(e, v);
      v = t * v;
    }
    const Mat ext = Subspace<Gaussian>::span(e).basis();
    CHECK(det_on_invariant(t, ext) == d);
  }
}

TEST_CASE("property: complement is a deterministic direct summand") {
  Rng rng(107);
  for (int trial = 0; trial < 40; ++trial) {
    const size_t n = rng.uniform(0, 6), k = rng.uniform(0, static_cast<long>(n));
    const auto s = Subspace<Gaussian>::span(rng.matrix(n, k, true));
    const auto c = complement(s);
    CHECK(s.dim() + c.dim() == n);
    CHECK(subspace_sum(s, c) == Subspace<Gaussian>::full(n));
    CHECK(complement(Subspace<Gaussian>::span(s.basis())).basis() == c.basis());
  }
}
