#include "doctest.h"

#include "detlines/exactnum.hpp"
#include "detlines/random.hpp"

using namespace detlines;

namespace {
Gaussian g(const char* s) { return Gaussian::parse(s); }
Polynomial poly(const char* s) { return Polynomial::parse(s); }
}  // namespace

TEST_CASE("rational and gaussian field operations") {
  CHECK(Scalar::parse("1/2", ScalarKind::rational) + Scalar::parse("1/3", ScalarKind::rational) ==
        Scalar::parse("5/6", ScalarKind::rational));
  CHECK(Gaussian::i() * Gaussian::i() == Gaussian(-1));
  CHECK(g("2+i").inv() == g("2/5-1/5*i"));
  CHECK(g("2+i").inv() == g("2-i") / Gaussian(5));
}

TEST_CASE("scalar errors are explicit") {
  CHECK_THROWS_AS(Gaussian(0).inv(), DivisionByZero);
  CHECK_THROWS_AS(Scalar::inv(Scalar(Rational(0))), DivisionByZero);
  CHECK_THROWS_AS(Scalar(Rational(1)) + Scalar(Gaussian(1)), VariantMismatch);
  // a zero denominator in the text is malformed input
  CHECK_THROWS_AS(Gaussian::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Gaussian::parse("1+"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("i", ScalarKind::rational), ParseError);
}

TEST_CASE("canonical forms") {
  CHECK(Scalar::parse("5/10", ScalarKind::rational).str() == "1/2");
  CHECK(Scalar::parse("-4/8", ScalarKind::rational).str() == "-1/2");
  CHECK(Scalar(Rational(6, 4)).str() == "3/2");
  CHECK(g("1/2+3/4*i").str() == "1/2+3/4*i");
  CHECK(g("-i").str() == "-i");
  CHECK(poly("1/2 - 3*z + z^2").str() == "1/2 - 3*z + z^2");
  CHECK(poly("z - z").is_zero());
  // monic denominator, common factors cancelled
  const RatFunc f = RatFunc::parse("(z^2 - 1)/(2*z - 2)");
  CHECK(f.den() == Polynomial(1));
  CHECK(f.num() == poly("1/2 + 1/2*z"));
  CHECK(RatFunc::parse(f.str()) == f);
}

TEST_CASE("polynomial evaluation") {
  CHECK(poly("z^2 + 1").eval(Gaussian::i()) == Gaussian(0));
  CHECK(poly("z^2 + 1").eval(Gaussian(2)) == Gaussian(5));
  CHECK(Polynomial().eval(g("3-7*i")) == Gaussian(0));
  CHECK(Polynomial().degree() == Polynomial::kDegreeNegInf);
}

TEST_CASE("rational reconstruction") {
  SUBCASE("1 + z from four points with bounds (1, 0)") {
    std::vector<Sample> s;
    for (int k = 0; k < 4; ++k) s.push_back({Gaussian(k), Gaussian(1 + k)});
    const RatFunc f = rational_reconstruct(s, 1, 0);
    CHECK(f.num() == poly("1 + z"));
    CHECK(f.den() == Polynomial(1));
  }
  SUBCASE("1/(1 - z) from five points, checked at two held-out points") {
    const RatFunc target = RatFunc::parse("1/(1 - z)");
    std::vector<Sample> s;
    for (int k = 2; k < 7; ++k) s.push_back({Gaussian(k), target.eval(Gaussian(k))});
    const RatFunc f = rational_reconstruct(s, 0, 1);
    CHECK(f == target);
    for (const Gaussian z : {g("1/2"), g("3+i")}) {
      CHECK(f.eval(z) == Gaussian(1) / (Gaussian(1) - z));
    }
  }
  SUBCASE("inconsistent samples") {
    std::vector<Sample> s = {{Gaussian(0), Gaussian(1)}, {Gaussian(1), Gaussian(2)},
                             {Gaussian(2), Gaussian(3)}, {Gaussian(3), Gaussian(7)}};
    CHECK_THROWS_AS(rational_reconstruct(s, 1, 0), ReconstructionError);
  }
  SUBCASE("too few samples") {
    std::vector<Sample> s = {{Gaussian(0), Gaussian(1)}, {Gaussian(1), Gaussian(2)}};
    CHECK_THROWS_AS(rational_reconstruct(s, 1, 0), ReconstructionError);
  }
}

TEST_CASE("property: a * inv(a) = 1") {
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    const Gaussian a = Gaussian(Rational(rng.uniform(-9, 9), rng.uniform(1, 9)),
                                Rational(rng.uniform(-9, 9), rng.uniform(1, 9)));
    if (a.is_zero()) continue;
    CHECK(a * a.inv() == Gaussian(1));
  }
}

TEST_CASE("property: parse and print round-trip") {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const Gaussian a = Gaussian(Rational(rng.uniform(-20, 20), rng.uniform(1, 12)),
                                Rational(rng.uniform(-20, 20), rng.uniform(1, 12)));
    CHECK(Gaussian::parse(a.str()) == a);
    CHECK(Gaussian::parse(a.str()).str() == a.str());
  }
}

TEST_CASE("property: reconstruction is idempotent as a witness") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Gaussian> nc, dc;
    for (int k = 0; k < 3; ++k) nc.push_back(rng.small(true, 3));
    dc.push_back(rng.nonzero(true, 3));
    dc.push_back(rng.small(true, 3));
    const RatFunc target{Polynomial(nc), Polynomial(dc)};
    auto sample = [&](const RatFunc& f) {
      std::vector<Sample> s;
      for (int k = 0; s.size() < 7; ++k) {
        const Gaussian z(Rational(k, 3), Rational(1, 7));
        if (f.den().eval(z).is_zero()) continue;
        s.push_back({z, f.eval(z)});
      }
      return s;
    };
    const RatFunc once = rational_reconstruct(sample(target), 2, 2);
    const RatFunc twice = rational_reconstruct(sample(once), 2, 2);
    CHECK(once == target);
    CHECK(twice.str() == once.str());
  }
}
