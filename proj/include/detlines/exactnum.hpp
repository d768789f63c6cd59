#pragma once

#include <gmpxx.h>

#include <climits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "detlines/errors.hpp"

namespace detlines {

using Rational = mpq_class;

// Element of Q(i).
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Gaussian(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  // mpq_class(n, d) is not reduced on construction, so normalize here.
  Gaussian(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Gaussian conj() const { return {re_, -im_}; }
  Gaussian inv() const;

  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o) { return *this *= o.inv(); }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  Gaussian operator-() const { return {-re_, -im_}; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  std::string str() const;
  static Gaussian parse(std::string_view text);

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Gaussian& g);

// Dense univariate polynomial over Q(i), coefficients in ascending order.
class Polynomial {
 public:
  static constexpr int kDegreeNegInf = INT_MIN;

  Polynomial() = default;
  Polynomial(Gaussian c);  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Gaussian(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<Gaussian> coeffs);

  static Polynomial monomial(Gaussian c, int power);
  static Polynomial z() { return monomial(Gaussian(1), 1); }

  int degree() const {
    return c_.empty() ? kDegreeNegInf : static_cast<int>(c_.size()) - 1;
  }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Gaussian>& coeffs() const { return c_; }
  Gaussian coeff(int k) const;
  const Gaussian& leading() const;

  Gaussian eval(const Gaussian& z) const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;
  Polynomial scaled(const Gaussian& s) const;

  // Euclidean division; divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  // Monic gcd; gcd(0, 0) = 0.
  static Polynomial gcd(Polynomial a, Polynomial b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const;
  static Polynomial parse(std::string_view text);

 private:
  void trim();
  std::vector<Gaussian> c_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

// Reduced quotient of polynomials with monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Gaussian c) : num_(std::move(c)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc inv() const;
  // Throws DivisionByZero at a pole.
  Gaussian eval(const Gaussian& z) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o) { return *this *= o.inv(); }
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const { return RatFunc(-num_, den_, true); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string str() const;
  static RatFunc parse(std::string_view text);

 private:
  RatFunc(Polynomial num, Polynomial den, bool /*already_reduced*/)
      : num_(std::move(num)), den_(std::move(den)) {}
  Polynomial num_;
  Polynomial den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& r);

// Field helpers used by the generic linear algebra.
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Gaussian& x) { return x.is_zero(); }
inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline bool is_zero(const Polynomial& x) { return x.is_zero(); }
inline Rational inverse(const Rational& x) {
  if (sgn(x) == 0) throw DivisionByZero();
  return Rational(1) / x;
}
inline Gaussian inverse(const Gaussian& x) { return x.inv(); }
inline RatFunc inverse(const RatFunc& x) { return x.inv(); }
inline std::string to_text(const Rational& x) { return x.get_str(); }
inline std::string to_text(const Gaussian& x) { return x.str(); }
inline std::string to_text(const RatFunc& x) { return x.str(); }
inline std::string to_text(const Polynomial& x) { return x.str(); }

enum class ScalarKind { rational, gaussian, ratfunc };

std::string kind_name(ScalarKind k);
ScalarKind parse_kind(std::string_view name);

// Tagged element of one of the three fields Q, Q(i), Q(i)(z).
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(Rational r) : v_(std::move(r)) { std::get<Rational>(v_).canonicalize(); }  // NOLINT(google-explicit-constructor)
  Scalar(Gaussian g) : v_(std::move(g)) {}  // NOLINT(google-explicit-constructor)
  Scalar(RatFunc f) : v_(std::move(f)) {}  // NOLINT(google-explicit-constructor)

  ScalarKind kind() const { return static_cast<ScalarKind>(v_.index()); }
  const Rational& as_rational() const;
  const Gaussian& as_gaussian() const;
  const RatFunc& as_ratfunc() const;
  // Widening to the largest field of the tower.
  Gaussian to_gaussian() const;

  bool is_zero() const;

  static Scalar add(const Scalar& a, const Scalar& b);
  static Scalar mul(const Scalar& a, const Scalar& b);
  static Scalar neg(const Scalar& a);
  static Scalar inv(const Scalar& a);
  static bool eq(const Scalar& a, const Scalar& b);

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add(a, b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return mul(a, b); }
  Scalar operator-() const { return neg(*this); }
  friend bool operator==(const Scalar& a, const Scalar& b) { return eq(a, b); }

  std::string str() const;
  static Scalar parse(std::string_view text, ScalarKind kind);

 private:
  std::variant<Rational, Gaussian, RatFunc> v_;
};

struct Sample {
  Gaussian point;
  Gaussian value;
};

// Finds the reduced P/Q with deg P <= num_bound, deg Q <= den_bound agreeing
// with every sample. Throws ReconstructionError when none exists.
RatFunc rational_reconstruct(const std::vector<Sample>& samples, int num_bound, int den_bound);

}  // namespace detlines
