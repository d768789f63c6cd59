#include "detlines/exactnum.hpp"

#include <cctype>
#include <sstream>

namespace detlines {

// ---------------------------------------------------------------- Gaussian

Gaussian Gaussian::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (is_real()) return Gaussian(Rational(1) / re_);
  Rational n = re_ * re_ + im_ * im_;
  return {Rational(re_ / n), Rational(-im_ / n)};
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  if (!o.is_real()) im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  if (!o.is_real()) im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

namespace {

std::string abs_str(const Rational& q) { return Rational(abs(q)).get_str(); }

std::string imag_term(const Rational& b) {
  // b != 0; returns "i" or "3/4*i" without sign.
  if (abs(b) == 1) return "i";
  return abs_str(b) + "*i";
}

}  // namespace

std::string Gaussian::str() const {
  if (is_real()) return re_.get_str();
  std::string s;
  if (sgn(re_) != 0) {
    s = re_.get_str();
    s += sgn(im_) < 0 ? "-" : "+";
  } else if (sgn(im_) < 0) {
    s = "-";
  }
  return s + imag_term(im_);
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << g.str(); }

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(Gaussian c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

Polynomial::Polynomial(std::vector<Gaussian> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(Gaussian c, int power) {
  if (c.is_zero()) return {};
  std::vector<Gaussian> v(static_cast<size_t>(power) + 1);
  v.back() = std::move(c);
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Gaussian Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return {};
  return c_[static_cast<size_t>(k)];
}

const Gaussian& Polynomial::leading() const {
  if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
  return c_.back();
}

Gaussian Polynomial::eval(const Gaussian& z) const {
  Gaussian acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return {};
  return scaled(leading().inv());
}

Polynomial Polynomial::scaled(const Gaussian& s) const {
  if (s.is_zero()) return {};
  Polynomial r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Gaussian> r(c_.size() + o.c_.size() - 1);
  for (size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (size_t b = 0; b < o.c_.size(); ++b) r[a + b] += c_[a] * o.c_[b];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  Polynomial rem = a;
  if (a.degree() < b.degree()) return {Polynomial(), rem};
  const Gaussian lead_inv = b.leading().inv();
  const size_t db = b.c_.size() - 1;
  std::vector<Gaussian> q(a.c_.size() - db);
  for (size_t k = rem.c_.size(); k-- > db;) {
    if (rem.c_[k].is_zero()) continue;
    Gaussian f = rem.c_[k] * lead_inv;
    const size_t shift = k - db;
    for (size_t j = 0; j <= db; ++j) rem.c_[shift + j] -= f * b.c_[j];
    q[shift] = std::move(f);
  }
  rem.trim();
  return {Polynomial(std::move(q)), rem};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

namespace {

std::string z_power(int k) {
  if (k == 1) return "z";
  return "z^" + std::to_string(k);
}

}  // namespace

std::string Polynomial::str() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    const Gaussian& c = c_[k];
    if (c.is_zero()) continue;
    const int pw = static_cast<int>(k);
    bool negative = false;
    std::string body;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      if (pw == 0) {
        body = abs_str(c.re());
      } else if (abs(c.re()) == 1) {
        body = z_power(pw);
      } else {
        body = abs_str(c.re()) + "*" + z_power(pw);
      }
    } else if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
      body = imag_term(c.im());
      if (pw > 0) body += "*" + z_power(pw);
    } else {
      body = "(" + c.str() + ")";
      if (pw > 0) body += "*" + z_power(pw);
    }
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

// ----------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den.degree() > 0) {
    Polynomial g = Polynomial::gcd(num, den);
    if (g.degree() > 0) {
      num = Polynomial::divmod(num, g).first;
      den = Polynomial::divmod(den, g).first;
    }
  }
  Gaussian lc_inv = den.leading().inv();
  num_ = num.scaled(lc_inv);
  den_ = den.scaled(lc_inv);
}

RatFunc RatFunc::inv() const {
  if (num_.is_zero()) throw DivisionByZero();
  Gaussian lc_inv = num_.leading().inv();
  return RatFunc(den_.scaled(lc_inv), num_.scaled(lc_inv), true);
}

Gaussian RatFunc::eval(const Gaussian& z) const {
  Gaussian d = den_.eval(z);
  if (d.is_zero()) throw DivisionByZero();
  return num_.eval(z) / d;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (is_polynomial() && o.is_polynomial()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    *this = RatFunc(num_ + o.num_, den_);
    return *this;
  }
  *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_polynomial() && o.is_polynomial()) {
    num_ *= o.num_;
    return *this;
  }
  *this = RatFunc(num_ * o.num_, den_ * o.den_);
  return *this;
}

std::string RatFunc::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.str(); }

// ------------------------------------------------------------------ parser

namespace {

// expr  := ['+'|'-'] term {('+'|'-') term}
// term  := power {('*'|'/') power}
// power := atom ['^' integer]
// atom  := integer | 'i' | 'z' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse_all() {
    RatFunc r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    std::ostringstream os;
    os << "cannot parse \"" << s_ << "\" at position " << pos_ << ": " << why;
    throw ParseError(os.str());
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    bool neg = false;
    if (accept('-')) {
      neg = true;
    } else {
      accept('+');
    }
    RatFunc acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = power();
    for (;;) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        RatFunc d = power();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!accept('^')) return base;
    skip();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    RatFunc r(1);
    for (int k = 0; k < e; ++k) r *= base;
    return r;
  }

  RatFunc atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class n(std::string(s_.substr(start, pos_ - start)), 10);
      return RatFunc(Gaussian(Rational(n)));
    }
    if (c == 'i') {
      ++pos_;
      return RatFunc(Gaussian::i());
    }
    if (c == 'z') {
      ++pos_;
      return RatFunc(Polynomial::z());
    }
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    fail("unexpected character");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return Parser(text).parse_all(); }

Polynomial Polynomial::parse(std::string_view text) {
  RatFunc r = RatFunc::parse(text);
  if (!r.is_polynomial()) throw ParseError("not a polynomial: " + std::string(text));
  return r.num();
}

Gaussian Gaussian::parse(std::string_view text) {
  Polynomial p = Polynomial::parse(text);
  if (p.degree() > 0) throw ParseError("not a constant: " + std::string(text));
  return p.coeff(0);
}

// ------------------------------------------------------------------ Scalar

std::string kind_name(ScalarKind k) {
  switch (k) {
    case ScalarKind::rational:
      return "rational";
    case ScalarKind::gaussian:
      return "gaussian";
    case ScalarKind::ratfunc:
      return "ratfunc";
  }
  return "?";
}

ScalarKind parse_kind(std::string_view name) {
  if (name == "rational") return ScalarKind::rational;
  if (name == "gaussian") return ScalarKind::gaussian;
  if (name == "ratfunc") return ScalarKind::ratfunc;
  throw ParseError("unknown field \"" + std::string(name) + "\"");
}

namespace {

void require_same(const Scalar& a, const Scalar& b) {
  if (a.kind() != b.kind()) {
    throw VariantMismatch("scalar variant mismatch: " + kind_name(a.kind()) + " vs " +
                          kind_name(b.kind()));
  }
}

}  // namespace

const Rational& Scalar::as_rational() const {
  if (kind() != ScalarKind::rational) throw VariantMismatch("not a rational scalar");
  return std::get<Rational>(v_);
}

const Gaussian& Scalar::as_gaussian() const {
  if (kind() != ScalarKind::gaussian) throw VariantMismatch("not a gaussian scalar");
  return std::get<Gaussian>(v_);
}

const RatFunc& Scalar::as_ratfunc() const {
  if (kind() != ScalarKind::ratfunc) throw VariantMismatch("not a ratfunc scalar");
  return std::get<RatFunc>(v_);
}

Gaussian Scalar::to_gaussian() const {
  switch (kind()) {
    case ScalarKind::rational:
      return Gaussian(std::get<Rational>(v_));
    case ScalarKind::gaussian:
      return std::get<Gaussian>(v_);
    case ScalarKind::ratfunc:
      break;
  }
  throw VariantMismatch("rational function is not a constant");
}

bool Scalar::is_zero() const {
  return std::visit([](const auto& x) { return detlines::is_zero(x); }, v_);
}

Scalar Scalar::add(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return std::visit(
      [&](const auto& x) -> Scalar {
        using T = std::decay_t<decltype(x)>;
        return Scalar(T(x + std::get<T>(b.v_)));
      },
      a.v_);
}

Scalar Scalar::mul(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return std::visit(
      [&](const auto& x) -> Scalar {
        using T = std::decay_t<decltype(x)>;
        return Scalar(T(x * std::get<T>(b.v_)));
      },
      a.v_);
}

Scalar Scalar::neg(const Scalar& a) {
  return std::visit([](const auto& x) -> Scalar { return Scalar(std::decay_t<decltype(x)>(-x)); },
                    a.v_);
}

Scalar Scalar::inv(const Scalar& a) {
  return std::visit([](const auto& x) -> Scalar { return Scalar(detlines::inverse(x)); }, a.v_);
}

bool Scalar::eq(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return a.v_ == b.v_;
}

std::string Scalar::str() const {
  return std::visit([](const auto& x) { return detlines::to_text(x); }, v_);
}

Scalar Scalar::parse(std::string_view text, ScalarKind kind) {
  RatFunc r = RatFunc::parse(text);
  if (kind == ScalarKind::ratfunc) return Scalar(r);
  if (!r.is_polynomial() || r.num().degree() > 0) {
    throw ParseError("not a constant: " + std::string(text));
  }
  Gaussian g = r.num().coeff(0);
  if (kind == ScalarKind::gaussian) return Scalar(g);
  if (!g.is_real()) throw ParseError("not a rational: " + std::string(text));
  return Scalar(g.re());
}

// ---------------------------------------------------------- reconstruction

RatFunc rational_reconstruct(const std::vector<Sample>& samples, int num_bound, int den_bound) {
  if (num_bound < 0 || den_bound < 0) throw ReconstructionError("negative degree bound");
  const size_t n = samples.size();
  if (n < static_cast<size_t>(num_bound) + static_cast<size_t>(den_bound) + 2) {
    throw ReconstructionError("too few samples for the requested degree bounds");
  }
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      if (samples[a].point == samples[b].point) {
        throw ReconstructionError("duplicate sample point " + samples[a].point.str());
      }
    }
  }

  // Newton interpolant through all samples.
  std::vector<Gaussian> dd(n);
  for (size_t k = 0; k < n; ++k) dd[k] = samples[k].value;
  for (size_t j = 1; j < n; ++j) {
    for (size_t k = n - 1; k >= j; --k) {
      dd[k] = (dd[k] - dd[k - 1]) / (samples[k].point - samples[k - j].point);
    }
  }
  Polynomial u(dd[n - 1]);
  for (size_t k = n - 1; k-- > 0;) {
    u *= Polynomial(std::vector<Gaussian>{-samples[k].point, Gaussian(1)});
    u += Polynomial(dd[k]);
  }
  Polynomial m(1);
  for (const auto& s : samples) m *= Polynomial(std::vector<Gaussian>{-s.point, Gaussian(1)});

  // Extended Euclid on (m, u), stopped at the first remainder within the
  // numerator bound: r = t*u mod m.
  Polynomial r0 = m, r1 = u, t0, t1(1);
  while (!r1.is_zero() && r1.degree() > num_bound) {
    auto [q, r] = Polynomial::divmod(r0, r1);
    Polynomial t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (t1.is_zero()) throw ReconstructionError("degenerate reconstruction");
  RatFunc f(r1, t1);
  if (f.num().degree() > num_bound || f.den().degree() > den_bound) {
    throw ReconstructionError("no rational function within the degree bounds fits the samples");
  }
  for (const auto& s : samples) {
    Gaussian q = f.den().eval(s.point);
    if (q.is_zero() || f.num().eval(s.point) != s.value * q) {
      throw ReconstructionError("samples inconsistent with a rational function at " +
                                s.point.str());
    }
  }
  return f;
}

}  // namespace detlines
