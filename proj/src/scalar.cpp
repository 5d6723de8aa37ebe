#include "so3five/scalar.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

namespace so3five {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kSqrt6 = 2.4494897427831780982;

using Int = boost::multiprecision::cpp_int;

std::optional<Rational> sqrt_rational(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return Rational(0);
  Int num = numerator(r), den = denominator(r);
  Int sn = sqrt(num), sd = sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

// sign of p + q*sqrt2, exact.
int sign_q2(const Rational& p, const Rational& q) {
  int sp = p.sign(), sq = q.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // opposite signs: p^2 > 2 q^2 means the rational part dominates
  int s = Rational(p * p - 2 * q * q).sign();
  return s == 0 ? 0 : (s > 0 ? sp : sq);
}

// sign of (u0 + u1*sqrt2) + (v0 + v1*sqrt2)*sqrt3, exact.
int sign_q2q3(const Rational& u0, const Rational& u1, const Rational& v0,
              const Rational& v1) {
  int su = sign_q2(u0, u1);
  int sv = sign_q2(v0, v1);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  // u^2 > 3 v^2 (in Q(sqrt2)) means the sqrt3-free part dominates
  Rational p = u0 * u0 + 2 * u1 * u1 - 3 * (v0 * v0 + 2 * v1 * v1);
  Rational q = 2 * u0 * u1 - 6 * v0 * v1;
  int s = sign_q2(p, q);
  return s == 0 ? 0 : (s > 0 ? su : sv);
}

// sqrt of p + q*sqrt2 within Q(sqrt2), if any; returns (x, y) with
// (x + y sqrt2)^2 = p + q sqrt2 and x + y sqrt2 >= 0.
std::optional<std::pair<Rational, Rational>> sqrt_q2(const Rational& p,
                                                     const Rational& q) {
  if (sign_q2(p, q) < 0) return std::nullopt;
  if (q == 0) {
    if (auto s = sqrt_rational(p)) return std::make_pair(*s, Rational(0));
    if (auto s = sqrt_rational(p / 2)) return std::make_pair(Rational(0), *s);
    return std::nullopt;
  }
  // (x + y sqrt2)^2 = x^2 + 2y^2 + 2xy sqrt2
  auto d = sqrt_rational(p * p - 2 * q * q);
  if (!d) return std::nullopt;
  for (int branch = 0; branch < 2; ++branch) {
    Rational x2 = branch == 0 ? Rational(p + *d) : Rational(p - *d);
    x2 /= 2;
    if (auto x = sqrt_rational(x2)) {
      if (*x == 0) continue;
      Rational y = q / (2 * *x);
      if (sign_q2(*x, y) < 0) {
        return std::make_pair(-*x, -y);
      }
      return std::make_pair(*x, y);
    }
  }
  return std::nullopt;
}

void emit_rational(std::ostream& os, const Rational& r) {
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
}

Rational parse_rational(const std::string& tok) {
  auto slash = tok.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(tok));
    Int num(tok.substr(0, slash)), den(tok.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in '" + tok + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw parse_error("bad rational '" + tok + "'");
  }
}

}  // namespace

Scalar Scalar::exact(Rational a, Rational b, Rational c, Rational d) {
  Scalar s;
  s.mode_ = Mode::exact;
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.c_ = std::move(c);
  s.d_ = std::move(d);
  return s;
}

Scalar Scalar::floating(double v) {
  Scalar s;
  s.mode_ = Mode::floating;
  s.v_ = v;
  return s;
}

Scalar Scalar::integer(long v, Mode m) {
  return m == Mode::exact ? exact(Rational(v)) : floating(double(v));
}

Scalar Scalar::ratio(long num, long den, Mode m) {
  return m == Mode::exact ? exact(Rational(num, den))
                          : floating(double(num) / double(den));
}

Scalar Scalar::sqrt2(Mode m) {
  return m == Mode::exact ? exact(0, 1) : floating(kSqrt2);
}
Scalar Scalar::sqrt3(Mode m) {
  return m == Mode::exact ? exact(0, 0, 1) : floating(kSqrt3);
}
Scalar Scalar::sqrt6(Mode m) {
  return m == Mode::exact ? exact(0, 0, 0, 1) : floating(kSqrt6);
}

Scalar Scalar::operator+(const Scalar& o) const {
  check(o);
  if (mode_ == Mode::floating) return floating(v_ + o.v_);
  return exact(a_ + o.a_, b_ + o.b_, c_ + o.c_, d_ + o.d_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check(o);
  if (mode_ == Mode::floating) return floating(v_ - o.v_);
  return exact(a_ - o.a_, b_ - o.b_, c_ - o.c_, d_ - o.d_);
}

Scalar Scalar::operator-() const {
  if (mode_ == Mode::floating) return floating(-v_);
  return exact(-a_, -b_, -c_, -d_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check(o);
  if (mode_ == Mode::floating) return floating(v_ * o.v_);
  const bool lr = b_ == 0 && c_ == 0 && d_ == 0;
  const bool rr = o.b_ == 0 && o.c_ == 0 && o.d_ == 0;
  if (lr) {
    if (a_ == 0) return Scalar();
    if (rr) return exact(a_ * o.a_);
    return exact(a_ * o.a_, a_ * o.b_, a_ * o.c_, a_ * o.d_);
  }
  if (rr) {
    if (o.a_ == 0) return Scalar();
    return exact(a_ * o.a_, b_ * o.a_, c_ * o.a_, d_ * o.a_);
  }
  // (a + b r2 + c r3 + d r6)(a' + b' r2 + c' r3 + d' r6) with
  // r2*r3 = r6, r2*r6 = 2 r3, r3*r6 = 3 r2.
  return exact(a_ * o.a_ + 2 * b_ * o.b_ + 3 * c_ * o.c_ + 6 * d_ * o.d_,
               a_ * o.b_ + b_ * o.a_ + 3 * (c_ * o.d_ + d_ * o.c_),
               a_ * o.c_ + c_ * o.a_ + 2 * (b_ * o.d_ + d_ * o.b_),
               a_ * o.d_ + d_ * o.a_ + b_ * o.c_ + c_ * o.b_);
}

Scalar Scalar::inverse() const {
  if (mode_ == Mode::floating) return floating(1.0 / v_);
  if (is_zero()) throw std::domain_error("division by zero scalar");
  // Rationalize with the three conjugates (flip sqrt2, flip sqrt3, flip both).
  Scalar c2 = exact(a_, -b_, c_, -d_);
  Scalar c3 = exact(a_, b_, -c_, -d_);
  Scalar c6 = exact(a_, -b_, -c_, d_);
  Scalar num = c2 * c3 * c6;
  Scalar norm = *this * num;  // rational by Galois theory
  if (!(norm.b_ == 0 && norm.c_ == 0 && norm.d_ == 0))
    throw std::logic_error("field norm not rational");
  Rational n = norm.a_;
  return exact(num.a_ / n, num.b_ / n, num.c_ / n, num.d_ / n);
}

Scalar Scalar::operator/(const Scalar& o) const {
  check(o);
  if (mode_ == Mode::floating) return floating(v_ / o.v_);
  return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  check(o);
  if (mode_ == Mode::floating) return v_ == o.v_;
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

bool Scalar::is_zero() const {
  if (mode_ == Mode::floating) return v_ == 0.0;
  return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0;
}

int Scalar::sign() const {
  if (mode_ == Mode::floating) return v_ > 0 ? 1 : (v_ < 0 ? -1 : 0);
  return sign_q2q3(a_, b_, c_, d_);
}

double Scalar::to_double() const {
  if (mode_ == Mode::floating) return v_;
  return a_.convert_to<double>() + b_.convert_to<double>() * kSqrt2 +
         c_.convert_to<double>() * kSqrt3 + d_.convert_to<double>() * kSqrt6;
}

std::optional<Scalar> Scalar::sqrt_in_field() const {
  if (mode_ == Mode::floating) {
    if (v_ < 0) return std::nullopt;
    return floating(std::sqrt(v_));
  }
  // Write x = u + v*sqrt3 with u = a + b r2, v = c + d r2 in Q(sqrt2).
  if (c_ == 0 && d_ == 0) {
    if (auto s = sqrt_q2(a_, b_)) return exact(s->first, s->second);
    // y = (x0 + x1 r2) * sqrt3: 3*(x0+x1 r2)^2 = u
    if (auto s = sqrt_q2(a_ / 3, b_ / 3)) return exact(0, 0, s->first, s->second);
    return std::nullopt;
  }
  // y = alpha + beta sqrt3, alpha,beta in Q(sqrt2):
  // alpha^2 + 3 beta^2 = u, 2 alpha beta = v  =>  4 alpha^4 - 4 u alpha^2 + 3 v^2 = 0
  // alpha^2 = (u +- sqrt(u^2 - 3 v^2)) / 2 in Q(sqrt2).
  // u^2 - 3v^2 in Q(sqrt2):
  Rational p = a_ * a_ + 2 * b_ * b_ - 3 * (c_ * c_ + 2 * d_ * d_);
  Rational q = 2 * a_ * b_ - 6 * c_ * d_;
  auto D = sqrt_q2(p, q);
  if (!D) return std::nullopt;
  for (int branch = 0; branch < 2; ++branch) {
    Rational s0 = branch == 0 ? D->first : -D->first;
    Rational s1 = branch == 0 ? D->second : -D->second;
    // alpha^2 = (u + s) / 2
    Rational t0 = (a_ + s0) / 2, t1 = (b_ + s1) / 2;
    if (auto al = sqrt_q2(t0, t1)) {
      Rational al0 = al->first, al1 = al->second;
      if (al0 == 0 && al1 == 0) continue;
      // beta = v / (2 alpha) in Q(sqrt2)
      Rational n = 2 * (al0 * al0 - 2 * al1 * al1);  // norm-ish denominator
      if (n == 0) continue;
      // (c + d r2) * (al0 - al1 r2) / (al0^2 - 2 al1^2) / 2
      Rational be0 = (c_ * al0 - 2 * d_ * al1) * 2 / (2 * n);
      Rational be1 = (d_ * al0 - c_ * al1) * 2 / (2 * n);
      Scalar y = exact(al0, al1, be0, be1);
      if ((y * y) == *this) return y.sign() < 0 ? -y : y;
    }
  }
  return std::nullopt;
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (mode_ == Mode::floating) {
    os.precision(17);
    os << v_;
    return os.str();
  }
  struct Term {
    const Rational* coeff;
    const char* radical;
  };
  const Term terms[] = {{&a_, ""}, {&b_, "r2"}, {&c_, "r3"}, {&d_, "r6"}};
  bool first = true;
  for (const Term& t : terms) {
    if (*t.coeff == 0) continue;
    Rational r = *t.coeff;
    if (first) {
      if (r < 0) {
        os << "-";
        r = -r;
      }
      first = false;
    } else {
      os << (r < 0 ? " - " : " + ");
      if (r < 0) r = -r;
    }
    if (t.radical[0] == '\0') {
      emit_rational(os, r);
    } else {
      if (r != 1) {
        emit_rational(os, r);
        os << "*";
      }
      os << t.radical;
    }
  }
  if (first) os << "0";
  return os.str();
}

Scalar Scalar::parse(const std::string& text, Mode m) {
  if (m == Mode::floating) {
    try {
      std::size_t pos = 0;
      double v = std::stod(text, &pos);
      while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
      if (pos != text.size()) throw parse_error("trailing junk in '" + text + "'");
      return floating(v);
    } catch (const std::logic_error&) {
      throw parse_error("bad float literal '" + text + "'");
    }
  }
  // Grammar: term (('+'|'-') term)*, term = rational ['*' radical] | radical,
  // radical in {r2, r3, r6}.
  Rational coeff[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  skip_ws();
  if (i == text.size()) throw parse_error("empty scalar");
  bool first = true;
  while (true) {
    skip_ws();
    if (i == text.size()) {
      if (first) throw parse_error("empty scalar");
      break;
    }
    int sgn = 1;
    if (text[i] == '+' || text[i] == '-') {
      sgn = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw parse_error("expected '+' or '-' in '" + text + "'");
    }
    std::size_t start = i;
    while (i < text.size() && (std::isalnum((unsigned char)text[i]) ||
                               text[i] == '/' || text[i] == '*' || text[i] == '.'))
      ++i;
    std::string term = text.substr(start, i - start);
    if (term.empty()) throw parse_error("dangling sign in '" + text + "'");
    if (term.find('.') != std::string::npos)
      throw parse_error("decimal literal '" + term + "' not allowed in exact mode");
    Rational r(1);
    int slot = 0;
    auto star = term.find('*');
    std::string rad;
    if (star != std::string::npos) {
      r = parse_rational(term.substr(0, star));
      rad = term.substr(star + 1);
    } else if (term == "r2" || term == "r3" || term == "r6") {
      rad = term;
    } else {
      r = parse_rational(term);
    }
    if (rad == "r2") slot = 1;
    else if (rad == "r3") slot = 2;
    else if (rad == "r6") slot = 3;
    else if (!rad.empty()) throw parse_error("unknown radical '" + rad + "'");
    coeff[slot] += sgn * r;
    first = false;
  }
  return exact(coeff[0], coeff[1], coeff[2], coeff[3]);
}

}  // namespace so3five
