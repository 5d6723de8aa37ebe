#ifndef SO3FIVE_SCALAR_HPP
#define SO3FIVE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace so3five {

using Rational = boost::multiprecision::cpp_rational;

struct mode_mismatch : std::invalid_argument {
  mode_mismatch() : std::invalid_argument("mixed exact/float scalar operation") {}
};

struct parse_error : std::invalid_argument {
  explicit parse_error(const std::string& what) : std::invalid_argument(what) {}
};

enum class Mode { exact, floating };

/// Element of Q(sqrt2, sqrt3) in the normal form a + b*sqrt2 + c*sqrt3 + d*sqrt6,
/// or an IEEE double.  Mixed-mode arithmetic throws; callers convert explicitly
/// with to_float().
class Scalar {
 public:
  Scalar() : mode_(Mode::exact) {}

  static Scalar exact(Rational a, Rational b = 0, Rational c = 0, Rational d = 0);
  static Scalar integer(long v, Mode m = Mode::exact);
  static Scalar ratio(long num, long den, Mode m = Mode::exact);
  static Scalar floating(double v);
  static Scalar zero(Mode m) { return integer(0, m); }
  static Scalar one(Mode m) { return integer(1, m); }
  static Scalar sqrt2(Mode m);
  static Scalar sqrt3(Mode m);
  static Scalar sqrt6(Mode m);

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::exact; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }
  double value() const { return v_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  bool is_zero() const;
  /// -1, 0, +1; exact mode decides algebraically, never by rounding.
  int sign() const;
  Scalar inverse() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const;
  /// exact -> floating conversion (lossless up to double rounding); the reverse
  /// direction is intentionally not provided.
  Scalar to_float() const { return floating(to_double()); }

  /// Square root inside Q(sqrt2,sqrt3) if one exists (exact mode); the
  /// non-negative root is returned.  Float mode: std::sqrt, nullopt if negative.
  std::optional<Scalar> sqrt_in_field() const;

  /// Serialization grammar: "a + b*r2 + c*r3 + d*r6", rationals as "p/q";
  /// floats as decimal literals.  Emission is canonical (stable bytes).
  std::string str() const;
  static Scalar parse(const std::string& text, Mode m);

 private:
  Mode mode_;
  Rational a_, b_, c_, d_;  // exact payload
  double v_ = 0.0;          // float payload

  void check(const Scalar& o) const {
    if (mode_ != o.mode_) throw mode_mismatch();
  }
};

inline Scalar operator*(long k, const Scalar& s) {
  return Scalar::integer(k, s.mode()) * s;
}

}  // namespace so3five

#endif
