#include "so3five/twistor.hpp"

namespace so3five {

namespace {
Scalar default_tol(Mode m) {
  return m == Mode::exact ? Scalar::zero(m) : Scalar::floating(1e-9);
}
}  // namespace

TwistorPoint::TwistorPoint(const KappaTriple& ref, std::array<Scalar, 3> y,
                           const Scalar& tol)
    : ref_(ref), y_(std::move(y)), sigma_(2, y_[0].mode()), xi_(1, y_[0].mode()) {
  Mode m = y_[0].mode();
  Scalar norm = y_[0] * y_[0] + y_[1] * y_[1] + y_[2] * y_[2];
  if (((norm - Scalar::one(m)).abs() - tol).sign() > 0)
    throw precondition_error("twistor point needs sum y_i^2 = 1");
  sigma_ = ref_.k1 * y_[0] + ref_.k2 * y_[1] + ref_.k3 * y_[2];
  xi_ = hodge_star(wedge(sigma_, sigma_)) * Scalar::ratio(1, 4, m);
}

TwistorPoint TwistorPoint::standard(std::array<Scalar, 3> y, const Scalar& tol) {
  Mode m = y[0].mode();
  return TwistorPoint(standard_kappa(m), std::move(y), tol);
}

TangentPair::TangentPair(KVector hor, KVector ver)
    : horizontal(std::move(hor)), vertical(std::move(ver)) {
  if (horizontal.degree() != 1 || vertical.degree() != 2)
    throw degree_error("tangent pair needs degrees (1, 2)");
  if (horizontal.mode() != vertical.mode()) throw mode_mismatch();
}

TangentPair TangentPair::zero(Mode m) {
  return TangentPair(KVector(1, m), KVector(2, m));
}

KVector bivector_action(const KVector& w, const KVector& x) {
  return Tensor2::from_bivector(w).apply(x);
}

KVector xi_of(const KVector& s, const Scalar& tol) {
  KVector res = s - project_bivector(Component::L23, s);
  if ((res.max_abs() - tol).sign() > 0)
    throw precondition_error("xi_of argument must lie in Lambda^2_3");
  return hodge_star(wedge(s, s)) * Scalar::ratio(1, 4, s.mode());
}

std::pair<KVector, KVector> sigma_pm(const TwistorPoint& p) {
  Mode m = p.mode();
  KVector ix = interior(p.xi(), hodge_star(p.sigma()));
  Scalar h = Scalar::ratio(1, 2, m);
  return {(p.sigma() + ix) * h, (p.sigma() - ix) * h};
}

Tensor2 phi_matrix(const KVector& sigma_norm5, int sign) {
  Mode m = sigma_norm5.mode();
  KVector xi = hodge_star(wedge(sigma_norm5, sigma_norm5)) * Scalar::ratio(1, 4, m);
  KVector ix = interior(xi, hodge_star(sigma_norm5));
  KVector sp = (sign > 0 ? sigma_norm5 + ix : sigma_norm5 - ix) *
               Scalar::ratio(1, 2, m);
  Scalar pref = Scalar::ratio(2, 2 + sign, m);
  // column action: (phi x)_b = sum_a x_a * pref * g(sp, e_a ^ e_b)
  Tensor2 f(m);
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b) {
      if (a == b) continue;
      f.at(b - 1, a - 1) =
          pref * inner(sp, wedge(KVector::e(a, m), KVector::e(b, m)));
    }
  return f;
}

KVector phi_pm(const TwistorPoint& p, int sign, const KVector& x) {
  Tensor2 f = phi_matrix(p.sigma(), sign);
  // f is stored column-action (f.at(b,a)): apply directly
  KVector out(1, p.mode());
  for (int b = 0; b < 5; ++b) {
    Scalar acc = Scalar::zero(p.mode());
    for (int a = 0; a < 5; ++a) acc += f.at(b, a) * x[a];
    out[b] = acc;
  }
  return out;
}

KVector phi_plus_extended(const KVector& s, const KVector& x, const Scalar& tol) {
  Mode m = s.mode();
  KVector res = s - project_bivector(Component::L23, s);
  if ((res.max_abs() - tol).sign() > 0)
    throw precondition_error("phi_plus_extended argument must lie in Lambda^2_3");
  KVector xi = hodge_star(wedge(s, s)) * Scalar::ratio(1, 4, m);
  KVector w = s * (inner(s, s) / Scalar::integer(5, m)) + interior(xi, hodge_star(s));
  return interior(x, w) * Scalar::ratio(1, 3, m);
}

Tensor2 f_matrix(const TwistorPoint& p, int sign) {
  Mode m = p.mode();
  const auto& y = p.y();
  const KappaTriple& k = p.triple();
  std::array<KVector, 3> star_k = {hodge_star(k.k1), hodge_star(k.k2),
                                   hodge_star(k.k3)};
  Scalar pref = Scalar::one(m) / Scalar::integer(2 + sign, m);
  Tensor2 f(m);
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b) {
      if (a == b) continue;
      KVector eab = wedge(KVector::e(a, m), KVector::e(b, m));
      Scalar tot = Scalar::zero(m);
      for (int i = 0; i < 3; ++i) {
        Scalar t1 = inner(k[i], eab);
        Scalar t2 = Scalar::zero(m);
        for (int eps = 1; eps <= 5; ++eps)
          t2 += p.xi()[eps - 1] * inner(star_k[i], wedge(eab, KVector::e(eps, m)));
        tot += y[i] * (sign > 0 ? t1 + t2 : t1 - t2);
      }
      f.at(a - 1, b - 1) = pref * tot;
    }
  return f;
}

TangentPair big_phi(int n, int sign, const TwistorPoint& p, const TangentPair& A) {
  Mode m = p.mode();
  Scalar tol = default_tol(m);
  if ((inner(A.vertical, p.sigma()).abs() - tol).sign() > 0)
    throw precondition_error("vertical part must be orthogonal to sigma");
  KVector ver = cross(p.sigma(), A.vertical, p.triple(), tol);
  if (n % 2 == 1) ver = -ver;
  return TangentPair(phi_pm(p, sign, A.horizontal), ver);
}

Scalar metric_ht(const Scalar& t, const TangentPair& A, const TangentPair& B) {
  if (t.sign() <= 0) throw precondition_error("metric parameter t must be > 0");
  return inner(A.horizontal, B.horizontal) + t * inner(A.vertical, B.vertical);
}

Scalar d_eta(const TwistorPoint& p, int sign, const TangentPair& A,
             const TangentPair& B, const KVector& torsion3) {
  if (torsion3.degree() != 3) throw degree_error("torsion must be a 3-vector");
  Mode m = p.mode();
  const KVector& xi = p.xi();
  auto t_of = [&](const KVector& u, const KVector& v) {
    KVector out(1, m);
    for (int z = 1; z <= 5; ++z)
      out[z - 1] = inner(torsion3, wedge(wedge(u, v), KVector::e(z, m)));
    return out;
  };
  Scalar torsion_part =
      (inner(t_of(A.horizontal, xi), B.horizontal) -
       inner(t_of(B.horizontal, xi), A.horizontal)) *
      Scalar::ratio(-1, 2, m);
  KVector wxi = bivector_action(B.vertical, xi);
  KVector vxi = bivector_action(A.vertical, xi);
  Scalar twist = inner(phi_pm(p, sign, A.horizontal), wxi) -
                 inner(phi_pm(p, sign, B.horizontal), vxi);
  return sign > 0 ? torsion_part + twist : torsion_part - twist;
}

Scalar omega_form(int n, int sign, const Scalar& t, const TwistorPoint& p,
                  const TangentPair& A, const TangentPair& B) {
  return metric_ht(t, A, big_phi(n, sign, p, B));
}

bool comm_identity_check(const TwistorPoint& p, int n, int sign,
                         const KVector& vertical, const Scalar& tol) {
  if ((inner(vertical, p.sigma()).abs() - tol).sign() > 0)
    throw precondition_error("vertical argument must be orthogonal to sigma");
  KVector jv = cross(p.sigma(), vertical, p.triple(), tol);
  if (n % 2 == 1) jv = -jv;  // J^(n)_pm V = (-1)^n sigma x V
  KVector lhs = bivector_action(jv, p.xi());
  KVector rhs = phi_pm(p, sign, bivector_action(vertical, p.xi()));
  if (n % 2 == 0) rhs = -rhs;  // pm (-1)^{n+1}
  if (sign < 0) rhs = -rhs;
  return ((lhs - rhs).max_abs() - tol).sign() <= 0;
}

}  // namespace so3five
