#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "so3five/analysis.hpp"

using namespace so3five;

namespace {
constexpr Mode EX = Mode::exact;
const Scalar kZero = Scalar::zero(EX);

KVector e(int i) { return KVector::e(i, EX); }
Scalar q(long n, long d = 1) { return Scalar::ratio(n, d); }
Scalar r3() { return Scalar::sqrt3(EX); }

KappaTriple std_triple() { return kappa_frame(Frame::standard(EX)); }

TwistorPoint at(long y1n, long y1d, long y2n, long y2d, long y3n, long y3d) {
  return TwistorPoint::standard(
      {q(y1n, y1d), q(y2n, y2d), q(y3n, y3d)}, kZero);
}

TwistorPoint at_k(int i) {
  std::array<Scalar, 3> y = {q(i == 1), q(i == 2), q(i == 3)};
  return TwistorPoint::standard(y, kZero);
}
}  // namespace

TEST_CASE("twistor point invariant") {
  CHECK_THROWS_AS(TwistorPoint::standard({q(1), q(1), q(0)}, kZero),
                  precondition_error);
  TwistorPoint p = at(3, 5, 4, 5, 0, 1);
  CHECK(inner(p.sigma(), p.sigma()) == q(5));
}

TEST_CASE("xi anchors") {
  KappaTriple k = std_triple();
  CHECK(xi_of(k.k3, kZero) == -e(1));
  CHECK(xi_of(k.k1, kZero) == e(1) * q(1, 2) - e(4) * (r3() * q(1, 2)));
  CHECK(at_k(3).xi() == -e(1));
  // homogeneity degree 2
  KVector s = k.k1 * q(2) - k.k3 * q(3, 2);
  CHECK(xi_of(s * q(3), kZero) == xi_of(s, kZero) * q(9));
  // |xi| = 1 and i_xi sigma = 0 on the sphere
  TwistorPoint p = at(1, 3, 2, 3, 2, 3);
  CHECK(inner(p.xi(), p.xi()) == q(1));
  CHECK(interior(p.xi(), p.sigma()).is_zero());
  CHECK_THROWS_AS(xi_of(wedge(e(1), e(2)), kZero), precondition_error);
}

TEST_CASE("xi matches the coordinate polynomial") {
  auto poly = [&](const std::array<Scalar, 3>& y) {
    KVector w(1, EX);
    Scalar h = q(1, 2);
    w[0] = h * y[0] * y[0] + h * y[1] * y[1] - y[2] * y[2];
    w[1] = -r3() * y[0] * y[1];
    w[2] = r3() * y[0] * y[2];
    w[3] = -h * r3() * (y[0] * y[0] - y[1] * y[1]);
    w[4] = -r3() * y[1] * y[2];
    return w;
  };
  std::vector<std::array<Scalar, 3>> pts = {
      {q(1), q(0), q(0)},      {q(0), q(0), q(1)},
      {q(3, 5), q(4, 5), q(0)}, {q(1, 3), q(2, 3), q(2, 3)},
      {q(2, 7), q(3, 7), q(6, 7)}};
  for (const auto& y : pts) {
    TwistorPoint p = TwistorPoint::standard(y, kZero);
    CHECK(p.xi() == poly(y));
  }
}

TEST_CASE("sigma_pm anchors at kappa3") {
  TwistorPoint p = at_k(3);
  auto [sp, sm] = sigma_pm(p);
  CHECK(sp == (wedge(e(2), e(4)) + wedge(e(3), e(5))) * q(3, 2));
  CHECK(sm == (wedge(e(2), e(4)) - wedge(e(3), e(5))) * q(1, 2));
  CHECK(sp + sm == p.sigma());
  // annihilated by i_xi; self/anti-self dual on H^sigma
  TwistorPoint p2 = at(1, 3, 2, 3, 2, 3);
  auto [sp2, sm2] = sigma_pm(p2);
  CHECK(interior(p2.xi(), sp2).is_zero());
  CHECK(interior(p2.xi(), sm2).is_zero());
  CHECK(interior(p2.xi(), hodge_star(sp2)) == sp2);
  CHECK(interior(p2.xi(), hodge_star(sm2)) == -sm2);
}

TEST_CASE("phi anchors at kappa3") {
  TwistorPoint p = at_k(3);
  CHECK(phi_pm(p, +1, e(2)) == e(4));
  CHECK(phi_pm(p, +1, e(3)) == e(5));
  CHECK(phi_pm(p, -1, e(3)) == -e(5));
  CHECK(phi_pm(p, -1, e(2)) == e(4));
  CHECK(phi_pm(p, +1, p.xi()).is_zero());
  CHECK(phi_pm(p, -1, p.xi()).is_zero());
}

TEST_CASE("phi squared identity and skewness") {
  for (const auto& y : probe_grid(EX)) {
    TwistorPoint p = TwistorPoint::standard(y, kZero);
    for (int sign : {+1, -1})
      for (int a = 1; a <= 5; ++a) {
        KVector pp = phi_pm(p, sign, phi_pm(p, sign, e(a)));
        CHECK(pp == -e(a) + p.xi() * inner(e(a), p.xi()));
        for (int b = 1; b <= 5; ++b)
          CHECK(inner(phi_pm(p, sign, e(a)), e(b)) ==
                -inner(e(a), phi_pm(p, sign, e(b))));
      }
  }
}

TEST_CASE("phi_plus_extended") {
  KappaTriple k = std_triple();
  // agrees with phi_pm at |s|^2 = 5
  TwistorPoint p = at_k(3);
  CHECK(phi_plus_extended(k.k3, e(2), kZero) == phi_pm(p, +1, e(2)));
  CHECK(phi_plus_extended(k.k3, e(3), kZero) == e(5));
  CHECK(phi_plus_extended(k.k3, p.xi(), kZero).is_zero());
  // cubic homogeneity
  KVector s = k.k1 * q(1, 2) - k.k2 * q(2);
  KVector x = e(1) + e(4) * q(2) - e(5);
  CHECK(phi_plus_extended(s * q(3), x, kZero) ==
        phi_plus_extended(s, x, kZero) * q(27));
  // agreement with phi_pm at a non-axis sphere point
  TwistorPoint p2 = at(3, 5, 0, 1, 4, 5);
  CHECK(phi_plus_extended(p2.sigma(), x, kZero) == phi_pm(p2, +1, x));
}

TEST_CASE("f_matrix agrees with phi and has the right kernel") {
  for (const auto& y : probe_grid(EX)) {
    TwistorPoint p = TwistorPoint::standard(y, kZero);
    for (int sign : {+1, -1}) {
      Tensor2 f = f_matrix(p, sign);
      for (int a = 1; a <= 5; ++a) {
        KVector img = phi_pm(p, sign, e(a));
        for (int b = 1; b <= 5; ++b)
          CHECK(f.at(a - 1, b - 1) == inner(img, e(b)));
      }
      // kernel: xi component annihilated (apply with pairing convention)
      CHECK(f.apply(p.xi()).is_zero());
    }
  }
  // f(y=(0,0,1), +) equals the phi_+ matrix at kappa3 entrywise (anchor)
  TwistorPoint p3 = at_k(3);
  Tensor2 f3 = f_matrix(p3, +1);
  CHECK(f3.at(1, 3) == q(1));   // E2 -> E4
  CHECK(f3.at(2, 4) == q(1));   // E3 -> E5
  CHECK(f3.at(3, 1) == q(-1));
}

TEST_CASE("big_phi") {
  KappaTriple k = std_triple();
  TwistorPoint p = at_k(3);
  // vertical part: n = 1, V = kappa1 -> (-1)^1 cross(k3, k1) = -kappa2
  TangentPair A(KVector(1, EX), k.k1);
  TangentPair out = big_phi(1, +1, p, A);
  CHECK(out.vertical == -k.k2);
  CHECK(out.horizontal.is_zero());
  // horizontal part: a2 -> a4 on the plus branch
  TangentPair B(e(2), KVector(2, EX));
  CHECK(big_phi(1, +1, p, B).horizontal == e(4));
  // vertical not orthogonal to sigma is rejected
  CHECK_THROWS_AS(big_phi(1, +1, p, TangentPair(e(1), k.k3)),
                  precondition_error);
  // (Phi)^3 + Phi = 0 on mixed tangent pairs over the grid
  std::mt19937 rng(8);
  std::uniform_int_distribution<long> d(-3, 3);
  for (const auto& y : probe_grid(EX)) {
    TwistorPoint pt = TwistorPoint::standard(y, kZero);
    KVector hor(1, EX);
    for (int i = 0; i < 5; ++i) hor[i] = q(d(rng));
    KVector ver = k.k1 * q(d(rng)) + k.k2 * q(d(rng)) + k.k3 * q(d(rng));
    ver = ver - pt.sigma() * (inner(ver, pt.sigma()) * q(1, 5));
    TangentPair tp(hor, ver);
    for (int n : {1, 2})
      for (int sign : {+1, -1}) {
        TangentPair p1 = big_phi(n, sign, pt, tp);
        TangentPair p2 = big_phi(n, sign, pt, p1);
        TangentPair p3 = big_phi(n, sign, pt, p2);
        CHECK((p3.horizontal + p1.horizontal).is_zero());
        CHECK((p3.vertical + p1.vertical).is_zero());
      }
  }
}

TEST_CASE("metric_ht") {
  KappaTriple k = std_triple();
  TangentPair a(e(1), KVector(2, EX));
  CHECK(metric_ht(q(1), a, a) == q(1));
  TangentPair v(KVector(1, EX), k.k1);
  CHECK(metric_ht(q(2), v, v) == q(10));
  CHECK(metric_ht(q(2), a, v) == q(0));
  CHECK_THROWS_AS(metric_ht(q(0), a, a), precondition_error);
  CHECK_THROWS_AS(metric_ht(q(-1), a, a), precondition_error);
}

TEST_CASE("d_eta witness and properties") {
  KappaTriple k = std_triple();
  TwistorPoint p = at_k(3);
  TangentPair A(e(3), KVector(2, EX));
  TangentPair B(KVector(1, EX), k.k1);
  KVector t0(3, EX);
  CHECK(d_eta(p, +1, A, B, t0) == -r3());
  CHECK(d_eta(p, -1, A, B, t0) == r3());
  // antisymmetry and A = B -> 0
  CHECK(d_eta(p, +1, B, A, t0) == r3());
  CHECK(d_eta(p, +1, A, A, t0) == q(0));
  // Omega vanishes on the same witness pair while d_eta does not
  for (int n : {1, 2})
    for (int sign : {+1, -1})
      CHECK(omega_form(n, sign, q(1), p, A, B) == q(0));
  // frozen general-position oracle (flat-model value):
  // y = (3/5, 4/5, 0), X = (1,2,-1,1/2,0), V = proj of kappa1,
  // Y = (0,1,0,0,-1), W = proj of kappa2/3; torsion of Example 2 at t = 1
  TwistorPoint p2 = at(3, 5, 4, 5, 0, 1);
  KVector x(1, EX);
  x[0] = q(1); x[1] = q(2); x[2] = q(-1); x[3] = q(1, 2);
  KVector vv = k.k1 * q(16, 25) + k.k2 * q(-12, 25);
  KVector yv(1, EX);
  yv[1] = q(1); yv[4] = q(-1);
  KVector w0 = k.k2 * q(1, 3);
  KVector ww = w0 - p2.sigma() * (inner(w0, p2.sigma()) * q(1, 5));
  KVector tors(3, EX);
  tors.set_coeff({1, 2, 4}, q(1));
  tors.set_coeff({1, 3, 5}, q(2));
  Scalar got = d_eta(p2, +1, TangentPair(x, vv), TangentPair(yv, ww), tors);
  CHECK(got == q(3, 4) - r3() * q(73, 250));
}

TEST_CASE("comm identity") {
  KappaTriple k = std_triple();
  TwistorPoint p = at_k(3);
  CHECK(comm_identity_check(p, 1, +1, k.k1, kZero));
  CHECK(comm_identity_check(p, 2, -1, k.k2, kZero));
  CHECK(comm_identity_check(p, 1, -1, KVector(2, EX), kZero));
  for (const auto& y : probe_grid(EX)) {
    TwistorPoint pt = TwistorPoint::standard(y, kZero);
    KVector v = k.k1 - pt.sigma() * (inner(k.k1, pt.sigma()) * q(1, 5));
    for (int n : {1, 2})
      for (int sign : {+1, -1}) CHECK(comm_identity_check(pt, n, sign, v, kZero));
  }
}
