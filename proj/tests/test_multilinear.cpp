#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "so3five/kvector.hpp"

using namespace so3five;

namespace {
constexpr Mode EX = Mode::exact;

KVector e(int i) { return KVector::e(i, EX); }
KVector biv(int i, int j) { return wedge(e(i), e(j)); }
Scalar q(long n, long d = 1) { return Scalar::ratio(n, d); }

KVector kappa3() { return biv(2, 4) * q(2) + biv(3, 5); }
}  // namespace

TEST_CASE("wedge basics") {
  CHECK(wedge(e(1), e(2)) == KVector::basis(2, {1, 2}, EX));
  CHECK(wedge(e(2), e(1)) == -KVector::basis(2, {1, 2}, EX));
  CHECK(wedge(e(1), e(1)).is_zero());
  // kappa3 ^ kappa3 = -4 e2^e3^e4^e5
  KVector k3 = kappa3();
  KVector expect = KVector::basis(4, {2, 3, 4, 5}, EX) * q(-4);
  CHECK(wedge(k3, k3) == expect);
  CHECK_THROWS_AS(wedge(KVector(3, EX), KVector(3, EX)), degree_error);
  CHECK_THROWS_AS(wedge(e(1), KVector(1, Mode::floating)), mode_mismatch);
}

TEST_CASE("graded anticommutativity") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int ju = 1; ju <= 3; ++ju)
    for (int jv = 1; jv + ju <= 5; ++jv) {
      KVector u(ju, EX), v(jv, EX);
      for (int i = 0; i < u.size(); ++i) u[i] = q(d(rng));
      for (int i = 0; i < v.size(); ++i) v[i] = q(d(rng));
      KVector lhs = wedge(u, v);
      KVector rhs = wedge(v, u);
      if ((ju * jv) % 2 == 1) rhs = -rhs;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("hodge star anchors") {
  CHECK(hodge_star(KVector::basis(4, {2, 3, 4, 5}, EX)) == e(1));
  KVector one = hodge_star(KVector::vol(EX));
  CHECK(one.degree() == 0);
  CHECK(one[0] == Scalar::one(EX));
  // 1/4 * hodge(k3 ^ k3) = -e1   (the paper's sign anchor)
  KVector k3 = kappa3();
  CHECK(hodge_star(wedge(k3, k3)) * q(1, 4) == -e(1));
}

TEST_CASE("hodge adjunction over all bases") {
  for (int k = 0; k <= 5; ++k) {
    int n = multi_index::count(k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        KVector a(k, EX), b(k, EX);
        a[i] = Scalar::one(EX);
        b[j] = Scalar::one(EX);
        KVector lhs = wedge(a, hodge_star(b));
        CHECK(lhs[0] == inner(a, b));
      }
  }
}

TEST_CASE("interior product anchors") {
  CHECK(interior(e(1), biv(1, 2)) == e(2));
  CHECK(interior(e(3), biv(1, 2)).is_zero());
  // interior(-e1, hodge(k3)) = 2 e3^e5 + e2^e4
  KVector got = interior(-e(1), hodge_star(kappa3()));
  CHECK(got == biv(3, 5) * q(2) + biv(2, 4));
}

TEST_CASE("interior is the metric adjoint of wedging") {
  for (int k = 1; k <= 5; ++k)
    for (int x = 1; x <= 5; ++x)
      for (int i = 0; i < multi_index::count(k); ++i)
        for (int j = 0; j < multi_index::count(k - 1); ++j) {
          KVector w(k, EX), u(k - 1, EX);
          w[i] = Scalar::one(EX);
          u[j] = Scalar::one(EX);
          CHECK(inner(interior(e(x), w), u) == inner(w, wedge(e(x), u)));
        }
}

TEST_CASE("interior Leibniz-type identity") {
  // interior(x, x ^ u) + x ^ interior(x, u) = g(x,x) u
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    KVector x(1, EX), u(2, EX);
    for (int i = 0; i < 5; ++i) x[i] = q(d(rng));
    for (int i = 0; i < 10; ++i) u[i] = q(d(rng));
    KVector lhs = interior(x, wedge(x, u)) + wedge(x, interior(x, u));
    CHECK(lhs == u * inner(x, x));
  }
}

TEST_CASE("inner product anchors") {
  KVector k1 = biv(1, 5) * Scalar::sqrt3(EX) + biv(2, 3) + biv(4, 5);
  KVector k2 = biv(1, 3) * Scalar::sqrt3(EX) + biv(2, 5) + biv(3, 4);
  CHECK(inner(k1, k1) == q(5));
  CHECK(inner(k1, k2) == q(0));
  CHECK(inner(biv(1, 2), biv(1, 2)) == q(1));
  CHECK_THROWS_AS(inner(e(1), biv(1, 2)), degree_error);
}

TEST_CASE("float mode reproduces exact results within 1e-12") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    KVector u(2, EX), v(2, EX), x(1, EX);
    for (int i = 0; i < 10; ++i) {
      u[i] = q(d(rng), 1 + (i % 3));
      v[i] = q(d(rng), 1 + (i % 2));
    }
    for (int i = 0; i < 5; ++i) x[i] = q(d(rng));
    KVector uf = u.to_float(), vf = v.to_float(), xf = x.to_float();
    CHECK(std::abs(inner(u, v).to_double() - inner(uf, vf).value()) < 1e-12);
    KVector wexact = wedge(u, v);
    KVector wfloat = wedge(uf, vf);
    CHECK((wfloat - wexact.to_float()).max_abs().value() < 1e-12);
    KVector iexact = interior(x, hodge_star(u));
    KVector ifloat = interior(xf, hodge_star(uf));
    CHECK((ifloat - iexact.to_float()).max_abs().value() < 1e-12);
  }
}

TEST_CASE("tensor2 pairing and bivector round trip") {
  KVector w = biv(1, 3) * q(2) - biv(2, 5);
  Tensor2 t = Tensor2::from_bivector(w);
  CHECK(t.to_bivector() == w);
  // S_w(e_1): g(S(e1), y) = g(w, e1 ^ y) -> 2 e3
  CHECK(t.apply(e(1)) == e(3) * q(2));
  CHECK(t.apply(e(5)) == e(2));
  CHECK(t.is_skew(Scalar::zero(EX)));
  CHECK(Tensor2::identity(EX).trace() == q(5));
}
