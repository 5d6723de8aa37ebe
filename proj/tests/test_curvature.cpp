#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "so3five/analysis.hpp"

using namespace so3five;

namespace {
constexpr Mode EX = Mode::exact;
const Scalar kZero = Scalar::zero(EX);

Scalar q(long n, long d = 1) { return Scalar::ratio(n, d); }

CurvatureMap example2(long tnum = 1, long tden = 1) {
  Scalar t = q(tnum, tden);
  return CurvatureMap::rank_one_kappa3(q(2) * t * t);
}

TorsionTensor example2_torsion(long tnum = 1, long tden = 1) {
  TorsionTensor tt(EX);
  tt.set(1, 2, 4, q(tnum, tden));
  tt.set(1, 3, 5, q(2 * tnum, tden));
  return tt;
}

struct Rng {
  std::mt19937 g{101};
  Scalar r() {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    return q(num(g), den(g));
  }
  KVector vec(int k) {
    KVector v(k, EX);
    for (int i = 0; i < v.size(); ++i) v[i] = r();
    return v;
  }
  Tensor2 skew() {
    Tensor2 t(EX);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        Scalar v = r();
        t.at(i, j) = v;
        t.at(j, i) = -v;
      }
    return t;
  }
  Tensor2 sym_traceless() {
    Tensor2 t(EX);
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        Scalar v = r();
        t.at(i, j) = v;
        t.at(j, i) = v;
      }
    Scalar tr = t.trace() * q(1, 5);
    for (int i = 0; i < 5; ++i) t.at(i, i) -= tr;
    return t;
  }
  CurvatureMap curv() {
    CurvatureDecomposition d{vec(4), skew(), r(),
                             project(Component::S5, sym_traceless()) +
                                 project(Component::S9, sym_traceless())};
    return psi_inverse(d);
  }
};
}  // namespace

TEST_CASE("torsion tensor storage") {
  TorsionTensor t(EX);
  t.set(1, 2, 4, q(3));
  CHECK(t.component(1, 2, 4) == q(3));
  CHECK(t.component(2, 1, 4) == q(-3));
  CHECK(t.component(4, 1, 2) == q(3));
  CHECK(t.component(1, 1, 2) == q(0));
  CHECK_THROWS_AS(t.set(1, 1, 2, q(1)), precondition_error);
}

TEST_CASE("ricci of Example 2") {
  Tensor2 rho = ricci(example2());
  const long want[5] = {0, 8, 2, 8, 2};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(rho.at(i, j) == (i == j ? q(want[i]) : q(0)));
  CHECK(ricci(CurvatureMap(EX)).is_zero());
}

TEST_CASE("ricci of k_nu vanishes") {
  Rng rng;
  for (int t = 0; t < 50; ++t) CHECK(ricci(k_nu(rng.vec(4))).is_zero());
}

TEST_CASE("antisym of Example 2") {
  KVector a = antisym(example2());
  CHECK(a.coeff({2, 3, 4, 5}) == q(-4, 3));
  CHECK(a.coeff({1, 2, 3, 5}) == q(0));
  CHECK(a.coeff({1, 3, 4, 5}) == q(0));
}

TEST_CASE("antisym recovers nu from k_nu") {
  Rng rng;
  for (int t = 0; t < 50; ++t) {
    KVector nu = rng.vec(4);
    CHECK(antisym(k_nu(nu)) == nu);
  }
}

TEST_CASE("eta_prime laws") {
  Rng rng;
  Scalar five = q(5);
  for (int t = 0; t < 100; ++t) {
    Tensor2 skw = rng.skew();
    KVector w = skw.to_bivector();
    Tensor2 want =
        Tensor2::from_bivector(project_bivector(Component::L23, w) * five);
    CHECK(eta_prime(skw) == want);
  }
  for (int t = 0; t < 100; ++t) {
    Tensor2 sym = rng.sym_traceless();
    // make it non-traceless sometimes
    if (t % 3 == 0) sym.at(0, 0) += q(2);
    Tensor2 e1 = eta_prime(sym);
    Tensor2 e2 = eta_prime(e1);
    CHECK(e1 + e2 ==
          sym * q(12) + Tensor2::identity(EX) * (q(6) * sym.trace()));
  }
  CHECK(eta_prime(Tensor2::identity(EX)) == Tensor2::identity(EX) * q(6));
}

TEST_CASE("constructor recoveries") {
  Rng rng;
  for (int t = 0; t < 50; ++t) {
    KVector nu = rng.vec(4);
    CurvatureDecomposition d = psi_decompose(k_nu(nu), kZero);
    CHECK(d.alternation == nu);
    CHECK(d.rho_minus.is_zero());
    CHECK(d.scalar_curv == q(0));
    CHECK(d.eta.is_zero());

    Tensor2 skw = rng.skew();
    d = psi_decompose(k_minus(skw), kZero);
    CHECK(d.rho_minus == skw);
    CHECK(d.alternation.is_zero());
    CHECK(d.scalar_curv == q(0));
    CHECK(d.eta.is_zero());

    Tensor2 sym = rng.sym_traceless();
    d = psi_decompose(k_plus(sym), kZero);
    CHECK(d.eta == sym);
    CHECK(d.rho_minus.is_zero());
    CHECK(d.scalar_curv == q(0));
    CHECK(d.alternation.is_zero());
  }
  CHECK_THROWS_AS(k_minus(Tensor2::identity(EX)), precondition_error);
  CHECK_THROWS_AS(k_plus(Tensor2::identity(EX)), precondition_error);
  Rng rng2;
  CHECK_THROWS_AS(k_plus(rng2.skew()), precondition_error);
}

TEST_CASE("Lemma P: ricci of (5/6) P is the metric") {
  CurvatureMap p56 = CurvatureMap::projector_p(EX, q(5, 6));
  CHECK(ricci(p56) == Tensor2::identity(EX));
  CurvatureDecomposition d = psi_decompose(p56, kZero);
  CHECK(d.scalar_curv == q(5));
  CHECK(d.eta.is_zero());
  CHECK(d.rho_minus.is_zero());
  CHECK(d.alternation.is_zero());
}

TEST_CASE("psi round trips") {
  // zero map
  CurvatureDecomposition z{KVector(4, EX), Tensor2(EX), q(0), Tensor2(EX)};
  CHECK(psi_inverse(z).max_abs() == q(0));
  // Example 2 round trip, exact
  CurvatureMap k = example2();
  CurvatureDecomposition d = psi_decompose(k, kZero);
  CHECK(d.scalar_curv == q(20));
  const long eta_want[5] = {-4, 4, -2, 4, -2};
  for (int i = 0; i < 5; ++i) CHECK(d.eta.at(i, i) == q(eta_want[i]));
  CHECK(d.rho_minus.is_zero());
  CHECK(psi_inverse(d) == k);
  // random round trips both directions
  Rng rng;
  for (int t = 0; t < 50; ++t) {
    CurvatureMap km = rng.curv();
    CurvatureDecomposition dd = psi_decompose(km, kZero);
    CHECK(psi_inverse(dd) == km);
  }
  for (int t = 0; t < 10; ++t) {
    CurvatureDecomposition dd{rng.vec(4), rng.skew(), rng.r(),
                              project(Component::S5, rng.sym_traceless()) +
                                  project(Component::S9, rng.sym_traceless())};
    CurvatureDecomposition back = psi_decompose(psi_inverse(dd), kZero);
    CHECK(back.alternation == dd.alternation);
    CHECK(back.rho_minus == dd.rho_minus);
    CHECK(back.scalar_curv == dd.scalar_curv);
    CHECK(back.eta == dd.eta);
  }
}

TEST_CASE("range condition validation") {
  // a map with Lambda^2_7 output must be rejected
  std::vector<std::vector<Scalar>> bad(10, std::vector<Scalar>(10, q(0)));
  bad[0][0] = q(1);  // K(e1^e2) = e1^e2, not in Lambda^2_3
  CHECK_THROWS_AS(CurvatureMap::from_matrix(bad, kZero), precondition_error);
  CHECK(example2().range_residual() == q(0));
  CHECK(CurvatureMap::projector_p(EX, q(1)).range_residual() == q(0));
}

TEST_CASE("rank-one constructor matches the full matrix form") {
  CurvatureMap k = example2();
  KappaTriple kap = kappa_frame(Frame::standard(EX));
  for (int r = 0; r < 10; ++r) {
    KVector b(2, EX);
    b[r] = Scalar::one(EX);
    KVector want = kap.k3 * (q(2) * inner(b, kap.k3));
    CHECK(k.apply(b) == want);
  }
}
