#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "so3five/representation.hpp"

using namespace so3five;

namespace {
constexpr Mode EX = Mode::exact;
const Scalar kZero = Scalar::zero(EX);

KVector e(int i) { return KVector::e(i, EX); }
Scalar q(long n, long d = 1) { return Scalar::ratio(n, d); }
Scalar r3() { return Scalar::sqrt3(EX); }

KVector rnd_vec(std::mt19937& rng, int k = 1) {
  std::uniform_int_distribution<long> d(-4, 4);
  KVector v(k, EX);
  for (int i = 0; i < v.size(); ++i) v[i] = q(d(rng), 1 + (i % 3));
  return v;
}

SO3Element h_phi(const Scalar& c, const Scalar& s) {
  Mat3 h(c.mode());
  h.at(0, 0) = -s; h.at(0, 1) = c;
  h.at(1, 2) = Scalar::one(c.mode());
  h.at(2, 0) = c; h.at(2, 1) = s;
  return SO3Element(h, Scalar::zero(c.mode()));
}
}  // namespace

TEST_CASE("mu anchors") {
  Mat3 m4 = mu(e(4));
  CHECK(m4.at(0, 0) == q(-1));
  CHECK(m4.at(1, 1) == q(1));
  CHECK(m4.at(2, 2) == q(0));
  CHECK(mu(KVector(1, EX)).is_zero());
  // trace(mu(x) mu(y)) = 2 g(x, y)
  std::mt19937 rng(1);
  for (int t = 0; t < 20; ++t) {
    KVector x = rnd_vec(rng), y = rnd_vec(rng);
    CHECK((mu(x) * mu(y)).trace() == q(2) * inner(x, y));
  }
}

TEST_CASE("mu_inv inverts mu") {
  Mat3 d(EX);
  Scalar ir3 = Scalar::one(EX) / r3();
  d.at(0, 0) = ir3;
  d.at(1, 1) = ir3;
  d.at(2, 2) = -(ir3 + ir3);
  CHECK(mu_inv(d) == e(1));
  CHECK(mu_inv(Mat3(EX)).is_zero());
  CHECK(mu_inv(mu(e(2)) + mu(e(3))) == e(2) + e(3));
  std::mt19937 rng(2);
  for (int t = 0; t < 100; ++t) {
    KVector x = rnd_vec(rng);
    CHECK(mu_inv(mu(x)) == x);
  }
  Mat3 bad(EX);
  bad.at(0, 1) = q(1);  // not symmetric
  CHECK_THROWS_AS(mu_inv(bad), precondition_error);
}

TEST_CASE("iota identity and frame action") {
  SO3Element id(Mat3::identity(EX), kZero);
  CHECK(iota(id) == Tensor2::identity(EX));
  // iota(h_phi) applied (index action) to the standard frame gives frame b;
  // at phi with (c, s) = (cos, sin): b2 = -s a3 + c a5
  Scalar c = q(1, 2), s = r3() * q(1, 2);  // phi = pi/3
  Frame b = iota_frame_action(h_phi(c, s), Frame::standard(EX));
  Scalar s2 = (c * s) * q(2), c2 = c * c - s * s;
  CHECK(b[1] == e(3) * (-s) + e(5) * c);
  CHECK(b[2] == e(2) * c2 + e(4) * s2);
  CHECK(b[0] == e(1) * q(-1, 2) + e(2) * (-r3() * q(1, 2) * s2) +
                    e(4) * (r3() * q(1, 2) * c2));
  CHECK(is_adapted(b, kZero));
}

TEST_CASE("upsilon cubic and trilinear") {
  CHECK(upsilon_cubic(e(1)) == q(-1));
  CHECK(upsilon_cubic(KVector(1, EX)) == q(0));
  CHECK(upsilon(e(1), e(1), e(1)) == q(-1));
  std::mt19937 rng(3);
  for (int t = 0; t < 100; ++t) {
    KVector x = rnd_vec(rng);
    // determinant oracle: Upsilon(x,x,x) = (3 sqrt3 / 2) det mu(x)
    CHECK(upsilon_cubic(x) == q(3, 2) * r3() * mu(x).det());
  }
  // full symmetry
  for (int t = 0; t < 10; ++t) {
    KVector x = rnd_vec(rng), y = rnd_vec(rng), z = rnd_vec(rng);
    Scalar v = upsilon(x, y, z);
    CHECK(upsilon(y, x, z) == v);
    CHECK(upsilon(z, y, x) == v);
    CHECK(upsilon(x, z, y) == v);
  }
  // trace-free operator
  for (int t = 0; t < 10; ++t)
    CHECK(upsilon_op(rnd_vec(rng)).trace() == q(0));
}

TEST_CASE("upsilon_op properties") {
  CHECK(upsilon_op(KVector(1, EX)).is_zero());
  CHECK(upsilon_op(e(1)).at(0, 0) == q(-1));
  std::mt19937 rng(4);
  for (int t = 0; t < 100; ++t) {
    KVector v = rnd_vec(rng);
    Tensor2 u = upsilon_op(v);
    CHECK(u.is_symmetric(kZero));
    // Upsilon_v^2(v) = g(v,v) v
    CHECK(u.apply(u.apply(v)) == v * inner(v, v));
  }
}

TEST_CASE("upsilon_hat eigen anchors") {
  CHECK(upsilon_hat(Tensor2::identity(EX)) ==
        Tensor2::identity(EX) * q(14));
  KappaTriple k = kappa_frame(Frame::standard(EX));
  for (int i = 0; i < 3; ++i) {
    Tensor2 w = Tensor2::from_bivector(k[i]);
    CHECK(upsilon_hat(w) == w * q(7));
  }
}

TEST_CASE("spectrum multiplicities are (3,7,1,5,9)") {
  const Component comps[] = {Component::L23, Component::L27, Component::S1,
                             Component::S5, Component::S9};
  for (Component c : comps) {
    auto p = projector_matrix(c, EX);
    CHECK(matrix_rank(p, kZero) == component_dimension(c));
  }
}

TEST_CASE("projector properties") {
  // S1 fixes g
  CHECK(project(Component::S1, Tensor2::identity(EX)) == Tensor2::identity(EX));
  // idempotent + mutually annihilating + sum to identity on a random tensor
  std::mt19937 rng(5);
  Tensor2 w(EX);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) w.at(i, j) = q(d(rng), 1 + ((i + j) % 2));
  const Component comps[] = {Component::L23, Component::L27, Component::S1,
                             Component::S5, Component::S9};
  Tensor2 acc(EX);
  for (Component c : comps) {
    Tensor2 pw = project(c, w);
    CHECK(project(c, pw) == pw);
    acc = acc + pw;
    for (Component c2 : comps) {
      if (c2 == c) continue;
      CHECK(project(c2, pw).is_zero());
    }
  }
  CHECK(acc == w);
  // L23 restricted to bivectors equals (1/5) sum <., k_i> k_i
  KappaTriple k = kappa_frame(Frame::standard(EX));
  for (int r = 0; r < 10; ++r) {
    KVector b(2, EX);
    b[r] = Scalar::one(EX);
    KVector want(2, EX);
    for (int i = 0; i < 3; ++i) want = want + k[i] * (inner(b, k[i]) * q(1, 5));
    CHECK(project_bivector(Component::L23, b) == want);
  }
}

TEST_CASE("kappa frame anchors") {
  KappaTriple k = kappa_frame(Frame::standard(EX));
  KVector want = wedge(e(1), e(5)) * r3() + wedge(e(2), e(3)) + wedge(e(4), e(5));
  CHECK(k.k1 == want);
  for (int i = 0; i < 3; ++i) CHECK(inner(k[i], k[i]) == q(5));
  // bracket relations [S_k1, S_k2] = -S_k3 and cyclic
  for (int i = 0; i < 3; ++i) {
    Tensor2 si = Tensor2::from_bivector(k[i]).transpose();
    Tensor2 sj = Tensor2::from_bivector(k[(i + 1) % 3]).transpose();
    Tensor2 sl = Tensor2::from_bivector(k[(i + 2) % 3]).transpose();
    CHECK(si.matmul(sj) - sj.matmul(si) == -sl);
  }
}

TEST_CASE("is_adapted") {
  CHECK(is_adapted(Frame::standard(EX), kZero));
  // swapping e1, e2 breaks the Upsilon table
  Frame swapped({e(2), e(1), e(3), e(4), e(5)});
  CHECK_FALSE(is_adapted(swapped, kZero));
  // non-orthonormal
  Frame stretched({e(1) * q(2), e(2), e(3), e(4), e(5)});
  CHECK_FALSE(is_adapted(stretched, kZero));
  // iota images of the standard frame stay adapted
  Scalar c = q(0), s = Scalar::one(EX);
  CHECK(is_adapted(iota_frame_action(h_phi(c, s), Frame::standard(EX)), kZero));
}

TEST_CASE("cross product in kappa coordinates") {
  KappaTriple k = kappa_frame(Frame::standard(EX));
  CHECK(cross_std(k.k1, k.k2) == k.k3);
  CHECK(cross_std(k.k2, k.k3) == k.k1);
  CHECK(cross_std(k.k1, k.k1).is_zero());
  CHECK(cross_std(k.k3, cross_std(k.k3, k.k1)) == -k.k1);
  // argument outside Lambda^2_3 is rejected
  CHECK_THROWS_AS(cross_std(wedge(e(1), e(2)), k.k1), precondition_error);
}

TEST_CASE("adapted_from_triple identity and rotations") {
  KappaTriple k = kappa_frame(Frame::standard(EX));
  Frame a = adapted_from_triple(k.k1, k.k2, k.k3, kZero);
  for (int i = 0; i < 5; ++i) CHECK(a[i] == e(i + 1));

  // (k(b)) input triple: (-s k1 - c k2, -k3, c k1 - s k2) at phi = pi/6
  Scalar c = r3() * q(1, 2), s = q(1, 2);
  KVector q1 = k.k1 * (-s) - k.k2 * c;
  KVector q2 = -k.k3;
  KVector q3 = k.k1 * c - k.k2 * s;
  Frame b = adapted_from_triple(q1, q2, q3, kZero);
  KappaTriple kb = kappa_frame(b);
  CHECK(kb.k1 == q1);
  CHECK(kb.k2 == q2);
  CHECK(kb.k3 == q3);
  CHECK(is_adapted(b, kZero));

  // cyclic permutation (k2, k3, k1)
  Frame f2 = adapted_from_triple(k.k2, k.k3, k.k1, kZero);
  KappaTriple k2 = kappa_frame(f2);
  CHECK(k2.k1 == k.k2);
  CHECK(k2.k2 == k.k3);
  CHECK(k2.k3 == k.k1);

  // preconditions
  CHECK_THROWS_AS(adapted_from_triple(k.k1, k.k2, -k.k3, kZero),
                  precondition_error);  // wrong orientation
  CHECK_THROWS_AS(adapted_from_triple(k.k1 * q(2), k.k2, k.k3, kZero),
                  precondition_error);  // wrong norm
  CHECK_THROWS_AS(adapted_from_triple(k.k1, k.k1, k.k3, kZero),
                  precondition_error);  // not orthogonal
}

TEST_CASE("adapted_from_triple float round trip") {
  // random float rotation of the standard triple, recovered to 1e-9
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> ang(0.0, 6.283);
  Mode FL = Mode::floating;
  Scalar tol = Scalar::floating(1e-9);
  for (int trial = 0; trial < 10; ++trial) {
    double a1 = ang(rng), a2 = ang(rng);
    Mat3 h1(FL), h2(FL);
    h1.at(0, 0) = Scalar::floating(-std::sin(a1));
    h1.at(0, 1) = Scalar::floating(std::cos(a1));
    h1.at(1, 2) = Scalar::floating(1.0);
    h1.at(2, 0) = Scalar::floating(std::cos(a1));
    h1.at(2, 1) = Scalar::floating(std::sin(a1));
    h2.at(0, 2) = Scalar::floating(1.0);
    h2.at(1, 0) = Scalar::floating(std::cos(a2));
    h2.at(1, 1) = Scalar::floating(std::sin(a2));
    h2.at(2, 0) = Scalar::floating(-std::sin(a2));
    h2.at(2, 1) = Scalar::floating(std::cos(a2));
    SO3Element h(h1.transpose() * h2, tol);
    Frame f = iota_frame_action(h, Frame::standard(FL));
    KappaTriple kf = kappa_frame(f);
    Frame rec = adapted_from_triple(kf.k1, kf.k2, kf.k3, tol);
    KappaTriple kr = kappa_frame(rec);
    for (int i = 0; i < 3; ++i)
      CHECK((kr[i] - kf[i]).max_abs().value() < 1e-9);
  }
}

TEST_CASE("upsilon invariance under iota (float)") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> ang(0.0, 6.283);
  Mode FL = Mode::floating;
  Scalar tol = Scalar::floating(1e-9);
  for (int t = 0; t < 10; ++t) {
    double a = ang(rng);
    Mat3 h(FL);
    h.at(0, 0) = Scalar::floating(std::cos(a));
    h.at(0, 1) = Scalar::floating(std::sin(a));
    h.at(1, 0) = Scalar::floating(-std::sin(a));
    h.at(1, 1) = Scalar::floating(std::cos(a));
    h.at(2, 2) = Scalar::floating(1.0);
    Tensor2 io = iota(SO3Element(h, tol));
    KVector x(1, FL);
    std::uniform_real_distribution<double> co(-2.0, 2.0);
    for (int i = 0; i < 5; ++i) x[i] = Scalar::floating(co(rng));
    KVector hx = io.transpose().apply(x);  // column action of iota
    CHECK(std::abs(upsilon_cubic(hx).value() - upsilon_cubic(x).value()) < 1e-9);
  }
}
