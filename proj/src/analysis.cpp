#include "so3five/analysis.hpp"

#include <algorithm>

namespace so3five {

namespace {

Scalar S0(Mode m) { return Scalar::zero(m); }

const KappaTriple& std_triple(Mode m) { return standard_kappa(m); }

Scalar coord(const KVector& w, const KVector& kap) {
  return inner(w, kap) / Scalar::integer(5, w.mode());
}

std::array<Scalar, 3> cross3(const std::array<Scalar, 3>& a,
                             const std::array<Scalar, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

TorsionTensor::TorsionTensor(KVector form3) : t3_(std::move(form3)) {
  if (t3_.degree() != 3) throw degree_error("torsion must be a 3-vector");
}

void TorsionTensor::set(int i, int j, int k, const Scalar& v) {
  std::vector<int> t = {i, j, k};
  int sg = multi_index::sort_sign(t);
  if (sg == 0) throw precondition_error("torsion indices must be distinct");
  t3_.set_coeff(t, sg > 0 ? v : -v);
}

Scalar TorsionTensor::component(int i, int j, int k) const {
  std::vector<int> t = {i, j, k};
  int sg = multi_index::sort_sign(t);
  if (sg == 0) return Scalar::zero(mode());
  Scalar v = t3_.coeff(t);
  return sg > 0 ? v : -v;
}

KVector TorsionTensor::vector_of(const KVector& x, const KVector& y) const {
  Mode m = mode();
  KVector xy = wedge(x, y);
  KVector out(1, m);
  for (int z = 1; z <= 5; ++z)
    out[z - 1] = inner(t3_, wedge(xy, KVector::e(z, m)));
  return out;
}

CurvatureMap::CurvatureMap(Mode m)
    : mode_(m), k_(10, std::vector<Scalar>(10, Scalar::zero(m))) {}

CurvatureMap CurvatureMap::from_matrix(std::vector<std::vector<Scalar>> m,
                                       const Scalar& tol) {
  if (m.size() != 10) throw precondition_error("curvature matrix must be 10x10");
  for (const auto& row : m)
    if (row.size() != 10) throw precondition_error("curvature matrix must be 10x10");
  CurvatureMap k(m[0][0].mode());
  k.k_ = std::move(m);
  if ((k.range_residual() - tol).sign() > 0)
    throw precondition_error("curvature not Lambda^2_3-valued");
  return k;
}

CurvatureMap CurvatureMap::rank_one_kappa3(const Scalar& c) {
  Mode m = c.mode();
  const KVector& k3 = std_triple(m).k3;
  CurvatureMap k(m);
  for (int r = 0; r < 10; ++r)
    for (int col = 0; col < 10; ++col)
      k.k_[r][col] = c * k3[r] * k3[col];
  return k;
}

CurvatureMap CurvatureMap::projector_p(Mode m, const Scalar& scale) {
  CurvatureMap k(m);
  for (int r = 0; r < 10; ++r) {
    KVector b(2, m);
    b[r] = Scalar::one(m);
    KVector img = project_bivector(Component::L23, b) * scale;
    for (int c = 0; c < 10; ++c) k.k_[r][c] = img[c];
  }
  return k;
}

Scalar CurvatureMap::four_tensor(int i, int j, int k, int l) const {
  if (i == j || k == l) return Scalar::zero(mode_);
  int si = 1, sj = 1;
  if (i > j) {
    std::swap(i, j);
    si = -1;
  }
  if (k > l) {
    std::swap(k, l);
    sj = -1;
  }
  int r = multi_index::position(2, {i, j});
  int c = multi_index::position(2, {k, l});
  Scalar v = k_[r][c];
  return (si * sj) > 0 ? v : -v;
}

KVector CurvatureMap::apply(const KVector& w) const {
  if (w.degree() != 2) throw degree_error("curvature applies to bivectors");
  KVector out(2, mode_);
  for (int r = 0; r < 10; ++r) {
    if (w[r].is_zero()) continue;
    for (int c = 0; c < 10; ++c) out[c] += w[r] * k_[r][c];
  }
  return out;
}

Scalar CurvatureMap::range_residual() const {
  Scalar worst = Scalar::zero(mode_);
  for (int r = 0; r < 10; ++r) {
    KVector row(2, mode_);
    for (int c = 0; c < 10; ++c) row[c] = k_[r][c];
    KVector res = row - project_bivector(Component::L23, row);
    Scalar a = res.max_abs();
    if ((a - worst).sign() > 0) worst = a;
  }
  return worst;
}

CurvatureMap CurvatureMap::operator+(const CurvatureMap& o) const {
  CurvatureMap r(mode_);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) r.k_[i][j] = k_[i][j] + o.k_[i][j];
  return r;
}

CurvatureMap CurvatureMap::operator-(const CurvatureMap& o) const {
  CurvatureMap r(mode_);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) r.k_[i][j] = k_[i][j] - o.k_[i][j];
  return r;
}

CurvatureMap CurvatureMap::operator*(const Scalar& s) const {
  CurvatureMap r(mode_);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) r.k_[i][j] = k_[i][j] * s;
  return r;
}

Scalar CurvatureMap::max_abs() const {
  Scalar worst = Scalar::zero(mode_);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      Scalar a = k_[i][j].abs();
      if ((a - worst).sign() > 0) worst = a;
    }
  return worst;
}

bool CurvatureMap::operator==(const CurvatureMap& o) const {
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      if (k_[i][j] != o.k_[i][j]) return false;
  return true;
}

Tensor2 ricci(const CurvatureMap& k) {
  Mode m = k.mode();
  Tensor2 r(m);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      Scalar acc = Scalar::zero(m);
      for (int a = 1; a <= 5; ++a) acc += k.four_tensor(i, a, j, a);
      r.at(i - 1, j - 1) = acc;
    }
  return r;
}

KVector antisym(const CurvatureMap& k) {
  Mode m = k.mode();
  KVector out(4, m);
  static const int perms[24][4] = {
      {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
      {0, 3, 2, 1}, {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0},
      {1, 3, 0, 2}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3},
      {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0}, {3, 0, 1, 2}, {3, 0, 2, 1},
      {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
  for (int p = 0; p < 5; ++p) {
    const auto& t = multi_index::tuple(4, p);
    Scalar acc = Scalar::zero(m);
    for (const auto& perm : perms) {
      std::vector<int> srt = {perm[0], perm[1], perm[2], perm[3]};
      int sg = multi_index::sort_sign(srt);
      acc += Scalar::integer(sg, m) * k.four_tensor(t[perm[0]], t[perm[1]],
                                                    t[perm[2]], t[perm[3]]);
    }
    out[p] = acc / Scalar::integer(24, m);
  }
  return out;
}

Tensor2 eta_prime(const Tensor2& eta) {
  Mode m = eta.mode();
  const KappaTriple& kap = std_triple(m);
  Tensor2 out(m);
  for (int i = 0; i < 3; ++i) {
    Tensor2 f = Tensor2::from_bivector(kap[i]);
    out = out + f.matmul(eta).matmul(f.transpose());
  }
  return out;
}

namespace {

/// builds a curvature map from its action on basis bivectors
template <typename F>
CurvatureMap map_from_action(Mode m, F&& act) {
  CurvatureMap k(m);
  for (int r = 0; r < 10; ++r) {
    KVector b(2, m);
    b[r] = Scalar::one(m);
    KVector img = act(b, multi_index::tuple(2, r));
    for (int c = 0; c < 10; ++c) k.entry(r, c) = img[c];
  }
  return k;
}

}  // namespace

CurvatureMap k_nu(const KVector& nu) {
  if (nu.degree() != 4) throw degree_error("k_nu expects a 4-vector");
  Mode m = nu.mode();
  Scalar f = Scalar::ratio(10, 3, m);
  return map_from_action(m, [&](const KVector& b, const std::vector<int>&) {
    KVector nb(2, m);
    for (int c = 0; c < 10; ++c) {
      KVector bc(2, m);
      bc[c] = Scalar::one(m);
      nb[c] = inner(nu, wedge(b, bc));
    }
    return project_bivector(Component::L23, nb) * f;
  });
}

CurvatureMap k_minus(const Tensor2& eta) {
  Mode m = eta.mode();
  Scalar tol = m == Mode::exact ? S0(m) : Scalar::floating(1e-12);
  if (!eta.is_skew(tol)) throw precondition_error("k_minus expects a skew form");
  Tensor2 ep = eta_prime(eta);
  Scalar f = Scalar::ratio(5, 6, m);
  return map_from_action(m, [&](const KVector&, const std::vector<int>& t) {
    KVector x = KVector::e(t[0], m), y = KVector::e(t[1], m);
    KVector w = wedge(eta.apply(x), y) + wedge(x, eta.apply(y)) +
                wedge(ep.apply(x), y) + wedge(x, ep.apply(y));
    return project_bivector(Component::L23, w) * f;
  });
}

CurvatureMap k_plus(const Tensor2& eta) {
  Mode m = eta.mode();
  Scalar tol = m == Mode::exact ? S0(m) : Scalar::floating(1e-12);
  if (!eta.is_symmetric(tol))
    throw precondition_error("k_plus expects a symmetric form");
  if ((eta.trace().abs() - tol).sign() > 0)
    throw precondition_error("k_plus expects a traceless form");
  Tensor2 ep = eta_prime(eta);
  Scalar f = Scalar::ratio(5, 18, m);
  Scalar five = Scalar::integer(5, m);
  return map_from_action(m, [&](const KVector&, const std::vector<int>& t) {
    KVector x = KVector::e(t[0], m), y = KVector::e(t[1], m);
    KVector w = wedge(eta.apply(x), y) * five + wedge(x, eta.apply(y)) * five -
                wedge(ep.apply(x), y) - wedge(x, ep.apply(y));
    return project_bivector(Component::L23, w) * f;
  });
}

CurvatureDecomposition psi_decompose(const CurvatureMap& k, const Scalar& tol) {
  if ((k.range_residual() - tol).sign() > 0)
    throw precondition_error("curvature not Lambda^2_3-valued");
  Mode m = k.mode();
  Tensor2 rho = ricci(k);
  Tensor2 rho_minus = rho.skew_part();
  Tensor2 rho_plus = rho.symmetric_part();
  Scalar s = rho.trace();
  Tensor2 eta = rho_plus - Tensor2::identity(m) * (s / Scalar::integer(5, m));
  return {antisym(k), rho_minus, s, eta};
}

CurvatureMap psi_inverse(const CurvatureDecomposition& d) {
  Mode m = d.scalar_curv.mode();
  // the scalar slot: c * P has scalar curvature 6c, so c = s / 6
  Scalar c = d.scalar_curv / Scalar::integer(6, m);
  return k_nu(d.alternation) + k_minus(d.rho_minus) +
         CurvatureMap::projector_p(m, c) + k_plus(d.eta);
}

ConditionResult check_star_t(const TorsionTensor& t, const Scalar& tol) {
  KVector st = hodge_star(t.form());
  KVector res = st - project_bivector(Component::L23, st);
  Scalar r = res.max_abs();
  return {(r - tol).sign() <= 0, r};
}

namespace {
ConditionResult check_s9_of(const CurvatureDecomposition& d, Mode m,
                            const Scalar& tol);
ConditionResult check_l27_of(const CurvatureDecomposition& d, Mode m,
                             const Scalar& tol);
}  // namespace

ConditionResult check_s9(const CurvatureMap& k, const Scalar& tol) {
  return check_s9_of(psi_decompose(k, tol), k.mode(), tol);
}

ConditionResult check_l27(const CurvatureMap& k, const Scalar& tol) {
  return check_l27_of(psi_decompose(k, tol), k.mode(), tol);
}

namespace {

/// complete sigma (|sigma|^2 = 5, in Lambda^2_3) to an oriented orthogonal
/// triple (q1, q2, sigma) and recover the adapted frame with kappa3 = sigma
Frame frame_for_sigma(const KVector& sigma, const Scalar& tol) {
  Mode m = sigma.mode();
  const KappaTriple& kap = std_triple(m);
  std::array<Scalar, 3> y = {coord(sigma, kap.k1), coord(sigma, kap.k2),
                             coord(sigma, kap.k3)};
  std::array<Scalar, 3> t1{S0(m), S0(m), S0(m)};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i)
      t1[i] = (i == j ? Scalar::one(m) : S0(m)) - y[i] * y[j];
    Scalar n2 = t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2];
    if (!n2.is_zero() && (n2.abs() - tol).sign() > 0) {
      auto root = n2.sqrt_in_field();
      if (!root)
        throw precondition_error(
            "sigma completion needs a square root outside Q(sqrt2,sqrt3); "
            "use float mode");
      Scalar inv = Scalar::one(m) / *root;
      for (auto& c : t1) c = c * inv;
      break;
    }
    if (j == 2) throw precondition_error("degenerate sigma");
  }
  std::array<Scalar, 3> t2 = cross3(y, t1);
  KVector q1 = kap.k1 * t1[0] + kap.k2 * t1[1] + kap.k3 * t1[2];
  KVector q2 = kap.k1 * t2[0] + kap.k2 * t2[1] + kap.k3 * t2[2];
  return adapted_from_triple(q1, q2, sigma, tol);
}

}  // namespace

namespace {

Scalar q_reduced_on_frame(const KVector& a4, const Tensor2& eta, const Frame& a,
                          const KVector& x) {
  Mode m = x.mode();
  Scalar x2 = inner(x, a[1]);
  Scalar x4 = inner(x, a[3]);
  Scalar a1345 = inner(a4, wedge(wedge(a[0], a[2]), wedge(a[3], a[4])));
  Scalar a1235 = inner(a4, wedge(wedge(a[0], a[1]), wedge(a[2], a[4])));
  Scalar e12 = form_value(eta, a[0], a[1]);
  Scalar e14 = form_value(eta, a[0], a[3]);
  Scalar twelve = Scalar::integer(12, m), five = Scalar::integer(5, m);
  return -(twelve * a1345 + five * e12) * x2 - (twelve * a1235 + five * e14) * x4;
}

}  // namespace

Scalar q_reduced(const KVector& a4, const Tensor2& eta, const KVector& sigma,
                 const KVector& x, const Scalar& tol) {
  Mode m = sigma.mode();
  if (((inner(sigma, sigma) - Scalar::integer(5, m)).abs() - tol).sign() > 0)
    throw precondition_error("q_reduced needs |sigma|^2 = 5");
  Frame a = frame_for_sigma(sigma, tol);
  return q_reduced_on_frame(a4, eta, a, x);
}

Scalar q_raw(const KVector& a4, const Tensor2& eta, const KVector& s,
             const KVector& x, const Scalar& tol) {
  Mode m = s.mode();
  KVector xi = xi_of(s, tol);
  KVector px = phi_plus_extended(s, x, tol);
  KVector ixs = interior(x, s);
  Scalar n2 = inner(s, s);
  Scalar t1 = inner(a4, wedge(wedge(xi, px), s));
  Scalar t2 = inner(a4, wedge(wedge(xi, ixs), s)) * n2;
  Scalar gxx = inner(x, xi);
  Scalar exx = form_value(eta, xi, xi);
  Scalar exxi = form_value(eta, x, xi);
  KVector pix = phi_plus_extended(s, ixs, tol);
  Scalar ep = form_value(eta, pix, xi);
  Scalar twelve = Scalar::integer(12, m), five = Scalar::integer(5, m);
  return twelve * (t1 - t2) + five * (gxx * exx - exxi * inner(xi, xi) - ep);
}

QResult q_vanishes(const KVector& a4, const Tensor2& eta, const Scalar& tol) {
  Mode m = a4.mode();
  Scalar s9res = project(Component::S9, eta).max_abs();
  bool hypothesis_ok = (s9res - tol).sign() <= 0;
  const KappaTriple& kap = std_triple(m);
  Scalar h = Scalar::ratio(1, 2, m), hr3 = Scalar::ratio(1, 2, m) * Scalar::sqrt3(m);
  // the paper's distinguished slice bases per sigma = kappa_i
  struct Probe {
    const KVector* sigma;
    std::array<Scalar, 3> y;
    std::array<KVector, 2> x;
  };
  Scalar one = Scalar::one(m), zero = S0(m);
  const Probe probes[3] = {
      {&kap.k1,
       {one, zero, zero},
       {KVector::e(1, m) * hr3 + KVector::e(4, m) * h, KVector::e(5, m)}},
      {&kap.k2,
       {zero, one, zero},
       {KVector::e(1, m) * hr3 - KVector::e(4, m) * h, KVector::e(3, m)}},
      {&kap.k3,
       {zero, zero, one},
       {KVector::e(2, m), KVector::e(4, m)}},
  };
  Scalar worst = S0(m);
  std::optional<QWitness> witness;
  for (const auto& p : probes) {
    Frame a = frame_for_sigma(*p.sigma, tol);
    for (const KVector& x : p.x) {
      Scalar v = q_reduced_on_frame(a4, eta, a, x);
      if ((v.abs() - worst).sign() > 0) worst = v.abs();
      if (!witness && (v.abs() - tol).sign() > 0) witness = QWitness{p.y, x, v};
    }
  }
  return {(worst - tol).sign() <= 0, worst, hypothesis_ok, witness};
}

namespace {

/// per-(sigma, sign) data for the Nijenhuis evaluators
struct SigmaCtx {
  Mode m;
  const TwistorPoint* p;
  Tensor2 f;                     // column-action phi matrix
  std::array<KVector, 3> sxk;    // sigma x kappa_i (bivectors)
  std::array<Scalar, 3> yc;

  SigmaCtx(const TwistorPoint& pt, int sign)
      : m(pt.mode()), p(&pt), f(phi_matrix(pt.sigma(), sign)) {
    const KappaTriple& kap = pt.triple();
    yc = {pt.y()[0], pt.y()[1], pt.y()[2]};
    for (int i = 0; i < 3; ++i) {
      std::array<Scalar, 3> ei{S0(m), S0(m), S0(m)};
      ei[i] = Scalar::one(m);
      std::array<Scalar, 3> c = cross3(yc, ei);
      sxk[i] = kap.k1 * c[0] + kap.k2 * c[1] + kap.k3 * c[2];
    }
  }

  KVector phi(const KVector& x) const {
    KVector out(1, m);
    for (int a = 0; a < 5; ++a) {
      if (x[a].is_zero()) continue;
      for (int b = 0; b < 5; ++b) {
        if (f.at(b, a).is_zero()) continue;
        out[b] += f.at(b, a) * x[a];
      }
    }
    return out;
  }

  /// R(X,Y)sigma via (F), given K(X^Y)
  KVector r_sigma(const CurvatureMap& k, const KVector& x,
                  const KVector& y) const {
    KVector kxy = k.apply(wedge(x, y));
    const KappaTriple& kap = p->triple();
    KVector out(2, m);
    Scalar fifth = Scalar::ratio(1, 5, m);
    for (int i = 0; i < 3; ++i)
      out = out + kap[i] * (-inner(kxy, sxk[i]) * fifth);
    return out;
  }

  /// (-1)^n sigma x w for w in Lambda^2_3
  KVector jvert(int n, const KVector& w) const {
    const KappaTriple& kap = p->triple();
    Scalar fifth = Scalar::ratio(1, 5, m);
    std::array<Scalar, 3> wc = {inner(w, kap.k1) * fifth,
                                inner(w, kap.k2) * fifth,
                                inner(w, kap.k3) * fifth};
    std::array<Scalar, 3> c = cross3(yc, wc);
    KVector out = kap.k1 * c[0] + kap.k2 * c[1] + kap.k3 * c[2];
    return n % 2 == 1 ? -out : out;
  }
};

TangentPair nxy_eval(const SigmaCtx& ctx, int n, const TorsionTensor& t,
                     const CurvatureMap& k, const KVector& x, const KVector& y) {
  KVector px = ctx.phi(x), py = ctx.phi(y);
  KVector hor = t.vector_of(x, y) - t.vector_of(px, py) +
                ctx.phi(t.vector_of(px, y)) + ctx.phi(t.vector_of(x, py));
  KVector r1 = ctx.r_sigma(k, x, y);
  KVector r2 = ctx.r_sigma(k, px, py);
  KVector r34 = ctx.r_sigma(k, px, y) + ctx.r_sigma(k, x, py);
  KVector ver = -r1 + r2 - ctx.jvert(n, r34);
  return TangentPair(hor, ver);
}

}  // namespace

KVector curvature_vertical(const CurvatureMap& k, const KVector& x,
                           const KVector& y, const TwistorPoint& p) {
  return SigmaCtx(p, +1).r_sigma(k, x, y);
}

TangentPair nijenhuis_horizontal(int n, int sign, const TorsionTensor& t,
                                 const CurvatureMap& k, const TwistorPoint& p,
                                 const KVector& x, const KVector& y) {
  return nxy_eval(SigmaCtx(p, sign), n, t, k, x, y);
}

TangentPair nijenhuis_mixed(int n, int sign, const TwistorPoint& p,
                            const KVector& x, const KVector& vertical) {
  Mode m = p.mode();
  Scalar tol = m == Mode::exact ? S0(m) : Scalar::floating(1e-9);
  if ((inner(vertical, p.sigma()).abs() - tol).sign() > 0)
    throw precondition_error("vertical argument must be orthogonal to sigma");
  const KVector& xi = p.xi();
  KVector vxi = bivector_action(vertical, xi);
  KVector pvxi = phi_pm(p, sign, vxi);
  Scalar gx = inner(x, xi);
  Scalar gpx = inner(pvxi, x);
  // m1 = (-1)^{n+1}
  int m1 = (n % 2 == 1) ? 1 : -1;
  KVector hor(1, m);
  if (sign > 0) {
    // (1 - m1) [ g(X,xi) phi(V xi) - g(phi(V xi), X) xi ]
    Scalar c = Scalar::integer(1 - m1, m);
    hor = (pvxi * gx - xi * gpx) * c;
  } else {
    // -3(1+m1) g(X,xi) phi(V xi) + (3 m1 + 1) g(phi(V xi),X) xi
    //   + 2 phi(V X) - 2 (J^(n)_- V)(X)
    Scalar c1 = Scalar::integer(-3 * (1 + m1), m);
    Scalar c2 = Scalar::integer(3 * m1 + 1, m);
    KVector jv = cross(p.sigma(), vertical, p.triple(), tol);
    if (n % 2 == 1) jv = -jv;
    KVector vx = bivector_action(vertical, x);
    hor = pvxi * (c1 * gx) + xi * (c2 * gpx) +
          phi_pm(p, sign, vx) * Scalar::integer(2, m) -
          bivector_action(jv, x) * Scalar::integer(2, m);
  }
  return TangentPair(hor, KVector(2, m));
}

Scalar levi_form(int n, int sign, const TwistorPoint& p, const TorsionTensor& t,
                 const TangentPair& a, const TangentPair& b) {
  (void)n;  // the Levi form of the distribution does not depend on n
  Mode m = p.mode();
  Scalar tol = m == Mode::exact ? S0(m) : Scalar::floating(1e-9);
  const KVector& xi = p.xi();
  if ((inner(a.horizontal, xi).abs() - tol).sign() > 0 ||
      (inner(b.horizontal, xi).abs() - tol).sign() > 0)
    throw precondition_error("levi_form arguments must lie in the contact distribution");
  Scalar horhor = -inner(t.vector_of(a.horizontal, b.horizontal), xi);
  Scalar horver = inner(a.horizontal, phi_pm(p, sign, bivector_action(b.vertical, xi))) -
                  inner(b.horizontal, phi_pm(p, sign, bivector_action(a.vertical, xi)));
  return sign > 0 ? horhor + horver : horhor - horver;
}

std::vector<std::array<Scalar, 3>> probe_grid(Mode m) {
  std::vector<std::array<Scalar, 3>> g;
  Scalar one = Scalar::one(m), zero = Scalar::zero(m);
  Scalar ir2 = Scalar::one(m) / Scalar::sqrt2(m);
  Scalar ir3 = Scalar::one(m) / Scalar::sqrt3(m);
  g.push_back({one, zero, zero});
  g.push_back({zero, one, zero});
  g.push_back({zero, zero, one});
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : pairs)
    for (int sgn = 0; sgn < 2; ++sgn) {
      std::array<Scalar, 3> y = {zero, zero, zero};
      y[pr[0]] = ir2;
      y[pr[1]] = sgn == 0 ? ir2 : -ir2;
      g.push_back(y);
    }
  g.push_back({ir3, ir3, ir3});
  Scalar c35 = Scalar::ratio(3, 5, m), c45 = Scalar::ratio(4, 5, m);
  g.push_back({c35, c45, zero});
  g.push_back({zero, c35, c45});
  g.push_back({c45, zero, c35});
  return g;
}

namespace {

/// max residual of N^(1)_+ over the sigma grid and all basis pairs
Scalar normality_probe(const TorsionTensor& t, const CurvatureMap& k,
                       const Scalar& tol) {
  Mode m = k.mode();
  const KappaTriple& kap = std_triple(m);
  Scalar worst = Scalar::zero(m);
  for (const auto& y : probe_grid(m)) {
    TwistorPoint p(kap, y, tol);
    SigmaCtx ctx(p, +1);
    for (int a = 1; a <= 5; ++a)
      for (int b = a + 1; b <= 5; ++b) {
        TangentPair n1 =
            nxy_eval(ctx, 1, t, k, KVector::e(a, m), KVector::e(b, m));
        Scalar r = n1.horizontal.max_abs();
        if ((r - worst).sign() > 0) worst = r;
        Scalar rv = n1.vertical.max_abs();
        if ((rv - worst).sign() > 0) worst = rv;
      }
  }
  return worst;
}

ConditionResult check_s9_of(const CurvatureDecomposition& d, Mode m,
                            const Scalar& tol) {
  Scalar r = project(Component::S9, d.eta).max_abs();
  Scalar loose = tol * Scalar::integer(16, m);
  for (const Tensor2& b : s9_listed_basis(m)) {
    Scalar v = d.eta.inner_t2(b).abs();
    if ((v - r).sign() > 0 && (v - loose).sign() > 0) r = v;
  }
  return {(r - tol).sign() <= 0, r};
}

ConditionResult check_l27_of(const CurvatureDecomposition& d, Mode m,
                             const Scalar& tol) {
  KVector w = d.rho_minus.to_bivector();
  Scalar r = project_bivector(Component::L27, w).max_abs();
  Scalar loose = tol * Scalar::integer(16, m);
  for (const KVector& b : l27_ricci_list(m)) {
    Scalar v = inner(w, b).abs();
    if ((v - r).sign() > 0 && (v - loose).sign() > 0) r = v;
  }
  return {(r - tol).sign() <= 0, r};
}

}  // namespace

StructureReport is_normal(const TorsionTensor& t, const CurvatureMap& k,
                          const Scalar& tol) {
  Mode m = k.mode();
  CurvatureDecomposition d = psi_decompose(k, tol);  // validates the range
  StructureReport rep;
  rep.star_t_in_l23 = check_star_t(t, tol);
  rep.s9_vanishes = check_s9_of(d, m, tol);
  rep.l27_vanishes = check_l27_of(d, m, tol);
  rep.q_vanishes = q_vanishes(d.alternation, d.eta, tol);
  rep.normal = rep.star_t_in_l23.holds && rep.s9_vanishes.holds &&
               rep.l27_vanishes.holds && rep.q_vanishes.holds;
  rep.cr_integrable = rep.star_t_in_l23.holds && rep.s9_vanishes.holds;
  rep.chi_killing_t = chi_killing_t(k, tol);
  rep.probe_residual = normality_probe(t, k, tol);
  bool probe_zero = (rep.probe_residual - tol).sign() <= 0;
  rep.probe_agrees = probe_zero == rep.normal;
  return rep;
}

StructureReport is_cr_integrable(const TorsionTensor& t, const CurvatureMap& k,
                                 const Scalar& tol) {
  return is_normal(t, k, tol);
}

std::optional<Scalar> chi_killing_t(const CurvatureMap& k, const Scalar& tol) {
  Mode m = k.mode();
  CurvatureMap p = CurvatureMap::projector_p(m, Scalar::one(m));
  for (int r = 0; r < 10; ++r)
    for (int c = 0; c < 10; ++c) {
      if (p.entry(r, c).is_zero()) continue;
      if ((k.entry(r, c).abs() - tol).sign() <= 0) return std::nullopt;
      Scalar t = p.entry(r, c) / k.entry(r, c);
      if (t.sign() <= 0) return std::nullopt;
      if (((k * t - p).max_abs() - tol).sign() <= 0) return t;
      return std::nullopt;
    }
  return std::nullopt;
}

std::vector<Tensor2> s9_listed_basis(Mode m) {
  auto sym = [&](int i, int j) {
    Tensor2 t(m);
    t.at(i - 1, j - 1) += Scalar::one(m);
    t.at(j - 1, i - 1) += Scalar::one(m);
    return t;
  };
  Scalar r3 = Scalar::sqrt3(m);
  Scalar two = Scalar::integer(2, m), three = Scalar::integer(3, m),
         four = Scalar::integer(4, m);
  std::vector<Tensor2> out;
  out.push_back(sym(2, 4));
  out.push_back(sym(2, 2) - sym(4, 4));
  out.push_back(sym(1, 4) * (two * r3) - sym(1, 1) * three + sym(3, 3) * four -
                sym(4, 4));
  out.push_back(sym(1, 3) * r3 - sym(3, 4));
  out.push_back(sym(1, 4) * (two * r3) + sym(1, 1) * three - sym(5, 5) * four +
                sym(4, 4));
  out.push_back(sym(1, 5) * r3 + sym(4, 5));
  out.push_back(sym(1, 3) * r3 + sym(2, 5));
  out.push_back(sym(1, 5) * r3 + sym(2, 3));
  out.push_back(sym(1, 1) * three + sym(2, 2) - sym(3, 3) * two - sym(5, 5) * two);
  out.push_back(sym(1, 2) * r3 - sym(3, 5) * two);
  return out;
}

namespace {
KVector biv(Mode m, int i, int j) {
  return wedge(KVector::e(i, m), KVector::e(j, m));
}
}  // namespace

std::vector<KVector> l27_torsion_list(Mode m) {
  Scalar r3 = Scalar::sqrt3(m);
  Scalar two = Scalar::integer(2, m);
  return {biv(m, 2, 3) - biv(m, 4, 5),      biv(m, 2, 5) - biv(m, 3, 4),
          biv(m, 1, 2),                      biv(m, 2, 4) - biv(m, 3, 5) * two,
          biv(m, 1, 4),                      biv(m, 1, 3) - biv(m, 2, 5) * r3,
          biv(m, 1, 5) - biv(m, 2, 3) * r3};
}

std::vector<KVector> l27_ricci_list(Mode m) {
  Scalar r3 = Scalar::sqrt3(m);
  Scalar two = Scalar::integer(2, m);
  return {biv(m, 1, 2),                      biv(m, 2, 4) - biv(m, 3, 5) * two,
          biv(m, 1, 4),                      biv(m, 2, 3) - biv(m, 4, 5),
          biv(m, 2, 5) - biv(m, 3, 4),       biv(m, 1, 5) - biv(m, 4, 5) * r3,
          biv(m, 1, 3) - biv(m, 3, 4) * r3};
}

}  // namespace so3five
