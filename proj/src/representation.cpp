#include "so3five/representation.hpp"

#include <mutex>

namespace so3five {

namespace {
Scalar S0(Mode m) { return Scalar::zero(m); }
Scalar S1s(Mode m) { return Scalar::one(m); }
Scalar half(Mode m) { return Scalar::ratio(1, 2, m); }
Scalar r3(Mode m) { return Scalar::sqrt3(m); }
}  // namespace

Mat3::Mat3(Mode m) : mode_(m) {
  for (auto& row : m_) row.fill(Scalar::zero(m));
}

Mat3 Mat3::identity(Mode m) {
  Mat3 r(m);
  for (int i = 0; i < 3; ++i) r.m_[i][i] = Scalar::one(m);
  return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r(mode_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[i][j] = m_[i][j] + o.m_[i][j];
  return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
  Mat3 r(mode_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[i][j] = m_[i][j] - o.m_[i][j];
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r(mode_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar acc = Scalar::zero(mode_);
      for (int k = 0; k < 3; ++k) acc += m_[i][k] * o.m_[k][j];
      r.m_[i][j] = acc;
    }
  return r;
}

Mat3 Mat3::operator*(const Scalar& s) const {
  Mat3 r(mode_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[i][j] = m_[i][j] * s;
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r(mode_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m_[i][j] = m_[j][i];
  return r;
}

Scalar Mat3::trace() const { return m_[0][0] + m_[1][1] + m_[2][2]; }

Scalar Mat3::det() const {
  return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
         m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
         m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
}

Scalar Mat3::max_abs() const {
  Scalar best = Scalar::zero(mode_);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar a = m_[i][j].abs();
      if ((a - best).sign() > 0) best = a;
    }
  return best;
}

bool Mat3::is_zero() const { return max_abs().is_zero(); }

Sym3Traceless::Sym3Traceless(const Mat3& mat, const Scalar& tol) : m(mat) {
  if (((mat - mat.transpose()).max_abs() - tol).sign() > 0)
    throw precondition_error("matrix is not symmetric");
  if ((mat.trace().abs() - tol).sign() > 0)
    throw precondition_error("matrix is not traceless");
}

SO3Element::SO3Element(const Mat3& mat, const Scalar& tol) : h(mat) {
  Mat3 g = mat.transpose() * mat;
  if (((g - Mat3::identity(mat.mode())).max_abs() - tol).sign() > 0)
    throw precondition_error("matrix is not orthogonal");
  if (((mat.det() - Scalar::one(mat.mode())).abs() - tol).sign() > 0)
    throw precondition_error("matrix has det != 1");
}

Frame Frame::standard(Mode m) {
  return Frame({KVector::e(1, m), KVector::e(2, m), KVector::e(3, m),
                KVector::e(4, m), KVector::e(5, m)});
}

Frame::Frame(std::array<KVector, 5> vectors) : v_(std::move(vectors)) {
  for (const auto& v : v_) {
    if (v.degree() != 1) throw degree_error("frame entries must be 1-vectors");
    if (v.mode() != v_[0].mode()) throw mode_mismatch();
  }
}

bool Frame::orthonormal(const Scalar& tol) const {
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      Scalar want = i == j ? Scalar::one(mode()) : Scalar::zero(mode());
      if (((inner(v_[i], v_[j]) - want).abs() - tol).sign() > 0) return false;
    }
  return true;
}

Scalar Frame::det() const {
  // 5x5 determinant by Gaussian elimination (exact division is fine)
  std::array<std::array<Scalar, 5>, 5> a;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a[i][j] = v_[j][i];
  Scalar d = Scalar::one(mode());
  for (int col = 0; col < 5; ++col) {
    int piv = -1;
    for (int r = col; r < 5; ++r)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Scalar::zero(mode());
    if (piv != col) {
      std::swap(a[piv], a[col]);
      d = -d;
    }
    d = d * a[col][col];
    Scalar inv = Scalar::one(mode()) / a[col][col];
    for (int r = col + 1; r < 5; ++r) {
      Scalar f = a[r][col] * inv;
      for (int c = col; c < 5; ++c) a[r][c] = a[r][c] - f * a[col][c];
    }
  }
  return d;
}

bool Frame::oriented(const Scalar& tol) const {
  return ((det() - Scalar::one(mode())).abs() - tol).sign() <= 0;
}

Mat3 mu(const KVector& x) {
  if (x.degree() != 1) throw degree_error("mu expects a 1-vector");
  Mode m = x.mode();
  Scalar x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
  Scalar t = x1 / r3(m);
  Mat3 r(m);
  r.at(0, 0) = t - x4;
  r.at(0, 1) = x2;
  r.at(0, 2) = x3;
  r.at(1, 0) = x2;
  r.at(1, 1) = t + x4;
  r.at(1, 2) = x5;
  r.at(2, 0) = x3;
  r.at(2, 1) = x5;
  r.at(2, 2) = -(t + t);
  return r;
}

KVector mu_inv(const Mat3& m) {
  Mode md = m.mode();
  Scalar tol = md == Mode::exact ? Scalar::zero(md) : Scalar::floating(1e-12);
  Sym3Traceless check(m, tol);
  (void)check;
  // x_i = (1/2) trace(m * mu(e_i))
  KVector out(1, md);
  for (int i = 1; i <= 5; ++i) {
    Mat3 base = mu(KVector::e(i, md));
    out[i - 1] = (m * base).trace() * half(md);
  }
  return out;
}

Tensor2 iota(const SO3Element& h) {
  Mode m = h.h.mode();
  Tensor2 out(m);
  for (int j = 1; j <= 5; ++j) {
    KVector col = mu_inv(h.h * mu(KVector::e(j, m)) * h.h.transpose());
    for (int i = 0; i < 5; ++i) out.at(i, j - 1) = col[i];
  }
  return out;
}

Frame iota_frame_action(const SO3Element& h, const Frame& f) {
  Tensor2 io = iota(h);
  std::array<KVector, 5> out{KVector(1, f.mode()), KVector(1, f.mode()),
                             KVector(1, f.mode()), KVector(1, f.mode()),
                             KVector(1, f.mode())};
  for (int l = 0; l < 5; ++l) {
    KVector acc(1, f.mode());
    for (int m2 = 0; m2 < 5; ++m2) acc = acc + f[m2] * io.at(l, m2);
    out[l] = acc;
  }
  return Frame(out);
}

Scalar upsilon_cubic(const KVector& x) {
  if (x.degree() != 1) throw degree_error("upsilon expects 1-vectors");
  Mode m = x.mode();
  Scalar x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4];
  Scalar six = Scalar::integer(6, m), two = Scalar::integer(2, m),
         three = Scalar::integer(3, m);
  Scalar t1 = half(m) * x1 *
              (six * x2 * x2 + six * x4 * x4 - two * x1 * x1 -
               three * x3 * x3 - three * x5 * x5);
  Scalar t2 = Scalar::ratio(3, 2, m) * r3(m) * x4 * (x5 * x5 - x3 * x3);
  Scalar t3 = three * r3(m) * x2 * x3 * x5;
  return t1 + t2 + t3;
}

Scalar upsilon(const KVector& x, const KVector& y, const KVector& z) {
  // polarization by inclusion-exclusion
  Scalar acc = upsilon_cubic(x + y + z) - upsilon_cubic(x + y) -
               upsilon_cubic(y + z) - upsilon_cubic(x + z) + upsilon_cubic(x) +
               upsilon_cubic(y) + upsilon_cubic(z);
  return acc / Scalar::integer(6, x.mode());
}

namespace {

const std::array<Tensor2, 5>& upsilon_basis_exact() {
  static std::once_flag flag;
  static std::array<Tensor2, 5>* ops = nullptr;
  std::call_once(flag, [] {
    ops = new std::array<Tensor2, 5>();
    for (int j = 0; j < 5; ++j) {
      Tensor2 u(Mode::exact);
      for (int a = 1; a <= 5; ++a)
        for (int b = a; b <= 5; ++b) {
          Scalar v = upsilon(KVector::e(j + 1, Mode::exact),
                             KVector::e(a, Mode::exact),
                             KVector::e(b, Mode::exact));
          u.at(a - 1, b - 1) = v;
          u.at(b - 1, a - 1) = v;
        }
      (*ops)[j] = u;
    }
  });
  return *ops;
}

Tensor2 upsilon_basis(int j, Mode m) {
  const Tensor2& ex = upsilon_basis_exact()[j];
  return m == Mode::exact ? ex : ex.to_float();
}

}  // namespace

Tensor2 upsilon_op(const KVector& v) {
  Mode m = v.mode();
  Tensor2 acc(m);
  for (int j = 0; j < 5; ++j) acc = acc + upsilon_basis(j, m) * v[j];
  return acc;
}

Tensor2 upsilon_hat(const Tensor2& w) {
  Mode m = w.mode();
  // E = 4 sum_j U_{w(e_j)} U_{e_j}  (column action); W(e_j) is row j of w.
  Tensor2 endo(m);
  for (int j = 0; j < 5; ++j) {
    KVector wj(1, m);
    for (int l = 0; l < 5; ++l) wj[l] = w.at(j, l);
    Tensor2 uw = upsilon_op(wj);
    endo = endo + uw.matmul(upsilon_basis(j, m));
  }
  endo = endo * Scalar::integer(4, m);
  // endomorphism (column action) -> Tensor2 pairing convention is transpose
  return endo.transpose();
}

int component_eigenvalue(Component c) {
  switch (c) {
    case Component::L23: return 7;
    case Component::L27: return -8;
    case Component::S1: return 14;
    case Component::S5: return -3;
    case Component::S9: return 4;
  }
  return 0;
}

int component_dimension(Component c) {
  switch (c) {
    case Component::L23: return 3;
    case Component::L27: return 7;
    case Component::S1: return 1;
    case Component::S5: return 5;
    case Component::S9: return 9;
  }
  return 0;
}

Tensor2 project(Component c, const Tensor2& w) {
  Mode m = w.mode();
  const int eigs[5] = {7, -8, 14, -3, 4};
  const int lam = component_eigenvalue(c);
  Tensor2 acc = w;
  for (int mu_ : eigs) {
    if (mu_ == lam) continue;
    Scalar denom = Scalar::integer(lam - mu_, m);
    acc = (upsilon_hat(acc) - acc * Scalar::integer(mu_, m)) *
          (Scalar::one(m) / denom);
  }
  return acc;
}

namespace {

/// unvalidated kappa basis of a frame (callers guarantee adaptedness)
KappaTriple kappa_of(const std::array<const KVector*, 5>& a) {
  Mode m = a[0]->mode();
  Scalar s3 = r3(m);
  KVector k1 = wedge(*a[0], *a[4]) * s3 + wedge(*a[1], *a[2]) + wedge(*a[3], *a[4]);
  KVector k2 = wedge(*a[0], *a[2]) * s3 + wedge(*a[1], *a[4]) + wedge(*a[2], *a[3]);
  KVector k3 = wedge(*a[1], *a[3]) * Scalar::integer(2, m) + wedge(*a[2], *a[4]);
  return {k1, k2, k3};
}

const KappaTriple& std_kappa(Mode m) {
  auto build = [](Mode mm) {
    std::array<KVector, 5> e = {KVector::e(1, mm), KVector::e(2, mm),
                                KVector::e(3, mm), KVector::e(4, mm),
                                KVector::e(5, mm)};
    return kappa_of({&e[0], &e[1], &e[2], &e[3], &e[4]});
  };
  static const KappaTriple ex = build(Mode::exact);
  static const KappaTriple fl = build(Mode::floating);
  return m == Mode::exact ? ex : fl;
}

}  // namespace

const KappaTriple& standard_kappa(Mode m) { return std_kappa(m); }

KVector project_bivector(Component c, const KVector& w) {
  if (w.degree() == 2 && (c == Component::L23 || c == Component::L27)) {
    // on bivectors the Lagrange projector reduces to (1/5) sum <., k_i> k_i
    const KappaTriple& k = std_kappa(w.mode());
    Scalar fifth = Scalar::ratio(1, 5, w.mode());
    KVector p(2, w.mode());
    for (int i = 0; i < 3; ++i) p = p + k[i] * (inner(w, k[i]) * fifth);
    return c == Component::L23 ? p : w - p;
  }
  return project(c, Tensor2::from_bivector(w)).to_bivector();
}

KappaTriple kappa_frame(const Frame& a) {
  Mode m = a.mode();
  Scalar tol = m == Mode::exact ? Scalar::zero(m) : Scalar::floating(1e-9);
  if (!is_adapted(a, tol)) throw precondition_error("frame is not adapted");
  KVector k1 = wedge(a[0], a[4]) * r3(m) + wedge(a[1], a[2]) + wedge(a[3], a[4]);
  KVector k2 = wedge(a[0], a[2]) * r3(m) + wedge(a[1], a[4]) + wedge(a[2], a[3]);
  KVector k3 = wedge(a[1], a[3]) * Scalar::integer(2, m) + wedge(a[2], a[4]);
  return {k1, k2, k3};
}

bool is_adapted(const Frame& f, const Scalar& tol) {
  if (!f.orthonormal(tol) || !f.oriented(tol)) return false;
  Mode m = f.mode();
  for (int i = 1; i <= 5; ++i)
    for (int j = i; j <= 5; ++j)
      for (int k = j; k <= 5; ++k) {
        Scalar want = upsilon(KVector::e(i, m), KVector::e(j, m), KVector::e(k, m));
        Scalar got = upsilon(f[i - 1], f[j - 1], f[k - 1]);
        if (((got - want).abs() - tol).sign() > 0) return false;
      }
  return true;
}

KVector cross(const KVector& s, const KVector& t, const KappaTriple& basis,
              const Scalar& tol) {
  Mode m = s.mode();
  Scalar fifth = Scalar::ratio(1, 5, m);
  Scalar sc[3], tc[3];
  KVector srec(2, m), trec(2, m);
  for (int i = 0; i < 3; ++i) {
    sc[i] = inner(s, basis[i]) * fifth;
    tc[i] = inner(t, basis[i]) * fifth;
    srec = srec + basis[i] * sc[i];
    trec = trec + basis[i] * tc[i];
  }
  if (((s - srec).max_abs() - tol).sign() > 0 ||
      ((t - trec).max_abs() - tol).sign() > 0)
    throw precondition_error("cross arguments must lie in Lambda^2_3");
  Scalar c0 = sc[1] * tc[2] - sc[2] * tc[1];
  Scalar c1 = sc[2] * tc[0] - sc[0] * tc[2];
  Scalar c2 = sc[0] * tc[1] - sc[1] * tc[0];
  return basis[0] * c0 + basis[1] * c1 + basis[2] * c2;
}

KVector cross_std(const KVector& s, const KVector& t) {
  Mode m = s.mode();
  Scalar tol = m == Mode::exact ? Scalar::zero(m) : Scalar::floating(1e-9);
  return cross(s, t, std_kappa(m), tol);
}

namespace {

std::array<KVector, 5> frame_b_step(const std::array<KVector, 5>& a,
                                    const Scalar& c, const Scalar& s) {
  Mode m = c.mode();
  Scalar c2 = c * c - s * s, s2 = (c * s) + (c * s);
  Scalar h = half(m), hr3 = half(m) * r3(m);
  return {a[0] * (-h) - a[1] * (hr3 * s2) + a[3] * (hr3 * c2),
          a[2] * (-s) + a[4] * c,
          a[1] * c2 + a[3] * s2,
          a[0] * (-hr3) + a[1] * (h * s2) - a[3] * (h * c2),
          a[2] * c + a[4] * s};
}

std::array<KVector, 5> frame_c_step(const std::array<KVector, 5>& b,
                                    const Scalar& c, const Scalar& s) {
  Mode m = c.mode();
  Scalar c2 = c * c - s * s, s2 = (c * s) + (c * s);
  Scalar h = half(m), hr3 = half(m) * r3(m);
  return {b[0] * (-h) + b[1] * (hr3 * s2) - b[3] * (hr3 * c2),
          b[2] * c + b[4] * s,
          b[2] * (-s) + b[4] * c,
          b[0] * hr3 + b[1] * (h * s2) - b[3] * (h * c2),
          b[1] * c2 + b[3] * s2};
}

std::array<KVector, 5> frame_ap_step(const std::array<KVector, 5>& cc,
                                     const Scalar& c, const Scalar& s) {
  Scalar c2 = c * c - s * s, s2 = (c * s) + (c * s);
  return {cc[0],
          cc[1] * c2 + cc[3] * s2,
          cc[2] * c + cc[4] * s,
          cc[1] * (-s2) + cc[3] * c2,
          cc[2] * (-s) + cc[4] * c};
}

}  // namespace

Frame adapted_from_triple(const KVector& q1, const KVector& q2,
                          const KVector& q3, const Scalar& tol) {
  Mode m = q1.mode();
  const KVector* qs[3] = {&q1, &q2, &q3};
  const KappaTriple& std_basis = std_kappa(m);
  Scalar five = Scalar::integer(5, m);
  for (int i = 0; i < 3; ++i) {
    if (((inner(*qs[i], *qs[i]) - five).abs() - tol).sign() > 0)
      throw precondition_error("triple entry has squared norm != 5");
    for (int j = i + 1; j < 3; ++j)
      if ((inner(*qs[i], *qs[j]).abs() - tol).sign() > 0)
        throw precondition_error("triple entries are not orthogonal");
    KVector res = *qs[i] - project_bivector(Component::L23, *qs[i]);
    if ((res.max_abs() - tol).sign() > 0)
      throw precondition_error("triple entry is not in Lambda^2_3");
  }
  // kappa-coordinate matrix M[i][j] = g(q_j, kappa_i)/5
  Scalar fifth = Scalar::ratio(1, 5, m);
  Mat3 M(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      M.at(i, j) = inner(*qs[j], std_basis[i]) * fifth;
  if (((M.det() - Scalar::one(m)).abs() - tol).sign() > 0)
    throw precondition_error("triple has the wrong orientation");

  Scalar one = Scalar::one(m);
  Scalar ct = M.at(2, 2);
  Scalar st2 = one - ct * ct;
  Scalar cf, sf, cp, sp, st;
  bool degenerate = m == Mode::exact ? st2.is_zero()
                                     : (st2.abs() - tol).sign() <= 0;
  if (degenerate) {
    st = Scalar::zero(m);
    cp = one;
    sp = Scalar::zero(m);
    bool north = m == Mode::exact ? (ct - one).is_zero()
                                  : ((ct - one).abs() - tol).sign() <= 0;
    cf = M.at(0, 0);
    sf = north ? M.at(0, 1) : -M.at(0, 1);
    ct = north ? one : -one;
  } else {
    auto root = st2.sqrt_in_field();
    if (!root)
      throw precondition_error(
          "adapted frame recovery needs a square root outside Q(sqrt2,sqrt3); "
          "use float mode");
    st = *root;
    sf = M.at(0, 2) / st;
    cf = M.at(1, 2) / st;
    sp = M.at(2, 0) / st;
    cp = -M.at(2, 1) / st;
  }
  std::array<KVector, 5> e = {KVector::e(1, m), KVector::e(2, m),
                              KVector::e(3, m), KVector::e(4, m),
                              KVector::e(5, m)};
  auto fr = frame_ap_step(frame_c_step(frame_b_step(e, cf, sf), ct, st), cp, sp);
  Frame out(fr);
  KappaTriple k = kappa_of({&out[0], &out[1], &out[2], &out[3], &out[4]});
  for (int i = 0; i < 3; ++i)
    if (((k[i] - *qs[i]).max_abs() - tol).sign() > 0)
      throw precondition_error("adapted frame recovery failed verification");
  return out;
}

int matrix_rank(std::vector<std::vector<Scalar>> a, const Scalar& tol) {
  if (a.empty()) return 0;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if ((a[r][col].abs() - tol).sign() > 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    Scalar inv = Scalar::one(a[rank][col].mode()) / a[rank][col];
    for (int r = rank + 1; r < rows; ++r) {
      Scalar f = a[r][col] * inv;
      if (f.is_zero()) continue;
      for (int c = col; c < cols; ++c) a[r][c] = a[r][c] - f * a[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Scalar>> upsilon_hat_matrix(Mode m) {
  std::vector<std::vector<Scalar>> big(25, std::vector<Scalar>(25, Scalar::zero(m)));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      Tensor2 basis(m);
      basis.at(i, j) = Scalar::one(m);
      Tensor2 img = upsilon_hat(basis);
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) big[r * 5 + c][i * 5 + j] = img.at(r, c);
    }
  return big;
}

std::vector<std::vector<Scalar>> projector_matrix(Component c, Mode m) {
  std::vector<std::vector<Scalar>> big(25, std::vector<Scalar>(25, Scalar::zero(m)));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      Tensor2 basis(m);
      basis.at(i, j) = Scalar::one(m);
      Tensor2 img = project(c, basis);
      for (int r = 0; r < 5; ++r)
        for (int cc = 0; cc < 5; ++cc) big[r * 5 + cc][i * 5 + j] = img.at(r, cc);
    }
  return big;
}

}  // namespace so3five
