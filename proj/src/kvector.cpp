#include "so3five/kvector.hpp"

#include <algorithm>

namespace so3five {

namespace multi_index {

namespace {
std::vector<std::vector<std::vector<int>>> build_tables() {
  std::vector<std::vector<std::vector<int>>> tab(6);
  for (int k = 0; k <= 5; ++k) {
    std::vector<int> pick(k);
    // enumerate increasing k-tuples of {1..5} in lex order
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    if (k == 0) {
      tab[0].push_back({});
      continue;
    }
    while (true) {
      tab[k].push_back(idx);
      int p = k - 1;
      while (p >= 0 && idx[p] == 5 - (k - 1 - p)) --p;
      if (p < 0) break;
      ++idx[p];
      for (int j = p + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return tab;
}
const auto& tables() {
  static const auto tab = build_tables();
  return tab;
}
}  // namespace

int count(int k) { return static_cast<int>(tables()[k].size()); }

const std::vector<int>& tuple(int k, int i) { return tables()[k][i]; }

int position(int k, const std::vector<int>& t) {
  const auto& tab = tables()[k];
  auto it = std::lower_bound(tab.begin(), tab.end(), t);
  if (it == tab.end() || *it != t) return -1;
  return static_cast<int>(it - tab.begin());
}

int sort_sign(std::vector<int>& t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = t.size() - 1; j > i; --j)
      if (t[j - 1] > t[j]) {
        std::swap(t[j - 1], t[j]);
        sign = -sign;
      }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return 0;
  return sign;
}

}  // namespace multi_index

KVector::KVector(int k, Mode m) : k_(k), mode_(m) {
  if (k < 0 || k > 5) throw degree_error("k-vector degree out of range");
  comp_.assign(multi_index::count(k), Scalar::zero(m));
}

KVector KVector::basis(int k, const std::vector<int>& idx, Mode m) {
  KVector v(k, m);
  int pos = multi_index::position(k, idx);
  if (pos < 0) throw degree_error("not an increasing multi-index");
  v.comp_[pos] = Scalar::one(m);
  return v;
}

KVector KVector::e(int i, Mode m) { return basis(1, {i}, m); }

const Scalar& KVector::coeff(const std::vector<int>& t) const {
  int pos = multi_index::position(k_, t);
  if (pos < 0) throw degree_error("not an increasing multi-index");
  return comp_[pos];
}

void KVector::set_coeff(const std::vector<int>& t, const Scalar& v) {
  int pos = multi_index::position(k_, t);
  if (pos < 0) throw degree_error("not an increasing multi-index");
  if (v.mode() != mode_) throw mode_mismatch();
  comp_[pos] = v;
}

KVector KVector::operator+(const KVector& o) const {
  if (k_ != o.k_) throw degree_error("degree mismatch in +");
  if (mode_ != o.mode_) throw mode_mismatch();
  KVector r(k_, mode_);
  for (int i = 0; i < size(); ++i) r.comp_[i] = comp_[i] + o.comp_[i];
  return r;
}

KVector KVector::operator-(const KVector& o) const { return *this + (-o); }

KVector KVector::operator*(const Scalar& s) const {
  if (s.mode() != mode_) throw mode_mismatch();
  KVector r(k_, mode_);
  if (s.is_zero()) return r;
  for (int i = 0; i < size(); ++i) {
    if (comp_[i].is_zero()) continue;
    r.comp_[i] = comp_[i] * s;
  }
  return r;
}

KVector KVector::operator-() const {
  KVector r(k_, mode_);
  for (int i = 0; i < size(); ++i) r.comp_[i] = -comp_[i];
  return r;
}

bool KVector::operator==(const KVector& o) const {
  if (k_ != o.k_ || mode_ != o.mode_) return false;
  for (int i = 0; i < size(); ++i)
    if (comp_[i] != o.comp_[i]) return false;
  return true;
}

bool KVector::is_zero() const {
  for (const auto& c : comp_)
    if (!c.is_zero()) return false;
  return true;
}

Scalar KVector::max_abs() const {
  Scalar best = Scalar::zero(mode_);
  for (const auto& c : comp_) {
    Scalar a = c.abs();
    if ((a - best).sign() > 0) best = a;
  }
  return best;
}

KVector KVector::to_float() const {
  KVector r(k_, Mode::floating);
  for (int i = 0; i < size(); ++i) r.comp_[i] = comp_[i].to_float();
  return r;
}

KVector wedge(const KVector& u, const KVector& v) {
  if (u.degree() + v.degree() > 5) throw degree_error("wedge degree overflow");
  if (u.mode() != v.mode()) throw mode_mismatch();
  KVector out(u.degree() + v.degree(), u.mode());
  for (int i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    const auto& ti = multi_index::tuple(u.degree(), i);
    for (int j = 0; j < v.size(); ++j) {
      if (v[j].is_zero()) continue;
      const auto& tj = multi_index::tuple(v.degree(), j);
      std::vector<int> t(ti);
      t.insert(t.end(), tj.begin(), tj.end());
      int sg = multi_index::sort_sign(t);
      if (sg == 0) continue;
      int pos = multi_index::position(out.degree(), t);
      Scalar term = u[i] * v[j];
      out[pos] = sg > 0 ? out[pos] + term : out[pos] - term;
    }
  }
  return out;
}

KVector hodge_star(const KVector& w) {
  const int k = w.degree();
  KVector out(5 - k, w.mode());
  for (int i = 0; i < w.size(); ++i) {
    if (w[i].is_zero()) continue;
    const auto& t = multi_index::tuple(k, i);
    std::vector<int> comp;
    for (int m = 1; m <= 5; ++m)
      if (std::find(t.begin(), t.end(), m) == t.end()) comp.push_back(m);
    std::vector<int> joined(t);
    joined.insert(joined.end(), comp.begin(), comp.end());
    int sg = multi_index::sort_sign(joined);
    int pos = multi_index::position(5 - k, comp);
    out[pos] = sg > 0 ? out[pos] + w[i] : out[pos] - w[i];
  }
  return out;
}

KVector interior(const KVector& x, const KVector& w) {
  if (x.degree() != 1) throw degree_error("interior expects a 1-vector");
  if (w.degree() < 1) throw degree_error("interior expects degree >= 1");
  if (x.mode() != w.mode()) throw mode_mismatch();
  KVector out(w.degree() - 1, w.mode());
  for (int i = 0; i < 5; ++i) {
    if (x[i].is_zero()) continue;
    const int xi = i + 1;
    for (int j = 0; j < w.size(); ++j) {
      if (w[j].is_zero()) continue;
      const auto& t = multi_index::tuple(w.degree(), j);
      auto it = std::find(t.begin(), t.end(), xi);
      if (it == t.end()) continue;
      int m = static_cast<int>(it - t.begin());
      std::vector<int> rest;
      for (int q = 0; q < static_cast<int>(t.size()); ++q)
        if (q != m) rest.push_back(t[q]);
      int pos = multi_index::position(w.degree() - 1, rest);
      Scalar term = x[i] * w[j];
      out[pos] = (m % 2 == 0) ? out[pos] + term : out[pos] - term;
    }
  }
  return out;
}

Scalar inner(const KVector& u, const KVector& v) {
  if (u.degree() != v.degree()) throw degree_error("inner degree mismatch");
  if (u.mode() != v.mode()) throw mode_mismatch();
  Scalar acc = Scalar::zero(u.mode());
  for (int i = 0; i < u.size(); ++i) {
    if (u[i].is_zero() || v[i].is_zero()) continue;
    acc += u[i] * v[i];
  }
  return acc;
}

Tensor2::Tensor2(Mode m) : mode_(m) {
  for (auto& row : m_) row.fill(Scalar::zero(m));
}

Tensor2 Tensor2::identity(Mode m) {
  Tensor2 t(m);
  for (int i = 0; i < 5; ++i) t.m_[i][i] = Scalar::one(m);
  return t;
}

Tensor2 Tensor2::from_bivector(const KVector& w) {
  if (w.degree() != 2) throw degree_error("from_bivector expects degree 2");
  Tensor2 t(w.mode());
  for (int p = 0; p < 10; ++p) {
    const auto& idx = multi_index::tuple(2, p);
    t.m_[idx[0] - 1][idx[1] - 1] = w[p];
    t.m_[idx[1] - 1][idx[0] - 1] = -w[p];
  }
  return t;
}

KVector Tensor2::to_bivector() const {
  KVector w(2, mode_);
  for (int p = 0; p < 10; ++p) {
    const auto& idx = multi_index::tuple(2, p);
    w[p] = m_[idx[0] - 1][idx[1] - 1];
  }
  return w;
}

Tensor2 Tensor2::operator+(const Tensor2& o) const {
  Tensor2 r(mode_);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r.m_[i][j] = m_[i][j] + o.m_[i][j];
  return r;
}

Tensor2 Tensor2::operator-(const Tensor2& o) const { return *this + (-o); }

Tensor2 Tensor2::operator*(const Scalar& s) const {
  Tensor2 r(mode_);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r.m_[i][j] = m_[i][j] * s;
  return r;
}

Tensor2 Tensor2::operator-() const {
  Tensor2 r(mode_);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r.m_[i][j] = -m_[i][j];
  return r;
}

bool Tensor2::operator==(const Tensor2& o) const {
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (m_[i][j] != o.m_[i][j]) return false;
  return true;
}

Tensor2 Tensor2::transpose() const {
  Tensor2 r(mode_);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r.m_[i][j] = m_[j][i];
  return r;
}

Scalar Tensor2::trace() const {
  Scalar acc = Scalar::zero(mode_);
  for (int i = 0; i < 5; ++i) acc += m_[i][i];
  return acc;
}

Tensor2 Tensor2::matmul(const Tensor2& o) const {
  Tensor2 r(mode_);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) {
      if (m_[i][k].is_zero()) continue;
      for (int j = 0; j < 5; ++j) {
        if (o.m_[k][j].is_zero()) continue;
        r.m_[i][j] += m_[i][k] * o.m_[k][j];
      }
    }
  return r;
}

KVector Tensor2::apply(const KVector& x) const {
  if (x.degree() != 1) throw degree_error("Tensor2::apply expects a 1-vector");
  KVector out(1, mode_);
  for (int i = 0; i < 5; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < 5; ++j) {
      if (m_[i][j].is_zero()) continue;
      out[j] += x[i] * m_[i][j];
    }
  }
  return out;
}

Scalar Tensor2::inner_t2(const Tensor2& o) const {
  Scalar acc = Scalar::zero(mode_);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) acc += m_[i][j] * o.m_[i][j];
  return acc;
}

bool Tensor2::is_symmetric(const Scalar& tol) const {
  return (*this - transpose()).max_abs() - tol == Scalar::zero(mode_) ||
         ((*this - transpose()).max_abs() - tol).sign() <= 0;
}

bool Tensor2::is_skew(const Scalar& tol) const {
  return ((*this + transpose()).max_abs() - tol).sign() <= 0;
}

bool Tensor2::is_zero() const {
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (!m_[i][j].is_zero()) return false;
  return true;
}

Scalar Tensor2::max_abs() const {
  Scalar best = Scalar::zero(mode_);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      Scalar a = m_[i][j].abs();
      if ((a - best).sign() > 0) best = a;
    }
  return best;
}

Tensor2 Tensor2::symmetric_part() const {
  return (*this + transpose()) * Scalar::ratio(1, 2, mode_);
}

Tensor2 Tensor2::skew_part() const {
  return (*this - transpose()) * Scalar::ratio(1, 2, mode_);
}

Tensor2 Tensor2::to_float() const {
  Tensor2 r(Mode::floating);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r.at(i, j) = m_[i][j].to_float();
  return r;
}

Scalar form_value(const Tensor2& eta, const KVector& x, const KVector& y) {
  Scalar acc = Scalar::zero(eta.mode());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) acc += x[i] * eta.at(i, j) * y[j];
  return acc;
}

}  // namespace so3five
