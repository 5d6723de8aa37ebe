#ifndef SO3FIVE_ANALYSIS_HPP
#define SO3FIVE_ANALYSIS_HPP

#include <optional>

#include "so3five/twistor.hpp"

namespace so3five {

/// Totally skew torsion 3-tensor, stored on increasing indices.
class TorsionTensor {
 public:
  explicit TorsionTensor(Mode m) : t3_(3, m) {}
  explicit TorsionTensor(KVector form3);

  Mode mode() const { return t3_.mode(); }
  const KVector& form() const { return t3_; }
  void set(int i, int j, int k, const Scalar& v);
  Scalar component(int i, int j, int k) const;
  /// T(X,Y) as a vector: g(T(X,Y), Z) = T(X,Y,Z)
  KVector vector_of(const KVector& x, const KVector& y) const;

 private:
  KVector t3_;
};

/// Linear map Lambda^2 -> Lambda^2_3 stored as the 10x10 matrix
/// entry(r,c) = g(K(b_r), b_c) over the lexicographic bivector basis.
class CurvatureMap {
 public:
  explicit CurvatureMap(Mode m);
  /// validates the range condition (K takes values in Lambda^2_3)
  static CurvatureMap from_matrix(std::vector<std::vector<Scalar>> m,
                                  const Scalar& tol);
  /// c * <., kappa3> kappa3   (Example 2 has c = 2 t^2)
  static CurvatureMap rank_one_kappa3(const Scalar& c);
  /// scale * P, the orthogonal projection onto Lambda^2_3
  static CurvatureMap projector_p(Mode m, const Scalar& scale);

  Mode mode() const { return mode_; }
  const Scalar& entry(int r, int c) const { return k_[r][c]; }
  Scalar& entry(int r, int c) { return k_[r][c]; }
  /// K(X,Y,Z,U) on basis indices (1-based, general order)
  Scalar four_tensor(int i, int j, int k, int l) const;
  KVector apply(const KVector& w) const;
  Scalar range_residual() const;

  CurvatureMap operator+(const CurvatureMap& o) const;
  CurvatureMap operator-(const CurvatureMap& o) const;
  CurvatureMap operator*(const Scalar& s) const;
  Scalar max_abs() const;
  bool operator==(const CurvatureMap& o) const;

 private:
  Mode mode_;
  std::vector<std::vector<Scalar>> k_;
};

struct CurvatureDecomposition {
  KVector alternation;  // degree 4
  Tensor2 rho_minus;    // skew
  Scalar scalar_curv;
  Tensor2 eta;          // symmetric traceless (S5 + S9 parts)
};

Tensor2 ricci(const CurvatureMap& k);
KVector antisym(const CurvatureMap& k);
/// eta'(X,Z) = sum_i eta(kappa_i X, kappa_i Z), unnormalized kappa sum
Tensor2 eta_prime(const Tensor2& eta);
CurvatureMap k_nu(const KVector& nu);
CurvatureMap k_minus(const Tensor2& eta_skew);
CurvatureMap k_plus(const Tensor2& eta_sym_traceless);
CurvatureDecomposition psi_decompose(const CurvatureMap& k, const Scalar& tol);
CurvatureMap psi_inverse(const CurvatureDecomposition& d);

struct ConditionResult {
  bool holds;
  Scalar residual;
};

struct QWitness {
  std::array<Scalar, 3> sigma_y;  // kappa coordinates of sigma
  KVector x;
  Scalar value;
};

struct QResult {
  bool holds;
  Scalar residual;
  bool hypothesis_ok;  // eta has no S9 component (Q-reduction lemma hypothesis)
  std::optional<QWitness> witness;
};

/// the reduced (normative) Q evaluator; |sigma|^2 = 5
Scalar q_reduced(const KVector& a4, const Tensor2& eta, const KVector& sigma,
                 const KVector& x, const Scalar& tol);
/// literal eq.-(tenQ) evaluator with phi_plus_extended; any |sigma|
Scalar q_raw(const KVector& a4, const Tensor2& eta, const KVector& s,
             const KVector& x, const Scalar& tol);
QResult q_vanishes(const KVector& a4, const Tensor2& eta, const Scalar& tol);

ConditionResult check_star_t(const TorsionTensor& t, const Scalar& tol);
ConditionResult check_s9(const CurvatureMap& k, const Scalar& tol);
ConditionResult check_l27(const CurvatureMap& k, const Scalar& tol);

/// R(X,Y)sigma in Lambda^2_3 from the curvature operator, via
/// g(R(X,Y)sigma, tau) = -g(K(X^Y), sigma x tau)
KVector curvature_vertical(const CurvatureMap& k, const KVector& x,
                           const KVector& y, const TwistorPoint& p);

TangentPair nijenhuis_horizontal(int n, int sign, const TorsionTensor& t,
                                 const CurvatureMap& k, const TwistorPoint& p,
                                 const KVector& x, const KVector& y);
TangentPair nijenhuis_mixed(int n, int sign, const TwistorPoint& p,
                            const KVector& x, const KVector& vertical);
/// Levi form coefficient of xi^h; A, B in the contact distribution
Scalar levi_form(int n, int sign, const TwistorPoint& p, const TorsionTensor& t,
                 const TangentPair& a, const TangentPair& b);

struct StructureReport {
  ConditionResult star_t_in_l23;
  ConditionResult s9_vanishes;
  ConditionResult l27_vanishes;
  QResult q_vanishes;
  bool normal = false;
  bool cr_integrable = false;
  std::optional<Scalar> chi_killing_t;
  Scalar probe_residual;
  bool probe_agrees = false;
};

/// exact grid of twistor-sphere sample points used by the direct probe
std::vector<std::array<Scalar, 3>> probe_grid(Mode m);

StructureReport is_normal(const TorsionTensor& t, const CurvatureMap& k,
                          const Scalar& tol);
StructureReport is_cr_integrable(const TorsionTensor& t, const CurvatureMap& k,
                                 const Scalar& tol);
std::optional<Scalar> chi_killing_t(const CurvatureMap& k, const Scalar& tol);

/// the 10 symmetric tensors listed in the normality theorem's proof (span S9)
std::vector<Tensor2> s9_listed_basis(Mode m);
/// the two 7-element bivector lists from the proof (each spans Lambda^2_7)
std::vector<KVector> l27_torsion_list(Mode m);
std::vector<KVector> l27_ricci_list(Mode m);

}  // namespace so3five

#endif
