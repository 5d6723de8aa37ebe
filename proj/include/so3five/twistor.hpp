#ifndef SO3FIVE_TWISTOR_HPP
#define SO3FIVE_TWISTOR_HPP

#include "so3five/representation.hpp"

namespace so3five {

/// Point of the twistor fibre: sigma = sum y_i kappa_i with sum y_i^2 = 1,
/// so |sigma|^2 = 5.  Carries its reference kappa triple.
class TwistorPoint {
 public:
  TwistorPoint(const KappaTriple& ref, std::array<Scalar, 3> y, const Scalar& tol);
  static TwistorPoint standard(std::array<Scalar, 3> y, const Scalar& tol);

  Mode mode() const { return y_[0].mode(); }
  const KappaTriple& triple() const { return ref_; }
  const std::array<Scalar, 3>& y() const { return y_; }
  const KVector& sigma() const { return sigma_; }
  const KVector& xi() const { return xi_; }

 private:
  KappaTriple ref_;
  std::array<Scalar, 3> y_;
  KVector sigma_;
  KVector xi_;
};

/// Tangent vector of the twistor space at sigma: horizontal part identified
/// with a tangent vector of the base, vertical part a bivector in Lambda^2_3
/// orthogonal to sigma.
struct TangentPair {
  KVector horizontal;  // degree 1
  KVector vertical;    // degree 2, in Lambda^2_3, g(vertical, sigma) = 0
  TangentPair(KVector hor, KVector ver);
  static TangentPair zero(Mode m);
};

/// xi_s = 1/4 * hodge(s ^ s); defined for every s in Lambda^2_3.
KVector xi_of(const KVector& s, const Scalar& tol);

/// components sigma_pm = 1/2 (sigma +- i_xi hodge(sigma)) for |sigma|^2 = 5
std::pair<KVector, KVector> sigma_pm(const TwistorPoint& p);

/// phi^sigma_pm as a column-action endomorphism matrix (g(phi X, Y) =
/// (2/(2 pm 1)) g(sigma_pm, X ^ Y)); sign is +1 or -1.
Tensor2 phi_matrix(const KVector& sigma_norm5, int sign);
KVector phi_pm(const TwistorPoint& p, int sign, const KVector& x);

/// extension of phi_+ off the sphere: (1/3) i_X( s |s|^2/5 + i_{xi_s} hodge(s) );
/// restricts to phi_pm(+) at |s|^2 = 5 and is cubic-homogeneous in s.
KVector phi_plus_extended(const KVector& s, const KVector& x, const Scalar& tol);

/// eq.-(f) matrix, entry (a,b) = g(phi E_a, E_b), from the coordinate formula
Tensor2 f_matrix(const TwistorPoint& p, int sign);

/// Phi^(n)_pm: vertical V -> (-1)^n sigma x V, horizontal X -> phi_pm X
TangentPair big_phi(int n, int sign, const TwistorPoint& p, const TangentPair& A);

/// h_t(X^h + V, Y^h + W) = g(X,Y) + t g(V,W); t > 0
Scalar metric_ht(const Scalar& t, const TangentPair& A, const TangentPair& B);

/// d eta_t per Cor d-eta; torsion passed as the 3-vector of the totally skew
/// tensor.  Independent of t and (on its domain) of n.
Scalar d_eta(const TwistorPoint& p, int sign, const TangentPair& A,
             const TangentPair& B, const KVector& torsion3);

/// Omega^(n)_pm t (A,B) = h_t(A, Phi B)
Scalar omega_form(int n, int sign, const Scalar& t, const TwistorPoint& p,
                  const TangentPair& A, const TangentPair& B);

/// checks (J^(n)_pm V)(xi) = pm (-1)^{n+1} J_pm(V(xi)) at the given inputs
bool comm_identity_check(const TwistorPoint& p, int n, int sign,
                         const KVector& vertical, const Scalar& tol);

/// S_w(x) for a bivector w: g(S_w(x), y) = g(w, x ^ y)
KVector bivector_action(const KVector& w, const KVector& x);

}  // namespace so3five

#endif
