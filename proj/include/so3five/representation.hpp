#ifndef SO3FIVE_REPRESENTATION_HPP
#define SO3FIVE_REPRESENTATION_HPP

#include <array>
#include <vector>

#include "so3five/kvector.hpp"

namespace so3five {

struct precondition_error : std::invalid_argument {
  explicit precondition_error(const std::string& what)
      : std::invalid_argument(what) {}
};

/// 3x3 scalar matrix helper (mu images, SO(3) elements, kappa coordinates).
class Mat3 {
 public:
  Mat3() : Mat3(Mode::exact) {}
  explicit Mat3(Mode m);
  static Mat3 identity(Mode m);

  Mode mode() const { return mode_; }
  const Scalar& at(int i, int j) const { return m_[i][j]; }
  Scalar& at(int i, int j) { return m_[i][j]; }

  Mat3 operator+(const Mat3& o) const;
  Mat3 operator-(const Mat3& o) const;
  Mat3 operator*(const Mat3& o) const;
  Mat3 operator*(const Scalar& s) const;
  Mat3 transpose() const;
  Scalar trace() const;
  Scalar det() const;
  Scalar max_abs() const;
  bool is_zero() const;

 private:
  Mode mode_;
  std::array<std::array<Scalar, 3>, 3> m_;
};

/// symmetric traceless 3x3 (validated)
struct Sym3Traceless {
  Mat3 m;
  explicit Sym3Traceless(const Mat3& mat, const Scalar& tol);
};

/// h in SO(3) (validated: h^T h = I, det h = 1)
struct SO3Element {
  Mat3 h;
  explicit SO3Element(const Mat3& mat, const Scalar& tol);
};

/// Ordered 5-tuple of 1-vectors with cached orthonormal/oriented status.
class Frame {
 public:
  static Frame standard(Mode m);
  explicit Frame(std::array<KVector, 5> vectors);

  const KVector& operator[](int i) const { return v_[i]; }  // 0-based
  Mode mode() const { return v_[0].mode(); }

  bool orthonormal(const Scalar& tol) const;
  bool oriented(const Scalar& tol) const;  // det = +1
  Scalar det() const;

 private:
  std::array<KVector, 5> v_;
};

struct KappaTriple {
  KVector k1, k2, k3;
  const KVector& operator[](int i) const { return i == 0 ? k1 : (i == 1 ? k2 : k3); }
};

// --- the mu isomorphism and the invariant cubic ---

Mat3 mu(const KVector& x);
KVector mu_inv(const Mat3& m);
/// 5x5 matrix of the representation rho(h) x = mu^{-1}(h mu(x) h^T);
/// column j is rho(h) e_j.  Group homomorphism into SO(5).
Tensor2 iota(const SO3Element& h);
/// frame transformation of eq. (b)-style index action: out_l = sum_m iota(h)_{lm} in_m
Frame iota_frame_action(const SO3Element& h, const Frame& f);

Scalar upsilon_cubic(const KVector& x);
Scalar upsilon(const KVector& x, const KVector& y, const KVector& z);
/// symmetric operator Upsilon_v as a Tensor2 form matrix
Tensor2 upsilon_op(const KVector& v);
/// \hat Upsilon on (x)^2 R^5, Tensor2 in/out
Tensor2 upsilon_hat(const Tensor2& w);

enum class Component { L23, L27, S1, S5, S9 };
int component_eigenvalue(Component c);  // 7, -8, 14, -3, 4
int component_dimension(Component c);   // 3, 7, 1, 5, 9

/// orthogonal eigenprojector via the Lagrange polynomial in upsilon_hat
Tensor2 project(Component c, const Tensor2& w);
/// convenience: projection of a bivector (skew part of (x)^2)
KVector project_bivector(Component c, const KVector& w);

/// kappa basis of an adapted frame, eq. (kappa)
KappaTriple kappa_frame(const Frame& a);
/// cached kappa triple of the standard frame
const KappaTriple& standard_kappa(Mode m);
bool is_adapted(const Frame& f, const Scalar& tol);

/// cross product in kappa coordinates: (s x t)_i = eps_{ijk} s_j t_k where
/// s = sum s_i kappa_i.  Both arguments must lie in Lambda^2_3 (residual check).
KVector cross(const KVector& s, const KVector& t, const KappaTriple& basis,
              const Scalar& tol);
KVector cross_std(const KVector& s, const KVector& t);

/// Recover the adapted frame a with kappa_frame(a) = (q1,q2,q3).
/// Exact mode uses the Euler factorization with in-field square roots and
/// throws if the needed root leaves Q(sqrt2,sqrt3).
Frame adapted_from_triple(const KVector& q1, const KVector& q2,
                          const KVector& q3, const Scalar& tol);

/// rank of a dense scalar matrix (Gaussian elimination; float uses tol pivots)
int matrix_rank(std::vector<std::vector<Scalar>> m, const Scalar& tol);

/// 25x25 matrix of upsilon_hat over the e_i (x) e_j basis (row-major pairs)
std::vector<std::vector<Scalar>> upsilon_hat_matrix(Mode m);
/// 25x25 matrix of the component projector
std::vector<std::vector<Scalar>> projector_matrix(Component c, Mode m);

}  // namespace so3five

#endif
