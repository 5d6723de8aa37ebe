#ifndef SO3FIVE_KVECTOR_HPP
#define SO3FIVE_KVECTOR_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "so3five/scalar.hpp"

namespace so3five {

struct degree_error : std::invalid_argument {
  explicit degree_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Multi-index tables for Lambda^k R^5, k = 0..5, lexicographic over strictly
/// increasing tuples.  Sizes 1, 5, 10, 10, 5, 1.
namespace multi_index {
int count(int k);
/// the i-th increasing tuple of length k (entries in 1..5)
const std::vector<int>& tuple(int k, int i);
/// position of an increasing tuple; -1 if not increasing/invalid
int position(int k, const std::vector<int>& t);
/// sort arbitrary tuple, return permutation sign (0 if repeated index)
int sort_sign(std::vector<int>& t);
}  // namespace multi_index

/// Element of Lambda^k R^5 in the fixed reference frame.
class KVector {
 public:
  KVector() : k_(0), mode_(Mode::exact), comp_(1, Scalar::zero(Mode::exact)) {}
  KVector(int k, Mode m);

  static KVector basis(int k, const std::vector<int>& idx, Mode m);
  /// e_i, 1-based
  static KVector e(int i, Mode m);
  static KVector vol(Mode m) { return basis(5, {1, 2, 3, 4, 5}, m); }

  int degree() const { return k_; }
  Mode mode() const { return mode_; }
  int size() const { return static_cast<int>(comp_.size()); }

  const Scalar& operator[](int i) const { return comp_[i]; }
  Scalar& operator[](int i) { return comp_[i]; }
  const Scalar& coeff(const std::vector<int>& t) const;
  void set_coeff(const std::vector<int>& t, const Scalar& v);

  KVector operator+(const KVector& o) const;
  KVector operator-(const KVector& o) const;
  KVector operator*(const Scalar& s) const;
  KVector operator-() const;
  bool operator==(const KVector& o) const;

  bool is_zero() const;
  /// largest |component| (exact mode: by algebraic sign tests)
  Scalar max_abs() const;
  KVector to_float() const;

 private:
  int k_;
  Mode mode_;
  std::vector<Scalar> comp_;
};

inline KVector operator*(const Scalar& s, const KVector& v) { return v * s; }

KVector wedge(const KVector& u, const KVector& v);
/// convention: alpha ^ hodge_star(beta) = inner(alpha,beta) * vol
KVector hodge_star(const KVector& w);
/// g(interior(x,w), u) = g(w, x ^ u)
KVector interior(const KVector& x, const KVector& w);
/// determinant-extended metric, orthonormal on each multi-index basis
Scalar inner(const KVector& u, const KVector& v);

/// 5x5 matrix of scalars with the pairing convention
/// entry(i,j) = <W, e_i (x) e_j>; as an endomorphism W(x)_j = sum_i x_i W_ij.
class Tensor2 {
 public:
  Tensor2() : Tensor2(Mode::exact) {}
  explicit Tensor2(Mode m);

  static Tensor2 identity(Mode m);
  static Tensor2 from_bivector(const KVector& w);

  Mode mode() const { return mode_; }
  const Scalar& at(int i, int j) const { return m_[i][j]; }  // 0-based
  Scalar& at(int i, int j) { return m_[i][j]; }

  Tensor2 operator+(const Tensor2& o) const;
  Tensor2 operator-(const Tensor2& o) const;
  Tensor2 operator*(const Scalar& s) const;
  Tensor2 operator-() const;
  bool operator==(const Tensor2& o) const;

  Tensor2 transpose() const;
  Scalar trace() const;
  /// matrix product of forms interpreted as endomorphisms is not meaningful;
  /// this is the plain matrix product used by internal machinery.
  Tensor2 matmul(const Tensor2& o) const;

  /// endomorphism action g(W(x),y) = g(W, x (x) y)
  KVector apply(const KVector& x) const;
  /// the bivector with matching skew form (requires skewness)
  KVector to_bivector() const;

  Scalar inner_t2(const Tensor2& o) const;
  bool is_symmetric(const Scalar& tol) const;
  bool is_skew(const Scalar& tol) const;
  bool is_zero() const;
  Scalar max_abs() const;
  Tensor2 symmetric_part() const;
  Tensor2 skew_part() const;
  Tensor2 to_float() const;

 private:
  Mode mode_;
  std::array<std::array<Scalar, 5>, 5> m_;
};

/// form value eta(x, y) = x^T M y for a Tensor2 form matrix
Scalar form_value(const Tensor2& eta, const KVector& x, const KVector& y);

}  // namespace so3five

#endif
