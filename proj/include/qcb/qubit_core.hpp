#pragma once

// Pauli-basis linear algebra for one- and two-qubit operators.
//
// Tensor ordering: in a two-qubit operator A (x) B the first factor is the
// reference side and the second factor is the channel output side. Basis
// index of |a b> is 2*a + b.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcb {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using Real3 = Eigen::Vector3d;
using Real33 = Eigen::Matrix3d;
using Real44 = Eigen::Matrix4d;

using BlochVector = Eigen::Vector3d;
using CorrelationMatrix = Eigen::Matrix3d;

/// Input failed a structural check (Hermiticity, trace, positivity, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request that has no solution (e.g. conversion with x > y).
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kPsd = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kPureNorm = 1e-12;
}  // namespace tol

/// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
const Mat2& pauli(int mu);

Mat4 kron(const Mat2& a, const Mat2& b);
Vec4 kron(const Vec2& a, const Vec2& b);

/// tr_1: traces out the first (reference) factor.
Mat2 partial_trace_first(const Mat4& m);
/// tr_2: traces out the second (output) factor.
Mat2 partial_trace_second(const Mat4& m);

/// Largest |M - M^dagger| entry.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Checks Hermiticity, unit trace and positivity at the library tolerances,
/// clamps eigenvalues inside the tolerance band and returns the repaired
/// matrix. Throws ValidationError with `what` as context otherwise.
Mat2 validated_density(const Mat2& m, const std::string& what);
Mat4 validated_density(const Mat4& m, const std::string& what);

class PureState {
 public:
  /// Requires |a0|^2 + |a1|^2 = 1 within 1e-12.
  PureState(Complex a0, Complex a1);
  explicit PureState(const Vec2& amplitudes);

  /// Rescales any nonzero vector to unit norm.
  static PureState normalized(const Vec2& v);
  static PureState zero() { return {1.0, 0.0}; }
  static PureState one() { return {0.0, 1.0}; }
  static PureState plus();
  static PureState minus();
  static PureState plus_y();
  static PureState minus_y();
  /// Pure state with the given unit Bloch direction.
  static PureState from_bloch(const Real3& direction);

  const Vec2& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_[i]; }

  /// <this|other>
  Complex inner(const PureState& other) const;
  Mat2 projector() const;
  PureState conjugate() const;
  /// The fixed orthogonal complement (-conj(a1), conj(a0)).
  PureState orthogonal() const;
  BlochVector bloch() const;

 private:
  Vec2 amps_;
};

/// Single-qubit density operator.
class QubitState {
 public:
  /// Validates Hermitian, trace one and PSD (tolerance 1e-9).
  static QubitState from_matrix(const Mat2& m);
  static QubitState from_pure(const PureState& psi);
  /// (I + b.sigma)/2, requires |b| <= 1 + 1e-12.
  static QubitState from_bloch(const BlochVector& b);
  static QubitState maximally_mixed();

  const Mat2& matrix() const { return m_; }

 private:
  explicit QubitState(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

/// Two-qubit density operator (the tau of a bound computation).
class BipartiteState {
 public:
  static BipartiteState from_matrix(const Mat4& m);
  static BipartiteState from_pure(const Vec4& psi);
  static BipartiteState product(const QubitState& a, const QubitState& b);
  /// P+ = |psi+><psi+| with |psi+> = (|00> + |11>)/sqrt2.
  static BipartiteState maximally_entangled();
  static BipartiteState maximally_mixed();

  const Mat4& matrix() const { return m_; }

 private:
  explicit BipartiteState(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

/// Unnormalized maximally entangled projector sum_ij |i><j| (x) |i><j|.
const Mat4& unnormalized_max_entangled();

BlochVector bloch_vector(const QubitState& rho);
/// N_ij = tr[tau (sigma_i (x) sigma_j)], i, j = 1..3.
CorrelationMatrix correlation_matrix(const BipartiteState& tau);

enum class Subsystem { First, Second };
/// Traces out `which` and returns the remaining single-qubit state.
QubitState partial_trace(const BipartiteState& tau, Subsystem which);

double euclidean_norm(const Real3& v);

struct Svd3 {
  Real33 u;
  Real3 s;  // descending, non-negative
  Real33 v;  // a = u * diag(s) * v^T
  int sweeps = 0;
};

/// Two-sided Jacobi SVD for a real 3x3 matrix. Cyclic pair order
/// (0,1), (0,2), (1,2); stops when every off-diagonal entry is below 1e-14
/// or after 50 sweeps.
Svd3 jacobi_svd(const Real33& a);

Real3 singular_values(const Real33& a);
/// Sum of singular values.
double kyfan_norm(const Real33& n);
/// Largest singular value.
double spectral_norm(const Real33& n);

/// max over proper rotations O of tr[O D N] with D = diag(1,-1,1):
/// s1 + s2 + s3 when det N <= 0 and s1 + s2 - s3 when det N > 0.
/// Equals kyfan_norm(n) whenever det N <= 0 (the orientation of N(P+)).
double rotation_reachable_kyfan(const Real33& n);

/// O(U)_li = (1/2) tr[sigma_l U sigma_i U^dagger].
Real33 rotation_of(const Mat2& u);
/// SU(2) lift of a proper rotation; the representative has Re U_00 >= 0.
Mat2 unitary_from_rotation(const Real33& r);

/// U = Rz(alpha) Ry(beta) Rz(gamma) with Rz(t) = exp(-i t sigma_3 / 2).
Mat2 euler_zyz_unitary(double alpha, double beta, double gamma);
/// The SO(3) image of euler_zyz_unitary.
Real33 euler_zyz_rotation(double alpha, double beta, double gamma);

/// Uhlmann fidelity tr sqrt(sqrt(s) r sqrt(s)) of two qubit states.
double fidelity(const QubitState& r, const QubitState& s);

bool is_unitary(const Mat2& u, double tolerance = 1e-10);

}  // namespace qcb
