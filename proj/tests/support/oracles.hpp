#pragma once

// Reference computations written directly from definitions, sharing no code
// with the library beyond its value types. Used to cross-check library
// results in the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qcb/measurement.hpp"
#include "qcb/qubit_core.hpp"

namespace oracle {

using qcb::Complex;
using qcb::Mat2;
using qcb::Mat4;
using qcb::Vec2;
using qcb::Vec4;

inline Mat2 sigma(int mu) {
  Mat2 m;
  const Complex i(0.0, 1.0);
  switch (mu) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat4 tensor(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r2 = 0; r2 < 2; ++r2)
        for (int c2 = 0; c2 < 2; ++c2) m(2 * r1 + r2, 2 * c1 + c2) = a(r1, c1) * b(r2, c2);
  return m;
}

inline Mat2 unit(int i, int j) {
  Mat2 m = Mat2::Zero();
  m(i, j) = 1.0;
  return m;
}

inline Mat2 apply_kraus(const std::vector<Mat2>& kraus, const Mat2& rho) {
  Mat2 out = Mat2::Zero();
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

/// sum_ij |i><j| (x) Psi(|i><j|)
inline Mat4 choi_of(const std::vector<Mat2>& kraus) {
  Mat4 j = Mat4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) j += tensor(unit(a, b), apply_kraus(kraus, unit(a, b)));
  return j;
}

/// N_ij = tr[tau (sigma_i (x) sigma_j)]
inline Eigen::Matrix3d correlation(const Mat4& tau) {
  Eigen::Matrix3d n;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) n(i - 1, j - 1) = (tau * tensor(sigma(i), sigma(j))).trace().real();
  return n;
}

inline Eigen::Vector3d singular_values(const Eigen::Matrix3d& n) {
  return Eigen::JacobiSVD<Eigen::Matrix3d>(n).singularValues();
}

/// Fully entangled fraction: max over U in SU(2) of <Phi|(I (x) U) tau (I (x) U)^dag|Phi>.
/// Writing U = q0 I - i (q . sigma) with |q| = 1 makes the objective the real
/// quadratic form q^T M q, so the maximum is the top eigenvalue of M.
inline double fef_by_quaternion(const Mat4& tau) {
  Vec4 phi = Vec4::Zero();
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  std::vector<Mat2> u{sigma(0), -i * sigma(1), -i * sigma(2), -i * sigma(3)};
  Eigen::Matrix4d m;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Vec4 left = tensor(sigma(0), u[a]).adjoint() * phi;
      const Vec4 right = tensor(sigma(0), u[b]).adjoint() * phi;
      m(a, b) = (left.adjoint() * tau * right)(0, 0).real();
    }
  }
  const Eigen::Matrix4d sym = (m + m.transpose()) / 2.0;
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(sym).eigenvalues().maxCoeff();
}

/// Overlap of tau with (I (x) U)|Phi> for an explicit U.
inline double entangled_overlap(const Mat4& tau, const Mat2& u) {
  Vec4 phi = Vec4::Zero();
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const Vec4 v = tensor(sigma(0), u) * phi;
  return (v.adjoint() * tau * v)(0, 0).real();
}

/// Haar-distributed 2x2 unitary via QR of a Ginibre matrix.
template <typename Rng>
Mat2 haar(Rng& rng) {
  std::normal_distribution<double> g;
  Mat2 z;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) z(r, c) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Mat2> qr(z);
  Mat2 q = qr.householderQ();
  const Mat2 rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < 2; ++c) q.col(c) *= rr(c, c) / std::abs(rr(c, c));
  return q;
}

template <typename Rng>
Vec2 random_ket(Rng& rng) {
  std::normal_distribution<double> g;
  Vec2 v(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
  return v / v.norm();
}

/// Random full-rank density matrix of dimension Dim (Ginibre).
template <int Dim, typename Rng>
Eigen::Matrix<Complex, Dim, Dim> random_density(Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix<Complex, Dim, Dim> z;
  for (int r = 0; r < Dim; ++r)
    for (int c = 0; c < Dim; ++c) z(r, c) = Complex(g(rng), g(rng));
  Eigen::Matrix<Complex, Dim, Dim> m = z * z.adjoint();
  return m / m.trace().real();
}

/// Random PPOVM: a random POVM F_m on (ancilla, output) fed half of the
/// purification of a random rho, so S_m = (sqrt(rho^T) (x) I) F_m (sqrt(rho^T) (x) I)
/// and sum_m S_m = rho^T (x) I.
template <typename Rng>
qcb::Ppovm random_ppovm(Rng& rng, int outcomes) {
  std::vector<Mat4> a;
  Mat4 total = Mat4::Zero();
  for (int m = 0; m < outcomes; ++m) {
    a.push_back(random_density<4>(rng));
    total += a.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat4> es(total);
  const Mat4 inv_sqrt = es.eigenvectors() *
                        es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                        es.eigenvectors().adjoint();
  const Mat2 rho = random_density<2>(rng);
  Eigen::SelfAdjointEigenSolver<Mat2> er(Mat2(rho.transpose()));
  const Mat2 sqrt_rt =
      er.eigenvectors() * er.eigenvalues().cwiseSqrt().asDiagonal() * er.eigenvectors().adjoint();
  const Mat4 l = tensor(sqrt_rt, Mat2::Identity());
  std::vector<Mat4> effects;
  for (const auto& am : a) effects.push_back(l * inv_sqrt * am * inv_sqrt * l);
  return qcb::Ppovm::make(effects, qcb::QubitState::from_matrix(rho));
}

inline double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
