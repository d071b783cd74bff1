#include "qcb/qubit_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace qcb {

namespace {

constexpr Complex kI{0.0, 1.0};

template <int D>
using CMat = Eigen::Matrix<Complex, D, D>;

template <int D>
bool all_finite(const CMat<D>& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

template <int D>
CMat<D> validate_density_impl(const CMat<D>& m, const std::string& what) {
  if (!all_finite<D>(m)) {
    throw ValidationError(what + ": matrix has non-finite entries");
  }
  const double defect = hermiticity_defect(m);
  if (defect > tol::kHermitian) {
    std::ostringstream os;
    os << what << ": not Hermitian (max |M - M^+| = " << defect << ")";
    throw ValidationError(os.str());
  }
  CMat<D> h = 0.5 * (m + m.adjoint());
  const double trace = h.trace().real();
  if (std::abs(trace - 1.0) > tol::kTrace) {
    std::ostringstream os;
    os << what << ": trace is " << trace << ", expected 1";
    throw ValidationError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<CMat<D>> es(h);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min < -tol::kPsd) {
    std::ostringstream os;
    os << what << ": not positive semidefinite (min eigenvalue " << lambda_min << ")";
    throw ValidationError(os.str());
  }
  if (lambda_min < 0.0) {
    const auto clamped = es.eigenvalues().cwiseMax(0.0);
    h = es.eigenvectors() * clamped.template cast<Complex>().asDiagonal() *
        es.eigenvectors().adjoint();
    h /= h.trace().real();
  }
  return h;
}

}  // namespace

const Mat2& pauli(int mu) {
  static const std::array<Mat2, 4> table = [] {
    std::array<Mat2, 4> p;
    p[0] << 1.0, 0.0, 0.0, 1.0;
    p[1] << 0.0, 1.0, 1.0, 0.0;
    p[2] << 0.0, -kI, kI, 0.0;
    p[3] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }();
  if (mu < 0 || mu > 3) {
    throw std::out_of_range("pauli index must be in 0..3");
  }
  return table[static_cast<std::size_t>(mu)];
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

Vec4 kron(const Vec2& a, const Vec2& b) {
  Vec4 out;
  out << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
  return out;
}

Mat2 partial_trace_first(const Mat4& m) {
  return m.block<2, 2>(0, 0) + m.block<2, 2>(2, 2);
}

Mat2 partial_trace_second(const Mat4& m) {
  Mat2 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out(i, j) = m.block<2, 2>(2 * i, 2 * j).trace();
    }
  }
  return out;
}

Mat2 validated_density(const Mat2& m, const std::string& what) {
  return validate_density_impl<2>(m, what);
}

Mat4 validated_density(const Mat4& m, const std::string& what) {
  return validate_density_impl<4>(m, what);
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(Complex a0, Complex a1) : amps_(a0, a1) {
  const double norm2 = amps_.squaredNorm();
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tol::kPureNorm) {
    std::ostringstream os;
    os << "pure state must be normalized, |a0|^2 + |a1|^2 = " << norm2;
    throw ValidationError(os.str());
  }
}

PureState::PureState(const Vec2& amplitudes) : PureState(amplitudes[0], amplitudes[1]) {}

PureState PureState::normalized(const Vec2& v) {
  const double n = v.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) {
    throw ValidationError("cannot normalize a zero or non-finite state vector");
  }
  const Vec2 u = v / n;
  return PureState(u);
}

PureState PureState::plus() {
  return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
}
PureState PureState::minus() {
  return {std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0};
}
PureState PureState::plus_y() {
  return {std::numbers::sqrt2 / 2.0, kI * (std::numbers::sqrt2 / 2.0)};
}
PureState PureState::minus_y() {
  return {std::numbers::sqrt2 / 2.0, -kI * (std::numbers::sqrt2 / 2.0)};
}

PureState PureState::from_bloch(const Real3& direction) {
  const double n = direction.norm();
  if (!(n > 0.0)) {
    throw ValidationError("Bloch direction must be nonzero");
  }
  const Real3 d = direction / n;
  const double theta = std::acos(std::clamp(d.z(), -1.0, 1.0));
  const double phi = std::atan2(d.y(), d.x());
  Vec2 v(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
  return normalized(v);
}

Complex PureState::inner(const PureState& other) const { return amps_.dot(other.amps_); }

Mat2 PureState::projector() const { return amps_ * amps_.adjoint(); }

PureState PureState::conjugate() const {
  return PureState(Vec2(amps_.conjugate()));
}

PureState PureState::orthogonal() const {
  return PureState(-std::conj(amps_[1]), std::conj(amps_[0]));
}

BlochVector PureState::bloch() const {
  const Mat2 p = projector();
  BlochVector b;
  for (int i = 1; i <= 3; ++i) {
    b[i - 1] = (pauli(i) * p).trace().real();
  }
  return b;
}

// ---------------------------------------------------------------------------
// States

QubitState QubitState::from_matrix(const Mat2& m) {
  return QubitState(validated_density(m, "qubit state"));
}

QubitState QubitState::from_pure(const PureState& psi) { return QubitState(psi.projector()); }

QubitState QubitState::from_bloch(const BlochVector& b) {
  if (b.norm() > 1.0 + 1e-12) {
    throw ValidationError("Bloch vector longer than one");
  }
  Mat2 m = 0.5 * pauli(0);
  for (int i = 1; i <= 3; ++i) {
    m += 0.5 * b[i - 1] * pauli(i);
  }
  return QubitState(m);
}

QubitState QubitState::maximally_mixed() { return QubitState(0.5 * pauli(0)); }

BipartiteState BipartiteState::from_matrix(const Mat4& m) {
  return BipartiteState(validated_density(m, "two-qubit state"));
}

BipartiteState BipartiteState::from_pure(const Vec4& psi) {
  const double n = psi.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) {
    throw ValidationError("cannot build a state from a zero vector");
  }
  const Vec4 u = psi / n;
  return BipartiteState(u * u.adjoint());
}

BipartiteState BipartiteState::product(const QubitState& a, const QubitState& b) {
  return BipartiteState(kron(a.matrix(), b.matrix()));
}

BipartiteState BipartiteState::maximally_entangled() {
  return BipartiteState(0.5 * unnormalized_max_entangled());
}

BipartiteState BipartiteState::maximally_mixed() {
  return BipartiteState(0.25 * Mat4::Identity());
}

const Mat4& unnormalized_max_entangled() {
  static const Mat4 p = [] {
    Vec4 v = Vec4::Zero();
    v[0] = 1.0;
    v[3] = 1.0;
    return Mat4(v * v.adjoint());
  }();
  return p;
}

// ---------------------------------------------------------------------------
// Pauli-basis coordinates

BlochVector bloch_vector(const QubitState& rho) {
  BlochVector b;
  for (int i = 1; i <= 3; ++i) {
    b[i - 1] = (pauli(i) * rho.matrix()).trace().real();
  }
  return b;
}

CorrelationMatrix correlation_matrix(const BipartiteState& tau) {
  CorrelationMatrix n;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      n(i - 1, j - 1) = (tau.matrix() * kron(pauli(i), pauli(j))).trace().real();
    }
  }
  return n;
}

QubitState partial_trace(const BipartiteState& tau, Subsystem which) {
  const Mat2 reduced = which == Subsystem::First ? partial_trace_first(tau.matrix())
                                                 : partial_trace_second(tau.matrix());
  return QubitState::from_matrix(reduced);
}

double euclidean_norm(const Real3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

// ---------------------------------------------------------------------------
// 3x3 SVD

Svd3 jacobi_svd(const Real33& a) {
  constexpr int kMaxSweeps = 50;
  constexpr double kOffTolerance = 1e-14;
  constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

  Real33 b = a;
  Real33 u = Real33::Identity();
  Real33 v = Real33::Identity();

  auto off_diagonal = [&b] {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) m = std::max(m, std::abs(b(i, j)));
      }
    }
    return m;
  };

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal() >= kOffTolerance; ++sweep) {
    for (const auto& [p, q] : kPairs) {
      const double w = b(p, p);
      const double x = b(p, q);
      const double y = b(q, p);
      const double z = b(q, q);
      if (x == 0.0 && y == 0.0) continue;

      // Rotate rows so that the 2x2 block becomes symmetric.
      const double theta = std::atan2(x - y, w + z);
      const double c1 = std::cos(theta);
      const double s1 = std::sin(theta);
      const double sp = c1 * w - s1 * y;
      const double sr = c1 * x - s1 * z;
      const double sq = s1 * x + c1 * z;

      // Symmetric Schur rotation for [[sp, sr], [sr, sq]].
      double c2 = 1.0;
      double s2 = 0.0;
      if (sr != 0.0) {
        const double zeta = (sq - sp) / (2.0 * sr);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        c2 = 1.0 / std::sqrt(1.0 + t * t);
        s2 = c2 * t;
      }
      // Left factor L = G * J, right factor R = J, with G, J = [[c, s], [-s, c]].
      const double l00 = c1 * c2 - s1 * s2;
      const double l01 = c1 * s2 + s1 * c2;
      const double l10 = -s1 * c2 - c1 * s2;
      const double l11 = -s1 * s2 + c1 * c2;
      const double r00 = c2, r01 = s2, r10 = -s2, r11 = c2;

      for (int k = 0; k < 3; ++k) {
        const double bp = b(p, k);
        const double bq = b(q, k);
        b(p, k) = l00 * bp + l10 * bq;
        b(q, k) = l01 * bp + l11 * bq;
      }
      for (int k = 0; k < 3; ++k) {
        const double bp = b(k, p);
        const double bq = b(k, q);
        b(k, p) = bp * r00 + bq * r10;
        b(k, q) = bp * r01 + bq * r11;
        const double up = u(k, p);
        const double uq = u(k, q);
        u(k, p) = up * l00 + uq * l10;
        u(k, q) = up * l01 + uq * l11;
        const double vp = v(k, p);
        const double vq = v(k, q);
        v(k, p) = vp * r00 + vq * r10;
        v(k, q) = vp * r01 + vq * r11;
      }
    }
  }

  Real3 s = b.diagonal();
  for (int i = 0; i < 3; ++i) {
    if (s[i] < 0.0) {
      s[i] = -s[i];
      u.col(i) = -u.col(i);
    }
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&s](int l, int r) { return s[l] > s[r]; });

  Svd3 out;
  for (int k = 0; k < 3; ++k) {
    out.s[k] = s[order[k]];
    out.u.col(k) = u.col(order[k]);
    out.v.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

Real3 singular_values(const Real33& a) { return jacobi_svd(a).s; }

double kyfan_norm(const Real33& n) { return singular_values(n).sum(); }

double spectral_norm(const Real33& n) { return singular_values(n)[0]; }

double rotation_reachable_kyfan(const Real33& n) {
  const Real3 s = singular_values(n);
  return n.determinant() > 0.0 ? s[0] + s[1] - s[2] : s[0] + s[1] + s[2];
}

// ---------------------------------------------------------------------------
// Rotations

Real33 rotation_of(const Mat2& u) {
  Real33 o;
  const Mat2 ud = u.adjoint();
  for (int l = 1; l <= 3; ++l) {
    for (int i = 1; i <= 3; ++i) {
      o(l - 1, i - 1) = 0.5 * (pauli(l) * u * pauli(i) * ud).trace().real();
    }
  }
  return o;
}

Mat2 unitary_from_rotation(const Real33& r) {
  // Shepperd's method for the unit quaternion (w, x, y, z) of r.
  double w, x, y, z;
  const double trace = r.trace();
  if (trace > 0.0) {
    const double s = 2.0 * std::sqrt(trace + 1.0);
    w = 0.25 * s;
    x = (r(2, 1) - r(1, 2)) / s;
    y = (r(0, 2) - r(2, 0)) / s;
    z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    w = (r(2, 1) - r(1, 2)) / s;
    x = 0.25 * s;
    y = (r(0, 1) + r(1, 0)) / s;
    z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    w = (r(0, 2) - r(2, 0)) / s;
    x = (r(0, 1) + r(1, 0)) / s;
    y = 0.25 * s;
    z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    w = (r(1, 0) - r(0, 1)) / s;
    x = (r(0, 2) + r(2, 0)) / s;
    y = (r(1, 2) + r(2, 1)) / s;
    z = 0.25 * s;
  }
  if (w < 0.0) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;
  // U = w I - i (x sigma_1 + y sigma_2 + z sigma_3)
  return w * pauli(0) - kI * (x * pauli(1) + y * pauli(2) + z * pauli(3));
}

Mat2 euler_zyz_unitary(double alpha, double beta, double gamma) {
  auto rz = [](double t) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::polar(1.0, -t / 2.0);
    m(1, 1) = std::polar(1.0, t / 2.0);
    return m;
  };
  Mat2 ry;
  ry << std::cos(beta / 2.0), -std::sin(beta / 2.0), std::sin(beta / 2.0), std::cos(beta / 2.0);
  return rz(alpha) * ry * rz(gamma);
}

Real33 euler_zyz_rotation(double alpha, double beta, double gamma) {
  auto rz = [](double t) {
    Real33 m;
    m << std::cos(t), -std::sin(t), 0.0, std::sin(t), std::cos(t), 0.0, 0.0, 0.0, 1.0;
    return m;
  };
  Real33 ry;
  ry << std::cos(beta), 0.0, std::sin(beta), 0.0, 1.0, 0.0, -std::sin(beta), 0.0, std::cos(beta);
  return rz(alpha) * ry * rz(gamma);
}

double fidelity(const QubitState& r, const QubitState& s) {
  // For qubits: F^2 = tr[r s] + 2 sqrt(det r det s).
  const double overlap = (r.matrix() * s.matrix()).trace().real();
  const double dr = std::max(0.0, r.matrix().determinant().real());
  const double ds = std::max(0.0, s.matrix().determinant().real());
  const double f2 = overlap + 2.0 * std::sqrt(dr * ds);
  return std::sqrt(std::clamp(f2, 0.0, 1.0));
}

bool is_unitary(const Mat2& u, double tolerance) {
  return (u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace qcb
