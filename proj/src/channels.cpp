#include "qcb/channels.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace qcb {

namespace {

constexpr double kCpTolerance = 1e-9;
constexpr double kTpTolerance = 1e-9;
constexpr double kPtmRowTolerance = 1e-12;
constexpr double kUnitaryTolerance = 1e-10;

Mat4 validated_choi(const Mat4& j) {
  if (!(j.real().allFinite() && j.imag().allFinite())) {
    throw ValidationError("Choi matrix has non-finite entries");
  }
  const double defect = hermiticity_defect(j);
  if (defect > tol::kHermitian) {
    std::ostringstream os;
    os << "Choi matrix not Hermitian (max |J - J^+| = " << defect << ")";
    throw ValidationError(os.str());
  }
  Mat4 h = 0.5 * (j + j.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> es(h);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min < -kCpTolerance) {
    std::ostringstream os;
    os << "channel is not completely positive (min Choi eigenvalue " << lambda_min << ")";
    throw ValidationError(os.str());
  }
  const double tp_defect = (partial_trace_second(h) - Mat2::Identity()).cwiseAbs().maxCoeff();
  if (tp_defect > kTpTolerance) {
    std::ostringstream os;
    os << "channel is not trace preserving (|tr_out J - I| = " << tp_defect << ")";
    throw ValidationError(os.str());
  }
  if (lambda_min < 0.0) {
    const auto clamped = es.eigenvalues().cwiseMax(0.0);
    h = es.eigenvectors() * clamped.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  }
  return h;
}

void require_unitary(const Mat2& u, const char* what) {
  if (!is_unitary(u, kUnitaryTolerance)) {
    throw ValidationError(std::string(what) + " is not unitary");
  }
}

Real44 embed_rotation(const Real33& o) {
  Real44 t = Real44::Zero();
  t(0, 0) = 1.0;
  t.block<3, 3>(1, 1) = o;
  return t;
}

}  // namespace

std::string_view class_name(ChannelClass cls) {
  switch (cls) {
    case ChannelClass::D: return "D";
    case ChannelClass::R: return "R";
    case ChannelClass::UE: return "UE";
    case ChannelClass::GE: return "GE";
    case ChannelClass::C: return "C";
  }
  return "?";
}

ChannelClass parse_channel_class(std::string_view name) {
  for (auto cls : kAllClasses) {
    if (class_name(cls) == name) return cls;
  }
  throw ValidationError("unknown channel class '" + std::string(name) +
                        "' (expected D, R, UE, GE or C)");
}

// ---------------------------------------------------------------------------
// Representation conversions

Mat4 choi_from_kraus(std::span<const Mat2> kraus) {
  Mat4 j = Mat4::Zero();
  for (const auto& k : kraus) {
    // (I (x) K)|psi'+> has component (i, a) equal to K(a, i).
    Vec4 v;
    for (int i = 0; i < 2; ++i) {
      for (int a = 0; a < 2; ++a) {
        v[2 * i + a] = k(a, i);
      }
    }
    j += v * v.adjoint();
  }
  return j;
}

Mat4 choi_from_ptm(const Real44& t) {
  Mat4 j = Mat4::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      if (t(mu, nu) == 0.0) continue;
      j += 0.5 * t(mu, nu) * kron(pauli(nu).transpose(), pauli(mu));
    }
  }
  return j;
}

Real44 ptm_from_choi(const Mat4& j) {
  Real44 t;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      t(mu, nu) = 0.5 * (j * kron(pauli(nu).transpose(), pauli(mu))).trace().real();
    }
  }
  return t;
}

std::vector<Mat2> kraus_from_choi(const Mat4& j, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (j + j.adjoint()));
  std::vector<Mat2> kraus;
  for (int idx = 3; idx >= 0; --idx) {
    const double lambda = es.eigenvalues()[idx];
    if (lambda < cutoff) continue;
    const Vec4 v = std::sqrt(lambda) * es.eigenvectors().col(idx);
    Mat2 k;
    for (int i = 0; i < 2; ++i) {
      for (int a = 0; a < 2; ++a) {
        k(a, i) = v[2 * i + a];
      }
    }
    kraus.push_back(k);
  }
  return kraus;
}

// ---------------------------------------------------------------------------
// QubitChannel

QubitChannel::QubitChannel(Mat4 choi, Real44 ptm, std::vector<Mat2> kraus, Representation rep,
                           std::optional<ChannelClass> tag)
    : choi_(std::move(choi)),
      ptm_(std::move(ptm)),
      kraus_(std::move(kraus)),
      representation_(rep),
      tag_(tag) {}

QubitChannel QubitChannel::from_kraus(std::vector<Mat2> kraus, std::optional<ChannelClass> tag) {
  if (kraus.empty()) {
    throw ValidationError("Kraus list is empty");
  }
  Mat4 j = validated_choi(choi_from_kraus(kraus));
  Real44 t = ptm_from_choi(j);
  return QubitChannel(std::move(j), t, std::move(kraus), Representation::Kraus, tag);
}

QubitChannel QubitChannel::from_ptm(const Real44& t, std::optional<ChannelClass> tag) {
  if (!t.allFinite()) {
    throw ValidationError("PTM has non-finite entries");
  }
  const double row_defect =
      std::max({std::abs(t(0, 0) - 1.0), std::abs(t(0, 1)), std::abs(t(0, 2)), std::abs(t(0, 3))});
  if (row_defect > kPtmRowTolerance) {
    std::ostringstream os;
    os << "PTM first row must be (1, 0, 0, 0), deviation " << row_defect;
    throw ValidationError(os.str());
  }
  Mat4 j = validated_choi(choi_from_ptm(t));
  auto kraus = kraus_from_choi(j);
  return QubitChannel(std::move(j), t, std::move(kraus), Representation::Ptm, tag);
}

QubitChannel QubitChannel::from_choi(const Mat4& j, std::optional<ChannelClass> tag) {
  Mat4 h = validated_choi(j);
  Real44 t = ptm_from_choi(h);
  auto kraus = kraus_from_choi(h);
  return QubitChannel(std::move(h), t, std::move(kraus), Representation::Choi, tag);
}

QubitChannel QubitChannel::with_tag(std::optional<ChannelClass> tag) const {
  QubitChannel copy = *this;
  copy.tag_ = tag;
  return copy;
}

Mat2 QubitChannel::apply(const Mat2& rho) const {
  Mat2 out = Mat2::Zero();
  for (const auto& k : kraus_) {
    out += k * rho * k.adjoint();
  }
  return out;
}

QubitState QubitChannel::apply(const QubitState& rho) const {
  return QubitState::from_matrix(apply(rho.matrix()));
}

Mat4 QubitChannel::apply_extended(const Mat4& rho) const {
  Mat4 out = Mat4::Zero();
  for (const auto& k : kraus_) {
    const Mat4 ik = kron(Mat2::Identity(), k);
    out += ik * rho * ik.adjoint();
  }
  return out;
}

bool QubitChannel::is_unital(double tolerance) const {
  return ptm_.block<3, 1>(1, 0).cwiseAbs().maxCoeff() <= tolerance;
}

QubitChannel compose(const QubitChannel& outer, const QubitChannel& inner) {
  std::vector<Mat2> kraus;
  kraus.reserve(outer.kraus().size() * inner.kraus().size());
  for (const auto& a : outer.kraus()) {
    for (const auto& b : inner.kraus()) {
      kraus.push_back(a * b);
    }
  }
  return QubitChannel::from_kraus(std::move(kraus));
}

// ---------------------------------------------------------------------------
// Constructors for the channel classes

QubitChannel make_depolarizing(const QubitState& rho) {
  // Kraus operators r_c <i| where r_c are the columns of sqrt(rho).
  Eigen::SelfAdjointEigenSolver<Mat2> es(rho.matrix());
  const Mat2 root = es.eigenvectors() *
                    es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal() *
                    es.eigenvectors().adjoint();
  std::vector<Mat2> kraus;
  for (int i = 0; i < 2; ++i) {
    for (int c = 0; c < 2; ++c) {
      Mat2 k = Mat2::Zero();
      k.col(i) = root.col(c);
      kraus.push_back(k);
    }
  }
  return QubitChannel::from_kraus(std::move(kraus), ChannelClass::D);
}

QubitChannel make_unitary(const Mat2& u) {
  require_unitary(u, "unitary channel operator");
  return QubitChannel::from_kraus({u}, ChannelClass::R);
}

QubitChannel make_random_unitary(std::span<const double> weights, std::span<const Mat2> unitaries) {
  if (weights.size() != unitaries.size() || weights.empty()) {
    throw ValidationError("random unitary channel needs one weight per unitary");
  }
  double total = 0.0;
  for (double p : weights) {
    if (!(p >= 0.0)) throw ValidationError("random unitary weights must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("random unitary weights must sum to one");
  }
  std::vector<Mat2> kraus;
  for (std::size_t x = 0; x < weights.size(); ++x) {
    require_unitary(unitaries[x], "random unitary component");
    if (weights[x] == 0.0) continue;
    kraus.push_back(std::sqrt(weights[x]) * unitaries[x]);
  }
  return QubitChannel::from_kraus(std::move(kraus), ChannelClass::R);
}

OrthonormalBasis make_basis(const PureState& first, const PureState& second) {
  if (std::abs(first.inner(second)) > 1e-12) {
    throw ValidationError("basis vectors are not orthogonal");
  }
  return {first, second};
}

QubitChannel make_extreme_cq(const PureState& psi, const PureState& phi,
                             const OrthonormalBasis& basis) {
  if (std::abs(basis.first.inner(basis.second)) > 1e-12) {
    throw ValidationError("basis vectors are not orthogonal");
  }
  std::vector<Mat2> kraus{psi.amplitudes() * basis.first.amplitudes().adjoint(),
                          phi.amplitudes() * basis.second.amplitudes().adjoint()};
  return QubitChannel::from_kraus(std::move(kraus), ChannelClass::GE);
}

Real44 GeneralizedExtremePoint::lambda_ptm() const {
  Real44 t = Real44::Zero();
  t(0, 0) = 1.0;
  t(1, 1) = std::cos(u1);
  t(2, 2) = std::cos(u2);
  t(3, 0) = std::sin(u1) * std::sin(u2);
  t(3, 3) = std::cos(u1) * std::cos(u2);
  return t;
}

QubitChannel make_generalized_extreme(const GeneralizedExtremePoint& g) {
  require_unitary(g.v, "generalized extreme point V");
  require_unitary(g.w, "generalized extreme point W");
  const Real44 t =
      embed_rotation(rotation_of(g.v)) * g.lambda_ptm() * embed_rotation(rotation_of(g.w));
  return QubitChannel::from_ptm(t, ChannelClass::C);
}

QubitChannel make_unital(const Mat2& v, const Real3& lambda, const Mat2& w,
                         std::optional<ChannelClass> tag) {
  require_unitary(v, "unital canonical form V");
  require_unitary(w, "unital canonical form W");
  constexpr double kSlack = 1e-12;
  const double l1 = lambda[0], l2 = lambda[1], l3 = lambda[2];
  if (1.0 + l3 + kSlack < std::abs(l1 + l2) || 1.0 - l3 + kSlack < std::abs(l1 - l2)) {
    throw ValidationError("lambda violates 1 +- l3 >= |l1 +- l2| (not completely positive)");
  }
  Real44 t = Real44::Zero();
  t(0, 0) = 1.0;
  t.block<3, 3>(1, 1) = rotation_of(v) * lambda.asDiagonal() * rotation_of(w);
  return QubitChannel::from_ptm(t, tag);
}

QubitChannel make_werner(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw ValidationError("Werner parameter w must lie in [0, 1]");
  }
  Real44 t = Real44::Zero();
  t(0, 0) = 1.0;
  t(1, 1) = t(2, 2) = t(3, 3) = w;
  return QubitChannel::from_ptm(t, ChannelClass::R);
}

// ---------------------------------------------------------------------------
// Unital canonical form

QubitChannel UnitalCanonicalForm::recompose() const { return make_unital(v, lambda, w); }

UnitalCanonicalForm unital_canonical_decomposition(const QubitChannel& channel) {
  if (!channel.is_unital(1e-9)) {
    throw ValidationError("canonical decomposition requires a unital channel");
  }
  const Real33 block = channel.ptm().block<3, 3>(1, 1);
  Svd3 svd = jacobi_svd(block);
  Real3 lambda = svd.s;
  // Force both factors into SO(3); the sign lands on the last singular value.
  if (svd.u.determinant() < 0.0) {
    svd.u.col(2) = -svd.u.col(2);
    lambda[2] = -lambda[2];
  }
  if (svd.v.determinant() < 0.0) {
    svd.v.col(2) = -svd.v.col(2);
    lambda[2] = -lambda[2];
  }
  UnitalCanonicalForm out;
  out.v = unitary_from_rotation(svd.u);
  out.w = unitary_from_rotation(svd.v.transpose());
  out.lambda = lambda;
  return out;
}

bool is_entanglement_breaking_unital(const QubitChannel& channel) {
  const auto form = unital_canonical_decomposition(channel);
  return form.lambda.cwiseAbs().sum() <= 1.0 + 1e-9;
}

}  // namespace qcb
