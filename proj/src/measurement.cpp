#include "qcb/measurement.hpp"

#include <sstream>

namespace qcb {

namespace {

template <typename M>
std::pair<double, double> spectrum_range(const M& m) {
  Eigen::SelfAdjointEigenSolver<M> es(M(0.5 * (m + m.adjoint())));
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

std::vector<std::string> default_labels(std::vector<std::string> labels, std::size_t n) {
  if (labels.empty()) {
    for (std::size_t m = 0; m < n; ++m) labels.push_back(std::to_string(m));
  }
  if (labels.size() != n) {
    throw ValidationError("number of outcome labels does not match number of effects");
  }
  return labels;
}

template <typename M>
void require_hermitian(const M& m, const std::string& what) {
  if (!(m.real().allFinite() && m.imag().allFinite())) {
    throw ValidationError(what + " has non-finite entries");
  }
  if (hermiticity_defect(m) > tol::kHermitian) {
    throw ValidationError(what + " is not Hermitian");
  }
}

}  // namespace

template <int Dim>
Povm<Dim> Povm<Dim>::make(std::vector<Effect> effects, std::vector<std::string> labels) {
  if (effects.empty()) throw ValidationError("POVM has no effects");
  Effect total = Effect::Zero();
  for (std::size_t m = 0; m < effects.size(); ++m) {
    const std::string what = "POVM effect " + std::to_string(m);
    require_hermitian(effects[m], what);
    const auto [lo, hi] = spectrum_range(effects[m]);
    if (lo < -tol::kPsd || hi > 1.0 + tol::kPsd) {
      std::ostringstream os;
      os << what << " has eigenvalues outside [0, 1] (" << lo << ", " << hi << ")";
      throw ValidationError(os.str());
    }
    total += effects[m];
  }
  const double defect = (total - Effect::Identity()).cwiseAbs().maxCoeff();
  if (defect > tol::kPovmCompleteness) {
    std::ostringstream os;
    os << "POVM effects do not sum to the identity (deviation " << defect << ")";
    throw ValidationError(os.str());
  }
  auto checked_labels = default_labels(std::move(labels), effects.size());
  return Povm(std::move(effects), std::move(checked_labels));
}

template class Povm<2>;
template class Povm<4>;

Ppovm Ppovm::make(std::vector<Mat4> effects, const QubitState& anc_marginal,
                  std::vector<std::string> labels) {
  if (effects.empty()) throw ValidationError("PPOVM has no effects");
  Mat4 total = Mat4::Zero();
  for (std::size_t m = 0; m < effects.size(); ++m) {
    const std::string what = "PPOVM effect " + std::to_string(m);
    require_hermitian(effects[m], what);
    const auto [lo, hi] = spectrum_range(effects[m]);
    (void)hi;
    if (lo < -tol::kPsd) {
      std::ostringstream os;
      os << what << " is not positive semidefinite (min eigenvalue " << lo << ")";
      throw ValidationError(os.str());
    }
    total += effects[m];
  }
  const Mat4 target = kron(Mat2(anc_marginal.matrix().transpose()), Mat2(Mat2::Identity()));
  const double defect = (total - target).cwiseAbs().maxCoeff();
  if (defect > tol::kPovmCompleteness) {
    std::ostringstream os;
    os << "PPOVM effects do not sum to rho_anc^T (x) I (deviation " << defect << ")";
    throw ValidationError(os.str());
  }
  auto checked_labels = default_labels(std::move(labels), effects.size());
  return Ppovm(std::move(effects), anc_marginal, std::move(checked_labels));
}

double state_probability(const Mat2& effect, const QubitState& rho) {
  return (effect * rho.matrix()).trace().real();
}

double state_probability(const Mat4& effect, const BipartiteState& rho) {
  return (effect * rho.matrix()).trace().real();
}

double channel_probability(const Mat4& effect, const QubitChannel& channel) {
  require_hermitian(effect, "process effect");
  const auto [lo, hi] = spectrum_range(effect);
  if (lo < -tol::kPsd) {
    throw ValidationError("process effect is not positive semidefinite");
  }
  if (hi > 1.0 + tol::kPsd || effect.trace().real() > 2.0 + tol::kPsd) {
    throw ValidationError("process effect exceeds the PPOVM normalization rho^T (x) I");
  }
  return (effect * channel.choi()).trace().real();
}

double channel_probability(const Ppovm& ppovm, std::size_t m, const QubitChannel& channel) {
  if (m >= ppovm.size()) throw ValidationError("PPOVM outcome index out of range");
  return (ppovm.effects()[m] * channel.choi()).trace().real();
}

std::vector<double> probabilities(const Ppovm& ppovm, const QubitChannel& channel) {
  std::vector<double> p;
  p.reserve(ppovm.size());
  for (std::size_t m = 0; m < ppovm.size(); ++m) p.push_back(channel_probability(ppovm, m, channel));
  return p;
}

Ppovm ancilla_free_ppovm(const QubitState& rho, const QubitPovm& povm) {
  const Mat2 rt = rho.matrix().transpose();
  std::vector<Mat4> effects;
  for (const auto& e : povm.effects()) effects.push_back(kron(rt, e));
  return Ppovm::make(std::move(effects), rho, povm.labels());
}

Ppovm entangled_ppovm(const TwoQubitPovm& povm) {
  std::vector<Mat4> effects;
  for (const auto& e : povm.effects()) effects.push_back(0.5 * e);
  return Ppovm::make(std::move(effects), QubitState::maximally_mixed(), povm.labels());
}

NormalizedEffect normalize_effect(const Mat4& effect) {
  require_hermitian(effect, "process effect");
  const double weight = effect.trace().real();
  if (!(weight > 0.0)) {
    throw ValidationError("cannot normalize a zero process effect");
  }
  return {BipartiteState::from_matrix(effect / weight), weight};
}

}  // namespace qcb
