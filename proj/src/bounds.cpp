#include "qcb/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcb {

namespace {

constexpr double kDominanceSlack = 1e-12;
constexpr double kMixedMarginal = 1e-9;

BlochVector output_marginal_bloch(const BipartiteState& tau) {
  return bloch_vector(partial_trace(tau, Subsystem::First));
}

// Proper rotation O maximizing tr[O D N], D = diag(1, -1, 1).
Real33 best_rotation(const CorrelationMatrix& n) {
  const Real33 d = Real3(1.0, -1.0, 1.0).asDiagonal();
  const Svd3 svd = jacobi_svd(d * n);
  const double sign = svd.u.determinant() * svd.v.determinant() < 0.0 ? -1.0 : 1.0;
  return svd.v * Real3(1.0, 1.0, sign).asDiagonal() * svd.u.transpose();
}

QubitChannel unital_witness(const BipartiteState& tau) {
  return make_unitary(unitary_from_rotation(best_rotation(correlation_matrix(tau))));
}

}  // namespace

double objective(const BipartiteState& tau, const QubitChannel& channel) {
  return (tau.matrix() * channel.choi()).trace().real();
}

BoundReport bound_depolarizing(const BipartiteState& tau) {
  const BlochVector b = output_marginal_bloch(tau);
  const double len = euclidean_norm(b);
  const BlochVector target = len > 0.0 ? BlochVector(b / len) : BlochVector::Zero();
  return {ChannelClass::D, tau, 0.5 * (1.0 + len), true,
          make_depolarizing(QubitState::from_bloch(target))};
}

BoundReport bound_unital(const BipartiteState& tau) {
  const double reach = rotation_reachable_kyfan(correlation_matrix(tau));
  return {ChannelClass::R, tau, 0.5 * (1.0 + reach), true, unital_witness(tau)};
}

BoundReport bound_unital_eb(const BipartiteState& tau) {
  const double s1 = spectral_norm(correlation_matrix(tau));
  return {ChannelClass::UE, tau, 0.5 * (1.0 + s1), false, std::nullopt};
}

BoundReport bound_general_eb(const BipartiteState& tau) {
  const double b = euclidean_norm(output_marginal_bloch(tau));
  const double s1 = spectral_norm(correlation_matrix(tau));
  return {ChannelClass::GE, tau, 0.5 * (1.0 + std::hypot(b, s1)), false, std::nullopt};
}

BoundReport bound_all_channels(const BipartiteState& tau) {
  const double b = euclidean_norm(output_marginal_bloch(tau));
  if (b <= kMixedMarginal) {
    BoundReport r = bound_unital(tau);
    r.cls = ChannelClass::C;
    return r;
  }
  const double kf = kyfan_norm(correlation_matrix(tau));
  return {ChannelClass::C, tau, 0.5 * (1.0 + std::hypot(b, kf)), false, std::nullopt};
}

BoundReport bound(const BipartiteState& tau, ChannelClass cls) {
  switch (cls) {
    case ChannelClass::D: return bound_depolarizing(tau);
    case ChannelClass::R: return bound_unital(tau);
    case ChannelClass::UE: return bound_unital_eb(tau);
    case ChannelClass::GE: return bound_general_eb(tau);
    case ChannelClass::C: return bound_all_channels(tau);
  }
  throw ValidationError("unknown channel class");
}

double fef(const BipartiteState& tau) {
  return 0.5 * (1.0 + rotation_reachable_kyfan(correlation_matrix(tau))) / 2.0;
}

double DominanceReport::value(ChannelClass cls) const {
  return reports[static_cast<std::size_t>(cls)].value;
}

DominanceReport bound_dominance_check(const BipartiteState& tau) {
  DominanceReport out{{bound_depolarizing(tau), bound_unital(tau), bound_unital_eb(tau),
                       bound_general_eb(tau), bound_all_channels(tau)}};
  using C = ChannelClass;
  const std::array<std::pair<C, C>, 5> chain{{{C::UE, C::R},
                                              {C::R, C::C},
                                              {C::UE, C::GE},
                                              {C::GE, C::C},
                                              {C::D, C::GE}}};
  for (const auto& [lo, hi] : chain) {
    if (out.value(lo) > out.value(hi) + kDominanceSlack) {
      throw std::logic_error("bound ordering violated: " + std::string(class_name(lo)) + " = " +
                             std::to_string(out.value(lo)) + " > " +
                             std::string(class_name(hi)) + " = " + std::to_string(out.value(hi)));
    }
  }
  return out;
}

}  // namespace qcb
