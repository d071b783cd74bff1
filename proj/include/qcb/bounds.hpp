#pragma once

// Upper bounds on max_{Psi in class} tr[tau J_Psi] for the five channel classes.
//
// With b = b(tau_2) (output-side marginal) and N = N(tau):
//   D   (1/2)(1 + |b|)                                   exact
//   R   (1/2)(1 + s1 + s2 - sgn(det N) s3)               exact
//   UE  (1/2)(1 + s1)
//   GE  (1/2)(1 + sqrt(|b|^2 + s1^2))
//   C   (1/2)(1 + sqrt(|b|^2 + (s1 + s2 + s3)^2)),       R value when b = 0 (exact)
// where s1 >= s2 >= s3 are the singular values of N. Unitary channels only
// realize proper rotations, which is where the sign on s3 comes from; for
// det N <= 0 the R value is the plain Ky Fan norm.

#include <array>
#include <optional>

#include "qcb/channels.hpp"
#include "qcb/qubit_core.hpp"

namespace qcb {

struct BoundReport {
  ChannelClass cls;
  BipartiteState tau;
  double value;
  bool exact;
  /// A channel attaining `value`, present when `exact` is true.
  std::optional<QubitChannel> witness;
};

BoundReport bound_depolarizing(const BipartiteState& tau);
BoundReport bound_unital(const BipartiteState& tau);
BoundReport bound_unital_eb(const BipartiteState& tau);
BoundReport bound_general_eb(const BipartiteState& tau);
BoundReport bound_all_channels(const BipartiteState& tau);
BoundReport bound(const BipartiteState& tau, ChannelClass cls);

/// Fully entangled fraction, max over local unitaries of <psi+| . |psi+>.
/// Equals bound_unital(tau).value / 2.
double fef(const BipartiteState& tau);

/// Values ordered as kAllClasses (D, R, UE, GE, C).
struct DominanceReport {
  std::array<BoundReport, 5> reports;

  double value(ChannelClass cls) const;
};

/// Computes all five bounds and checks UE <= R <= C, UE <= GE <= C and
/// D <= GE within 1e-12; throws std::logic_error on a violation.
DominanceReport bound_dominance_check(const BipartiteState& tau);

/// tr[tau J_Psi]
double objective(const BipartiteState& tau, const QubitChannel& channel);

}  // namespace qcb
