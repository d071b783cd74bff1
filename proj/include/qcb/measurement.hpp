#pragma once

// POVMs on states and process POVMs (PPOVMs) on qubit channels.
//
// A PPOVM {S_m} on a single-qubit ancilla satisfies sum_m S_m = rho_anc^T (x) I
// and assigns p_m(Psi) = tr[S_m J_Psi]. The transpose is taken in the
// computational basis; e.g. preparing |+y> = (|0> + i|1>)/sqrt2 on the
// reference side contributes |+y><+y|^T = |-y><-y| to the first factor.

#include <cstddef>
#include <string>
#include <vector>

#include "qcb/channels.hpp"
#include "qcb/qubit_core.hpp"

namespace qcb {

namespace tol {
inline constexpr double kPovmCompleteness = 1e-9;
}  // namespace tol

template <int Dim>
class Povm {
 public:
  using Effect = Eigen::Matrix<Complex, Dim, Dim>;

  /// Each effect Hermitian with spectrum in [-1e-9, 1 + 1e-9]; effects sum to
  /// the identity within 1e-9. Empty labels are replaced by "0", "1", ...
  static Povm make(std::vector<Effect> effects, std::vector<std::string> labels = {});

  const std::vector<Effect>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return effects_.size(); }

 private:
  Povm(std::vector<Effect> effects, std::vector<std::string> labels)
      : effects_(std::move(effects)), labels_(std::move(labels)) {}

  std::vector<Effect> effects_;
  std::vector<std::string> labels_;
};

using QubitPovm = Povm<2>;
using TwoQubitPovm = Povm<4>;

class Ppovm {
 public:
  /// Each S_m PSD within 1e-9 and sum_m S_m = anc_marginal^T (x) I within 1e-9.
  static Ppovm make(std::vector<Mat4> effects, const QubitState& anc_marginal,
                    std::vector<std::string> labels = {});

  const std::vector<Mat4>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const QubitState& anc_marginal() const { return anc_marginal_; }
  std::size_t size() const { return effects_.size(); }

 private:
  Ppovm(std::vector<Mat4> effects, QubitState anc, std::vector<std::string> labels)
      : effects_(std::move(effects)), labels_(std::move(labels)), anc_marginal_(std::move(anc)) {}

  std::vector<Mat4> effects_;
  std::vector<std::string> labels_;
  QubitState anc_marginal_;
};

/// tr[E rho]
double state_probability(const Mat2& effect, const QubitState& rho);
double state_probability(const Mat4& effect, const BipartiteState& rho);

/// tr[S J_Psi] for a standalone process effect. S must be PSD with largest
/// eigenvalue at most 1 and trace at most 2 (within 1e-9), which every
/// element of a one-qubit-ancilla PPOVM satisfies.
double channel_probability(const Mat4& effect, const QubitChannel& channel);
/// tr[S_m J_Psi] for an element of a validated PPOVM.
double channel_probability(const Ppovm& ppovm, std::size_t m, const QubitChannel& channel);
std::vector<double> probabilities(const Ppovm& ppovm, const QubitChannel& channel);

/// {rho^T (x) E_m}: input rho, no ancilla.
Ppovm ancilla_free_ppovm(const QubitState& rho, const QubitPovm& povm);
/// {E_m / 2}: input half of P+, joint measurement E_m on reference and output.
Ppovm entangled_ppovm(const TwoQubitPovm& povm);

struct NormalizedEffect {
  BipartiteState tau;  // S / tr S
  double weight;       // tr S
};
/// Throws ValidationError for a zero (or non-PSD) effect.
NormalizedEffect normalize_effect(const Mat4& effect);

}  // namespace qcb
