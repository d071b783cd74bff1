#pragma once

// Qubit channels in Kraus, Pauli-transfer-matrix and Choi form.
//
// Conventions
//   Choi:  J = (id (x) Psi)(P'+), P'+ = sum_ij |i><j| (x) |i><j|; the first
//          factor is the reference side, tr J = 2.
//   PTM:   T_{mu nu} = (1/2) tr[sigma_mu Psi(sigma_nu)], mu, nu = 0..3.
//   Both are related by J = (1/2) sum_{mu nu} T_{mu nu} sigma_nu^T (x) sigma_mu.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcb/qubit_core.hpp"

namespace qcb {

/// The five channel classes: depolarizing (D), random unitary = unital (R),
/// unital entanglement breaking (UE), entanglement breaking (GE) and all
/// channels (C).
enum class ChannelClass { D, R, UE, GE, C };

inline constexpr std::array<ChannelClass, 5> kAllClasses{ChannelClass::D, ChannelClass::R,
                                                         ChannelClass::UE, ChannelClass::GE,
                                                         ChannelClass::C};

std::string_view class_name(ChannelClass cls);
/// Accepts "D", "R", "UE", "GE", "C"; throws ValidationError otherwise.
ChannelClass parse_channel_class(std::string_view name);

enum class Representation { Kraus, Ptm, Choi };

Mat4 choi_from_kraus(std::span<const Mat2> kraus);
Mat4 choi_from_ptm(const Real44& t);
Real44 ptm_from_choi(const Mat4& j);
/// Eigendecomposition of J; eigenvalues below `cutoff` are dropped.
std::vector<Mat2> kraus_from_choi(const Mat4& j, double cutoff = 1e-10);

/// Immutable, validated qubit channel.
class QubitChannel {
 public:
  static QubitChannel from_kraus(std::vector<Mat2> kraus,
                                 std::optional<ChannelClass> tag = std::nullopt);
  /// Requires the first row to be (1, 0, 0, 0) within 1e-12.
  static QubitChannel from_ptm(const Real44& t, std::optional<ChannelClass> tag = std::nullopt);
  static QubitChannel from_choi(const Mat4& j, std::optional<ChannelClass> tag = std::nullopt);

  const Mat4& choi() const { return choi_; }
  const Real44& ptm() const { return ptm_; }
  const std::vector<Mat2>& kraus() const { return kraus_; }
  Representation representation() const { return representation_; }
  std::optional<ChannelClass> class_tag() const { return tag_; }
  QubitChannel with_tag(std::optional<ChannelClass> tag) const;

  Mat2 apply(const Mat2& rho) const;
  QubitState apply(const QubitState& rho) const;
  /// (id (x) Psi)(rho) for a two-qubit operator.
  Mat4 apply_extended(const Mat4& rho) const;

  bool is_unital(double tolerance = 1e-9) const;

 private:
  QubitChannel(Mat4 choi, Real44 ptm, std::vector<Mat2> kraus, Representation rep,
               std::optional<ChannelClass> tag);

  Mat4 choi_;
  Real44 ptm_;
  std::vector<Mat2> kraus_;
  Representation representation_;
  std::optional<ChannelClass> tag_;
};

/// outer o inner
QubitChannel compose(const QubitChannel& outer, const QubitChannel& inner);

/// Psi(A) = tr(A) rho.
QubitChannel make_depolarizing(const QubitState& rho);
QubitChannel make_unitary(const Mat2& u);
/// sum_x p_x U_x . U_x^dagger; weights non-negative and summing to one.
QubitChannel make_random_unitary(std::span<const double> weights, std::span<const Mat2> unitaries);

struct OrthonormalBasis {
  PureState first;
  PureState second;
};
/// Throws unless the two states are orthogonal within 1e-12.
OrthonormalBasis make_basis(const PureState& first, const PureState& second);
inline OrthonormalBasis computational_basis() { return {PureState::zero(), PureState::one()}; }

/// Psi(A) = |psi><x0|A|x0><psi| + |phi><x1|A|x1><phi|.
QubitChannel make_extreme_cq(const PureState& psi, const PureState& phi,
                             const OrthonormalBasis& basis);

/// Psi_V o Lambda o Psi_W with Lambda's PTM
///   [[1, 0, 0, 0], [0, cos u1, 0, 0], [0, 0, cos u2, 0],
///    [sin u1 sin u2, 0, 0, cos u1 cos u2]].
/// Canonical ranges are u1 in [0, 2 pi), u2 in [0, pi).
struct GeneralizedExtremePoint {
  Mat2 v = Mat2::Identity();
  Mat2 w = Mat2::Identity();
  double u1 = 0.0;
  double u2 = 0.0;

  Real44 lambda_ptm() const;
};
QubitChannel make_generalized_extreme(const GeneralizedExtremePoint& g);

/// Psi_V o Lambda o Psi_W with Lambda = diag(1, lambda). Requires the
/// complete-positivity conditions 1 +- l3 >= |l1 +- l2|.
QubitChannel make_unital(const Mat2& v, const Real3& lambda, const Mat2& w,
                         std::optional<ChannelClass> tag = std::nullopt);

/// w id + (1 - w) Psi_{I/2}, w in [0, 1].
QubitChannel make_werner(double w);

struct UnitalCanonicalForm {
  Mat2 v;
  Mat2 w;
  Real3 lambda;  // |l1| >= |l2| >= |l3|, signs carry the orientation

  QubitChannel recompose() const;
};

/// PTM block = O(V) diag(lambda) O(W) with O(V), O(W) proper rotations.
/// Throws ValidationError when the channel is not unital within 1e-9.
UnitalCanonicalForm unital_canonical_decomposition(const QubitChannel& channel);

/// sum |lambda_i| <= 1 + 1e-9 for a unital channel.
bool is_entanglement_breaking_unital(const QubitChannel& channel);

}  // namespace qcb
