#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcb/bounds.hpp"
#include "qcb/detection.hpp"
#include "qcb/sampling.hpp"

using namespace qcb;

namespace {

BipartiteState product00() {
  const auto z = QubitState::from_pure(PureState::zero());
  return BipartiteState::product(z, z);
}

// tr[tau J] with J built from the Kraus operators in test code.
double direct_objective(const BipartiteState& tau, const QubitChannel& ch) {
  return (tau.matrix() * oracle::choi_of(ch.kraus())).trace().real();
}

}  // namespace

TEST(Bounds, MaximallyEntangledRow) {
  const auto r = bound_dominance_check(BipartiteState::maximally_entangled());
  EXPECT_NEAR(r.value(ChannelClass::D), 0.5, 1e-14);
  EXPECT_NEAR(r.value(ChannelClass::R), 2.0, 1e-14);
  EXPECT_NEAR(r.value(ChannelClass::UE), 1.0, 1e-14);
  EXPECT_NEAR(r.value(ChannelClass::GE), 1.0, 1e-14);
  EXPECT_NEAR(r.value(ChannelClass::C), 2.0, 1e-14);
  EXPECT_TRUE(r.reports[static_cast<int>(ChannelClass::C)].exact);
}

TEST(Bounds, MaximallyMixedIsHalfEverywhere) {
  const auto r = bound_dominance_check(BipartiteState::maximally_mixed());
  for (const auto cls : kAllClasses) EXPECT_NEAR(r.value(cls), 0.5, 1e-14) << class_name(cls);
}

TEST(Bounds, ProductZeroZero) {
  const auto tau = product00();
  EXPECT_NEAR(bound_depolarizing(tau).value, 1.0, 1e-14);
  EXPECT_NEAR(bound_general_eb(tau).value, 0.5 * (1 + std::sqrt(2.0)), 1e-14);
  const auto c = bound_all_channels(tau);
  EXPECT_NEAR(c.value, 0.5 * (1 + std::sqrt(2.0)), 1e-14);
  EXPECT_FALSE(c.exact);
}

TEST(Bounds, DetectionTauGivesTwoThirds) {
  EXPECT_NEAR(bound_unital_eb(detection_ancilla_free_tau()).value, 2.0 / 3.0, 1e-14);
}

TEST(Bounds, DepolarizingEqualsTopEigenvalueOfOutputMarginal) {
  sampling::Engine rng(31);
  for (int k = 0; k < 100; ++k) {
    const auto tau = sampling::random_bipartite_state(rng);
    const Mat2 t2 = partial_trace_first(tau.matrix());
    const double top = Eigen::SelfAdjointEigenSolver<Mat2>(t2).eigenvalues().maxCoeff();
    EXPECT_NEAR(bound_depolarizing(tau).value, top, 1e-12);
  }
}

TEST(Bounds, UnitalEqualsTwiceQuaternionFef) {
  sampling::Engine rng(32);
  int positive_det = 0;
  for (int k = 0; k < 300; ++k) {
    const auto tau = sampling::random_bipartite_state(rng);
    if (correlation_matrix(tau).determinant() > 0) ++positive_det;
    EXPECT_NEAR(bound_unital(tau).value, 2.0 * oracle::fef_by_quaternion(tau.matrix()), 1e-10);
    EXPECT_NEAR(fef(tau), oracle::fef_by_quaternion(tau.matrix()), 1e-10);
  }
  // The sample must exercise both orientations of N.
  EXPECT_GT(positive_det, 0);
}

TEST(Bounds, WitnessesAttainExactValues) {
  sampling::Engine rng(33);
  for (int k = 0; k < 100; ++k) {
    const auto tau = sampling::random_bipartite_state(rng);
    for (const auto& r : {bound_depolarizing(tau), bound_unital(tau)}) {
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_NEAR(direct_objective(tau, *r.witness), r.value, 1e-12);
    }
  }
  const auto tau = sampling::random_state_with_mixed_output_marginal(rng);
  const auto c = bound_all_channels(tau);
  EXPECT_TRUE(c.exact);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_NEAR(direct_objective(tau, *c.witness), c.value, 1e-12);
}

TEST(Bounds, SoundAgainstRandomChannels) {
  sampling::Engine rng(34);
  for (const auto cls : kAllClasses) {
    for (int k = 0; k < 40; ++k) {
      const auto tau = sampling::random_bipartite_state(rng);
      const double b = bound(tau, cls).value;
      for (int c = 0; c < 25; ++c) {
        EXPECT_LE(direct_objective(tau, sampling::random_channel(cls, rng)), b + 1e-9)
            << class_name(cls);
      }
    }
  }
}

TEST(Bounds, FefRangeAndLocalInvariance) {
  sampling::Engine rng(35);
  for (int k = 0; k < 100; ++k) {
    const auto tau = sampling::random_bipartite_state(rng);
    const double f = fef(tau);
    EXPECT_GE(f, 0.25 - 1e-12);
    EXPECT_LE(f, 1.0 + 1e-12);
    const Mat4 u = kron(Mat2::Identity(), sampling::haar_unitary(rng));
    EXPECT_NEAR(fef(BipartiteState::from_matrix(u * tau.matrix() * u.adjoint())), f, 1e-9);
  }
  EXPECT_NEAR(fef(BipartiteState::maximally_entangled()), 1.0, 1e-14);
  EXPECT_NEAR(fef(BipartiteState::maximally_mixed()), 0.25, 1e-14);
}

TEST(Bounds, ObjectiveMatchesDirectTrace) {
  sampling::Engine rng(36);
  const auto tau = sampling::random_bipartite_state(rng);
  const auto ch = sampling::random_channel(ChannelClass::C, rng);
  EXPECT_NEAR(objective(tau, ch), direct_objective(tau, ch), 1e-13);
}
