#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcb/measurement.hpp"
#include "qcb/sampling.hpp"

using namespace qcb;

TEST(Povm, RejectsIncompleteSets) {
  Mat2 half = Mat2::Identity() / 2;
  EXPECT_NO_THROW(QubitPovm::make({half, half}));
  EXPECT_THROW(QubitPovm::make({half}), ValidationError);
  Mat2 neg;
  neg << 1.5, 0, 0, 1;
  EXPECT_THROW(QubitPovm::make({neg, Mat2(Mat2::Identity() - neg)}), ValidationError);
}

TEST(Povm, DefaultLabelsAreIndices) {
  const auto p = QubitPovm::make({PureState::zero().projector(), PureState::one().projector()});
  ASSERT_EQ(p.labels().size(), 2u);
  EXPECT_EQ(p.labels()[1], "1");
}

TEST(Ppovm, CompletenessIsChecked) {
  const auto rho = QubitState::maximally_mixed();
  const Mat4 s = oracle::tensor(rho.matrix().transpose(), Mat2::Identity());
  EXPECT_NO_THROW(Ppovm::make({s}, rho));
  EXPECT_THROW(Ppovm::make({Mat4(s / 2)}, rho), ValidationError);
}

TEST(ChannelProbability, AncillaFreeIsOutputStatistics) {
  // tr[(rho^T (x) E) J] = tr[E Psi(rho)]
  std::mt19937_64 r(21);
  sampling::Engine rng(21);
  for (int k = 0; k < 20; ++k) {
    const auto ch = sampling::random_channel(ChannelClass::C, rng);
    const auto rho = QubitState::from_matrix(oracle::random_density<2>(r));
    const Mat2 e = PureState(oracle::random_ket(r)).projector();
    const auto ppovm = ancilla_free_ppovm(rho, QubitPovm::make({e, Mat2(Mat2::Identity() - e)}));
    const double direct = (e * oracle::apply_kraus(ch.kraus(), rho.matrix())).trace().real();
    EXPECT_NEAR(channel_probability(ppovm, 0, ch), direct, 1e-13);
  }
}

TEST(ChannelProbability, EntangledIsHalfTheChoiOverlap) {
  // P+ on the output of (id (x) Psi)(P+): weight 1/2 times tr[P+ J] / 2.
  const auto id = make_unitary(Mat2::Identity());
  const Mat4 pplus = BipartiteState::maximally_entangled().matrix();
  const auto ppovm = entangled_ppovm(TwoQubitPovm::make({pplus, Mat4(Mat4::Identity() - pplus)}));
  EXPECT_NEAR(channel_probability(ppovm, 0, id), 1.0, 1e-14);
  EXPECT_NEAR(channel_probability(ppovm, 0, make_werner(0.0)), 0.25, 1e-14);
}

TEST(ChannelProbability, RejectsInvalidStandaloneEffects) {
  const auto id = make_unitary(Mat2::Identity());
  EXPECT_THROW(channel_probability(Mat4(-Mat4::Identity() / 4), id), ValidationError);
  EXPECT_THROW(channel_probability(Mat4(Mat4::Identity()), id), ValidationError);  // trace 4
}

TEST(Ppovm, RandomCompleteness) {
  std::mt19937_64 r(22);
  sampling::Engine rng(22);
  for (int k = 0; k < 100; ++k) {
    const auto ppovm = oracle::random_ppovm(r, 2 + k % 4);
    const auto ch = sampling::random_channel(kAllClasses[k % 5], rng);
    const auto p = probabilities(ppovm, ch);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    for (double pm : p) EXPECT_GE(pm, -1e-12);
  }
}

TEST(NormalizeEffect, WeightAndState) {
  const Mat4 pplus = BipartiteState::maximally_entangled().matrix();
  const auto n = normalize_effect(Mat4(pplus / 2));
  EXPECT_NEAR(n.weight, 0.5, 1e-15);
  EXPECT_LT(oracle::max_abs(Mat4(n.tau.matrix() - pplus)), 1e-15);
  EXPECT_THROW(normalize_effect(Mat4::Zero()), ValidationError);
}
