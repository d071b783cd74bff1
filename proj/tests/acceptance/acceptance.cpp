// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria (0 when all pass). Tolerances and sample sizes are fixed
// below and are not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "qcb/bounds.hpp"
#include "qcb/convertibility.hpp"
#include "qcb/detection.hpp"
#include "qcb/measurement.hpp"
#include "qcb/oracle.hpp"
#include "qcb/sampling.hpp"

using namespace qcb;

namespace {

// 1. bound soundness
constexpr int kSoundnessTau = 100;
constexpr int kSoundnessChannels = 1000;
constexpr double kSoundnessSlack = 1e-9;
constexpr double kSoundnessSeconds = 60.0;
// 2. exactness
constexpr int kExactnessTau = 100;
constexpr double kExactnessTol = 1e-6;
constexpr double kExactnessSeconds = 300.0;
// 3. FEF
constexpr int kFefTau = 50;
constexpr double kFefTol = 1e-6;
// 4. local-unitary invariance
constexpr int kInvarianceSamples = 1000;
constexpr double kInvarianceTol = 1e-9;
// 5. singular values on the (x, y) grid
constexpr int kGridSide = 50;
constexpr double kSingularTol = 1e-9;
// 6. achievers
constexpr int kAchieverInstances = 500;
constexpr double kAchieverTol = 1e-8;
// 7. crossings
constexpr int kCompareGrid = 1000;
constexpr double kCrossingTol = 1e-8;
// 8. Werner detection
constexpr double kDetectionProbTol = 1e-12;
constexpr int kDetectionGrid = 10001;  // step 1e-4
// 9. orthogonal targets
constexpr int kOrthogonalGrid = 1000;
constexpr double kOrthogonalTol = 1e-12;
// 10. PPOVM completeness
constexpr int kPpovmPairs = 200;
constexpr double kPpovmTol = 1e-9;

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ConversionInstance random_instance(std::mt19937_64& rng) {
  return {PureState(oracle::random_ket(rng)), PureState(oracle::random_ket(rng)),
          PureState(oracle::random_ket(rng)), PureState(oracle::random_ket(rng))};
}

double kraus_fidelity(const ConversionInstance& inst, const QubitChannel& ch) {
  const Vec2 e = inst.e().amplitudes(), f = inst.f().amplitudes();
  const Mat2 a = oracle::apply_kraus(ch.kraus(), inst.psi().projector());
  const Mat2 b = oracle::apply_kraus(ch.kraus(), inst.phi().projector());
  return 0.5 * (e.adjoint() * a * e)(0, 0).real() + 0.5 * (f.adjoint() * b * f)(0, 0).real();
}

Outcome soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = -INFINITY;
  int violations = 0;
  for (const auto cls : kAllClasses) {
    const auto r = dominance_sweep(cls, kSoundnessTau, kSoundnessChannels,
                                   sampling::mix_seed(kSeed, static_cast<std::uint64_t>(cls)));
    worst = std::max(worst, r.max_violation);
    violations += r.violations;
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && worst <= kSoundnessSlack && secs < kSoundnessSeconds,
          fmt::format("5 classes x {} tau x {} channels, max(value - bound) = {:.3e}, "
                      "violations = {}, {:.1f} s",
                      kSoundnessTau, kSoundnessChannels, worst, violations, secs)};
}

Outcome exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  sampling::Engine rng(sampling::mix_seed(kSeed, 2));
  double worst = 0.0;
  for (const auto cls : {ChannelClass::D, ChannelClass::R, ChannelClass::C}) {
    for (int k = 0; k < kExactnessTau; ++k) {
      const auto tau = cls == ChannelClass::C ? sampling::random_state_with_mixed_output_marginal(rng)
                                              : sampling::random_bipartite_state(rng);
      OracleConfig config;
      config.cls = cls;
      config.seed = sampling::mix_seed(kSeed, 100 + k);
      const double found = maximize(tau, config).best_value;
      worst = std::max(worst, std::abs(found - bound(tau, cls).value));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= kExactnessTol && secs < kExactnessSeconds,
          fmt::format("D, R and C (tau_2 = I/2) on {} tau each, max |oracle - bound| = {:.3e}, "
                      "{:.1f} s",
                      kExactnessTau, worst, secs)};
}

Outcome fef_values() {
  const double p = fef(BipartiteState::maximally_entangled());
  const double m = fef(BipartiteState::maximally_mixed());
  double worst = std::max(std::abs(p - 1.0), std::abs(m - 0.25));
  sampling::Engine rng(sampling::mix_seed(kSeed, 3));
  for (int k = 0; k < kFefTau; ++k) {
    const auto tau = sampling::random_bipartite_state(rng);
    worst = std::max(worst, std::abs(fef(tau) - oracle::fef_by_quaternion(tau.matrix())));
  }
  return {worst <= kFefTol,
          fmt::format("fef(P+) = {:.15f}, fef(I/4) = {:.15f}, max deviation from direct "
                      "maximization over {} tau = {:.3e}",
                      p, m, kFefTau, worst)};
}

Outcome invariance() {
  sampling::Engine rng(sampling::mix_seed(kSeed, 4));
  double worst = 0.0;
  for (int k = 0; k < kInvarianceSamples; ++k) {
    const auto rho = sampling::random_bipartite_state(rng);
    const Mat4 v = kron(sampling::haar_unitary(rng), sampling::haar_unitary(rng));
    const auto rotated = BipartiteState::from_matrix(v * rho.matrix() * v.adjoint());
    worst = std::max(worst, (singular_values(correlation_matrix(rho)) -
                             singular_values(correlation_matrix(rotated)))
                                .cwiseAbs()
                                .maxCoeff());
  }
  return {worst <= kInvarianceTol,
          fmt::format("{} samples, max singular-value difference = {:.3e}", kInvarianceSamples, worst)};
}

Outcome singular_value_grid() {
  double worst = 0.0;
  for (int i = 0; i < kGridSide; ++i) {
    for (int j = 0; j < kGridSide; ++j) {
      const double x = static_cast<double>(i) / (kGridSide - 1);
      const double y = static_cast<double>(j) / (kGridSide - 1);
      const auto inst = ConversionInstance::from_overlaps(x, y);
      const Real3 numeric = oracle::singular_values(oracle::correlation(build_tau(inst).matrix()));
      worst = std::max(worst, (tau_singular_values(inst) - numeric).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= kSingularTol,
          fmt::format("{0}x{0} grid with edges, max deviation from numeric SVD = {1:.3e}", kGridSide,
                      worst)};
}

Outcome achievers() {
  std::mt19937_64 rng(sampling::mix_seed(kSeed, 6));
  double worst_value = 0.0, worst_eq = 0.0;
  for (int k = 0; k < kAchieverInstances; ++k) {
    const auto inst = random_instance(rng);
    for (const auto cls : {ChannelClass::D, ChannelClass::R, ChannelClass::UE}) {
      const double got = kraus_fidelity(inst, build_achiever(inst, cls));
      worst_value = std::max(worst_value, std::abs(got - convertibility_value(inst, cls)));
    }
  }
  std::vector<ConversionInstance> feasible;
  for (int k = 0; k < kAchieverInstances; ++k) {
    auto inst = random_instance(rng);
    if (inst.x() > inst.y()) inst = ConversionInstance(inst.e(), inst.f(), inst.psi(), inst.phi());
    feasible.push_back(inst);
  }
  for (const auto& [x, y] : std::vector<std::pair<double, double>>{
           {0.0, 0.0}, {0.0, 1.0}, {0.3, 1.0}, {1.0, 1.0}, {0.5, 0.5}, {0.0, 0.4}}) {
    feasible.push_back(ConversionInstance::from_overlaps(x, y));
  }
  for (const auto& inst : feasible) {
    const auto ch = build_achiever(inst, ChannelClass::C);
    worst_eq = std::max(worst_eq, oracle::max_abs(Mat2(
                                      oracle::apply_kraus(ch.kraus(), inst.psi().projector()) -
                                      inst.e().projector())));
    worst_eq = std::max(worst_eq, oracle::max_abs(Mat2(
                                      oracle::apply_kraus(ch.kraus(), inst.phi().projector()) -
                                      inst.f().projector())));
  }
  return {worst_value <= kAchieverTol && worst_eq <= kAchieverTol,
          fmt::format("D/R/UE on {} instances: max |fidelity - value| = {:.3e}; C on {} feasible "
                      "instances: max conversion residual = {:.3e}",
                      kAchieverInstances, worst_value, feasible.size(), worst_eq)};
}

Outcome crossings() {
  struct Case {
    const char* pair;
    ChannelClass a, b;
    const char* family;
    std::vector<double> expected;
  };
  const double r3 = std::sqrt(3.0), r2 = std::sqrt(2.0), r5 = std::sqrt(5.0);
  const std::vector<Case> cases{
      {"UE,D", ChannelClass::UE, ChannelClass::D, "x=1/sqrt2", {1 / r3}},
      {"R,D", ChannelClass::R, ChannelClass::D, "x=1/sqrt2", {1 / std::sqrt(4 - 2 * r2)}},
      {"R,GE", ChannelClass::R, ChannelClass::GE, "x=1/sqrt2", {0.0, 1 / std::sqrt(5 - 2 * r3)}},
      {"R,GE", ChannelClass::R, ChannelClass::GE, "y=1/sqrt2", {1 / r5, 2 / r5}},
  };
  double worst = 0.0;
  bool counts_ok = true;
  std::string found;
  for (const auto& c : cases) {
    const auto r = compare_classes(parse_family(c.family), c.a, c.b, kCompareGrid);
    found += fmt::format(" {} {}:", c.pair, c.family);
    for (double z : r.zeros) found += fmt::format(" {:.10f}", z);
    if (r.zeros.size() != c.expected.size()) {
      counts_ok = false;
      continue;
    }
    for (std::size_t i = 0; i < r.zeros.size(); ++i) {
      worst = std::max(worst, std::abs(r.zeros[i] - c.expected[i]));
    }
  }
  return {counts_ok && worst <= kCrossingTol,
          fmt::format("max |zero - closed form| = {:.3e};{}", worst, found)};
}

Outcome werner() {
  const auto ent = detection_entangled_ppovm();
  const auto af = detection_ancilla_free_ppovms();
  double worst_p = 0.0;
  int mismatches = 0;
  for (int i = 0; i < kDetectionGrid; ++i) {
    const double w = static_cast<double>(i) / (kDetectionGrid - 1);
    const auto ch = make_werner(w);
    double p_af = 0.0;
    for (const auto& p : af) p_af += channel_probability(p, 0, ch) / 3.0;
    const double p_ent = channel_probability(ent, 0, ch);
    worst_p = std::max({worst_p, std::abs(p_ent - (1 + 3 * w) / 4), std::abs(p_af - (1 + w) / 2),
                        std::abs(prob_entangled_input(w) - (1 + 3 * w) / 4),
                        std::abs(prob_ancilla_free(w) - (1 + w) / 2)});
    const auto lambda = unital_canonical_decomposition(ch).lambda;
    const bool not_eb = lambda.cwiseAbs().sum() > 1.0;
    const bool above = w > 1.0 / 3.0;
    for (const auto s : {Scheme::Entangled, Scheme::AncillaFree}) {
      const bool flagged = detect_not_eb(w, s).verdict == DetectionVerdict::NotEntanglementBreaking;
      if (flagged != above || flagged != not_eb) ++mismatches;
    }
  }
  return {worst_p <= kDetectionProbTol && mismatches == 0,
          fmt::format("{} grid points, max probability error = {:.3e}, verdict mismatches = {}",
                      kDetectionGrid, worst_p, mismatches)};
}

Outcome orthogonal_targets() {
  double worst = 0.0;
  for (int i = 0; i < kOrthogonalGrid; ++i) {
    const double x = static_cast<double>(i) / (kOrthogonalGrid - 1);
    const auto inst = ConversionInstance::from_overlaps(x, 0.0);
    const double expected = 0.5 * (1 + std::sqrt(1 - x * x));
    for (const auto cls : {ChannelClass::R, ChannelClass::UE, ChannelClass::GE, ChannelClass::C}) {
      worst = std::max({worst, std::abs(convertibility_value(inst, cls) - expected),
                        std::abs(convertibility_value_from_tau(inst, cls) - expected)});
    }
  }
  return {worst <= kOrthogonalTol,
          fmt::format("R, UE, GE, C on {} x values (closed form and generic bound), max deviation = {:.3e}", kOrthogonalGrid, worst)};
}

Outcome ppovm_completeness() {
  std::mt19937_64 rng(sampling::mix_seed(kSeed, 10));
  sampling::Engine crng(sampling::mix_seed(kSeed, 11));
  double worst = 0.0;
  for (int k = 0; k < kPpovmPairs; ++k) {
    const auto ppovm = oracle::random_ppovm(rng, 2 + k % 5);
    const auto ch = sampling::random_channel(kAllClasses[k % 5], crng);
    double total = 0.0;
    for (std::size_t m = 0; m < ppovm.size(); ++m) total += channel_probability(ppovm, m, ch);
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return {worst <= kPpovmTol,
          fmt::format("{} random pairs, max |sum - 1| = {:.3e}", kPpovmPairs, worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"bound soundness", soundness},
      {"exactness", exactness},
      {"fully entangled fraction", fef_values},
      {"local-unitary invariance", invariance},
      {"convertibility singular values", singular_value_grid},
      {"achiever certificates", achievers},
      {"comparison thresholds", crossings},
      {"Werner detection", werner},
      {"orthogonal targets", orthogonal_targets},
      {"PPOVM completeness", ppovm_completeness},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    fmt::print("criterion {:>2} {:<32} {}  {}\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
               o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed;
}
