#include "qcb/detection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcb/bounds.hpp"
#include "qcb/sampling.hpp"

namespace qcb {

namespace {

void require_weight(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw ValidationError("Werner parameter w must lie in [0, 1]");
  }
}

DetectionVerdict judge(double p, double bound) {
  return p - bound > kDetectionMargin ? DetectionVerdict::NotEntanglementBreaking
                                      : DetectionVerdict::Inconclusive;
}

// Weight times the UE bound of the normalized success effect.
double eb_ceiling(const Mat4& success_effect) {
  const auto [tau, weight] = normalize_effect(success_effect);
  return weight * bound_unital_eb(tau).value;
}

std::uint64_t binomial_draw(sampling::Engine& rng, double p, std::uint64_t shots) {
  std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
  std::uint64_t k = 0;
  for (std::uint64_t s = 0; s < shots; ++s) k += coin(rng) ? 1 : 0;
  return k;
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  return s == Scheme::Entangled ? "entangled" : "ancilla_free";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "entangled") return Scheme::Entangled;
  if (name == "ancilla_free" || name == "ancilla-free") return Scheme::AncillaFree;
  throw ValidationError("unknown scheme '" + std::string(name) +
                        "' (expected entangled or ancilla_free)");
}

std::string_view verdict_name(DetectionVerdict v) {
  return v == DetectionVerdict::NotEntanglementBreaking ? "not-EB" : "inconclusive";
}

Ppovm detection_entangled_ppovm() {
  const Mat4 pplus = BipartiteState::maximally_entangled().matrix();
  return entangled_ppovm(
      TwoQubitPovm::make({pplus, Mat4(Mat4::Identity() - pplus)}, {"P+", "not P+"}));
}

std::array<Ppovm, 3> detection_ancilla_free_ppovms() {
  const auto make = [](const PureState& s, const std::string& label) {
    const Mat2 p = s.projector();
    return ancilla_free_ppovm(QubitState::from_pure(s),
                              QubitPovm::make({p, Mat2(Mat2::Identity() - p)},
                                              {label, label + "-perp"}));
  };
  return {make(PureState::zero(), "0"), make(PureState::plus(), "+"),
          make(PureState::plus_y(), "+y")};
}

BipartiteState detection_ancilla_free_tau() {
  Mat4 m = Mat4::Zero();
  for (const auto& ppovm : detection_ancilla_free_ppovms()) m += ppovm.effects()[0] / 3.0;
  return BipartiteState::from_matrix(m);
}

double prob_entangled_input(double w) {
  require_weight(w);
  return channel_probability(detection_entangled_ppovm(), 0, make_werner(w));
}

double prob_ancilla_free(double w) {
  require_weight(w);
  const QubitChannel channel = make_werner(w);
  double p = 0.0;
  for (const auto& ppovm : detection_ancilla_free_ppovms()) {
    p += channel_probability(ppovm, 0, channel) / 3.0;
  }
  return p;
}

double detection_bound(Scheme scheme) {
  if (scheme == Scheme::Entangled) {
    return eb_ceiling(detection_entangled_ppovm().effects()[0]);
  }
  return bound_unital_eb(detection_ancilla_free_tau()).value;
}

Detection detect_not_eb(double w, Scheme scheme) {
  require_weight(w);
  const double p = scheme == Scheme::Entangled ? prob_entangled_input(w) : prob_ancilla_free(w);
  const double b = detection_bound(scheme);
  return {scheme, w, p, b, judge(p, b)};
}

std::vector<double> uniform_grid(int n) {
  std::vector<double> grid;
  if (n <= 0) return grid;
  if (n == 1) return {0.0};
  for (int i = 0; i < n; ++i) grid.push_back(i == n - 1 ? 1.0 : static_cast<double>(i) / (n - 1));
  return grid;
}

SweepTable threshold_sweep(int n) { return threshold_sweep(uniform_grid(n)); }

SweepTable threshold_sweep(const std::vector<double>& grid) {
  SweepTable table;
  const double b_ent = detection_bound(Scheme::Entangled);
  const double b_af = detection_bound(Scheme::AncillaFree);
  for (double w : grid) {
    require_weight(w);
    const double p_ent = prob_entangled_input(w);
    const double p_af = prob_ancilla_free(w);
    SweepRow row{w, p_ent, p_af, b_ent, b_af, judge(p_ent, b_ent), judge(p_af, b_af)};
    if (!table.threshold_entangled && row.verdict_entangled == DetectionVerdict::NotEntanglementBreaking) {
      table.threshold_entangled = w;
    }
    if (!table.threshold_ancilla_free &&
        row.verdict_ancilla_free == DetectionVerdict::NotEntanglementBreaking) {
      table.threshold_ancilla_free = w;
    }
    table.rows.push_back(row);
  }
  return table;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

SampledDetection detect_sampled(double w, Scheme scheme, std::uint64_t shots, std::uint64_t seed) {
  require_weight(w);
  if (shots == 0) throw ValidationError("finite-sample mode needs at least one shot");
  sampling::Engine rng(seed);
  const QubitChannel channel = make_werner(w);
  std::uint64_t k = 0;
  if (scheme == Scheme::Entangled) {
    k = binomial_draw(rng, channel_probability(detection_entangled_ppovm(), 0, channel), shots);
  } else {
    // Choose one of the three PPOVMs per shot, then draw its outcome.
    const auto ppovms = detection_ancilla_free_ppovms();
    std::array<double, 3> p{};
    for (int m = 0; m < 3; ++m) p[m] = channel_probability(ppovms[m], 0, channel);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t s = 0; s < shots; ++s) {
      const int m = pick(rng);
      k += u(rng) < p[m] ? 1 : 0;
    }
  }
  const Interval ci = wilson_interval(k, shots);
  const double b = detection_bound(scheme);
  const DetectionVerdict verdict = ci.lower - b > kDetectionMargin
                                       ? DetectionVerdict::NotEntanglementBreaking
                                       : DetectionVerdict::Inconclusive;
  return {scheme, w, shots, k, static_cast<double>(k) / static_cast<double>(shots), ci, b, verdict};
}

SampledSweep threshold_sweep_sampled(const std::vector<double>& grid, std::uint64_t shots,
                                     std::uint64_t seed) {
  SampledSweep sweep;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::uint64_t row_seed = sampling::mix_seed(seed, i);
    SampledSweepRow row{grid[i],
                        detect_sampled(grid[i], Scheme::Entangled, shots,
                                       sampling::mix_seed(row_seed, 0)),
                        detect_sampled(grid[i], Scheme::AncillaFree, shots,
                                       sampling::mix_seed(row_seed, 1))};
    if (!sweep.threshold_entangled &&
        row.entangled.verdict == DetectionVerdict::NotEntanglementBreaking) {
      sweep.threshold_entangled = row.w;
    }
    if (!sweep.threshold_ancilla_free &&
        row.ancilla_free.verdict == DetectionVerdict::NotEntanglementBreaking) {
      sweep.threshold_ancilla_free = row.w;
    }
    sweep.rows.push_back(row);
  }
  return sweep;
}

}  // namespace qcb
