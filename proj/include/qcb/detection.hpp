#pragma once

// Certifying that the Werner channel Psi_w = w id + (1 - w) Psi_{I/2} is not
// entanglement breaking, using the UE bound as the yardstick.
//
// Two schemes:
//   entangled     one PPOVM {P+/2, (I - P+)/2}; success = first outcome
//   ancilla-free  three PPOVMs {rho^T (x) rho, rho^T (x) rho-perp} with rho in
//                 {|0>, |+>, |+y>}, one chosen uniformly per shot;
//                 success = first outcome
// An EB channel has success probability at most weight * UE bound of the
// normalized success effect; exceeding it certifies not-EB.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qcb/channels.hpp"
#include "qcb/measurement.hpp"

namespace qcb {

enum class Scheme { Entangled, AncillaFree };
std::string_view scheme_name(Scheme s);
/// "entangled" or "ancilla_free" (also "ancilla-free").
Scheme parse_scheme(std::string_view name);

enum class DetectionVerdict { NotEntanglementBreaking, Inconclusive };
std::string_view verdict_name(DetectionVerdict v);

/// Difference p - bound above which a verdict of not-EB is issued.
inline constexpr double kDetectionMargin = 1e-12;

Ppovm detection_entangled_ppovm();
std::array<Ppovm, 3> detection_ancilla_free_ppovms();
/// Average of the three success effects (a state).
BipartiteState detection_ancilla_free_tau();

/// Success probability of the entangled scheme, (1 + 3w)/4.
double prob_entangled_input(double w);
/// Success probability of the ancilla-free scheme, (1 + w)/2.
double prob_ancilla_free(double w);
/// Largest success probability any EB channel can reach: 1/2 and 2/3.
double detection_bound(Scheme scheme);

struct Detection {
  Scheme scheme;
  double w;
  double probability;
  double bound;
  DetectionVerdict verdict;
};

/// Throws ValidationError for w outside [0, 1].
Detection detect_not_eb(double w, Scheme scheme);

struct SweepRow {
  double w;
  double p_entangled;
  double p_ancilla_free;
  double bound_entangled;
  double bound_ancilla_free;
  DetectionVerdict verdict_entangled;
  DetectionVerdict verdict_ancilla_free;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  /// First grid point flagged not-EB, per scheme.
  std::optional<double> threshold_entangled;
  std::optional<double> threshold_ancilla_free;
};

/// Uniform grid w_i = i / (n - 1); n = 1 gives {0}, n = 0 an empty table.
SweepTable threshold_sweep(int n);
SweepTable threshold_sweep(const std::vector<double>& grid);

struct Interval {
  double lower;
  double upper;
};

/// Wilson score interval for k successes in n trials at normal quantile z.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct SampledDetection {
  Scheme scheme;
  double w;
  std::uint64_t shots;
  std::uint64_t successes;
  double estimate;
  Interval interval;
  double bound;
  /// not-EB only when the whole interval lies above the bound.
  DetectionVerdict verdict;
};

/// Simulates `shots` independent runs of the scheme on Psi_w.
SampledDetection detect_sampled(double w, Scheme scheme, std::uint64_t shots, std::uint64_t seed);

struct SampledSweepRow {
  double w;
  SampledDetection entangled;
  SampledDetection ancilla_free;
};

struct SampledSweep {
  std::vector<SampledSweepRow> rows;
  std::optional<double> threshold_entangled;
  std::optional<double> threshold_ancilla_free;
};

/// Row i draws from seeds derived from (seed, i).
SampledSweep threshold_sweep_sampled(const std::vector<double>& grid, std::uint64_t shots,
                                     std::uint64_t seed);

std::vector<double> uniform_grid(int n);

}  // namespace qcb
