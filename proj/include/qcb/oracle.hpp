#pragma once

// Brute-force maximization of tr[tau J_Psi] over a channel class, independent
// of the closed-form bounds. Each class is searched over the canonical
// parameterization of its extreme points:
//   D   depolarizing output state (r, theta, phi), r in [0, 1]
//   R   single unitaries, ZYZ Euler angles
//   UE  two ZYZ rotations around diag(lambda), sum |lambda_i| = 1
//   GE  extreme measure-and-prepare channels, three Bloch directions
//   C   generalized extreme points (u1, u2) between two ZYZ rotations
// Random starts are refined by cyclic golden-section line searches.

#include <cstdint>
#include <vector>

#include "qcb/bounds.hpp"
#include "qcb/channels.hpp"
#include "qcb/qubit_core.hpp"

namespace qcb {

struct OracleConfig {
  ChannelClass cls = ChannelClass::C;
  int n_starts = 256;
  /// Maximum number of refinement sweeps per start.
  int refine_iters = 400;
  std::uint64_t seed = 0;
  /// A start stops refining once a full sweep gains less than this.
  double tolerance = 1e-8;
};

struct OracleResult {
  double best_value;
  QubitChannel witness;
  std::uint64_t evaluations;
  int best_start;
};

/// Deterministic for fixed (tau, config). The best start wins; ties go to
/// the lowest start index.
OracleResult maximize(const BipartiteState& tau, const OracleConfig& config);

struct DominanceSweepReport {
  ChannelClass cls;
  int n_tau = 0;
  int n_channels = 0;
  std::uint64_t seed = 0;
  /// max over samples of tr[tau J] - bound(tau, cls); -inf when empty.
  double max_violation;
  /// Number of samples with tr[tau J] > bound + 1e-9.
  int violations = 0;
  /// Smallest bound - tr[tau J] seen, i.e. how close a sample came.
  double min_gap;
};

/// Samples n_tau random states and n_channels random in-class channels and
/// checks every pair against the class bound.
DominanceSweepReport dominance_sweep(ChannelClass cls, int n_tau, int n_channels,
                                     std::uint64_t seed);

}  // namespace qcb
