#pragma once

// Random states, unitaries and in-class channels. Everything takes an
// explicit engine so callers control determinism.

#include <cstdint>
#include <random>
#include <vector>

#include "qcb/channels.hpp"
#include "qcb/qubit_core.hpp"

namespace qcb::sampling {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent per-task seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Mat2 haar_unitary(Engine& rng);
PureState random_pure_state(Engine& rng);
/// Uniform in the Bloch ball.
QubitState random_qubit_state(Engine& rng);
Vec4 random_pure_bipartite(Engine& rng);
/// Dirichlet(1,...,1) mixture of 1..max_rank Haar-random pure two-qubit states.
BipartiteState random_bipartite_state(Engine& rng, int max_rank = 4);
/// Random two-qubit state whose output-side marginal is exactly I/2: a mixture
/// of maximally entangled states and one product term rho (x) I/2.
BipartiteState random_state_with_mixed_output_marginal(Engine& rng);
std::vector<double> dirichlet(Engine& rng, int n);

/// A random member of the given class.
QubitChannel random_channel(ChannelClass cls, Engine& rng);

}  // namespace qcb::sampling
