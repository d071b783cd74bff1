#include "qcb/sampling.hpp"

#include <cmath>
#include <numbers>

namespace qcb::sampling {

namespace {

Complex complex_normal(Engine& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

Real3 random_unit_vector(Engine& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Real3 v;
  do {
    v = Real3(n(rng), n(rng), n(rng));
  } while (v.norm() < 1e-12);
  return v.normalized();
}

// Columns 0..n-1 orthonormal, Haar distributed (QR with phase fix).
Eigen::MatrixXcd random_isometry(Engine& rng, int rows, int cols) {
  Eigen::MatrixXcd g(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) g(r, c) = complex_normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int c = 0; c < cols; ++c) {
    const double mag = std::abs(r(c, c));
    if (mag > 0.0) q.col(c) *= r(c, c) / mag;
  }
  return q;
}

// Dirichlet-weighted point of the convex hull of `vertices`.
Real3 hull_point(Engine& rng, std::span<const Real3> vertices) {
  const auto p = dirichlet(rng, static_cast<int>(vertices.size()));
  Real3 out = Real3::Zero();
  for (std::size_t k = 0; k < vertices.size(); ++k) out += p[k] * vertices[k];
  return out;
}

QubitChannel random_unital(Engine& rng, bool entanglement_breaking) {
  static const std::array<Real3, 4> kTetrahedron{Real3(1, 1, 1), Real3(1, -1, -1),
                                                 Real3(-1, 1, -1), Real3(-1, -1, 1)};
  static const std::array<Real3, 6> kOctahedron{Real3(1, 0, 0),  Real3(-1, 0, 0), Real3(0, 1, 0),
                                                Real3(0, -1, 0), Real3(0, 0, 1),  Real3(0, 0, -1)};
  const Real3 lambda = entanglement_breaking ? hull_point(rng, kOctahedron)
                                             : hull_point(rng, kTetrahedron);
  const Mat2 v = haar_unitary(rng);
  const Mat2 w = haar_unitary(rng);
  return make_unital(v, lambda, w, entanglement_breaking ? ChannelClass::UE : ChannelClass::R);
}

QubitChannel random_entanglement_breaking(Engine& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  const int n = count(rng);
  const auto p = dirichlet(rng, n);
  Mat4 j = Mat4::Zero();
  for (int k = 0; k < n; ++k) {
    const PureState x0 = random_pure_state(rng);
    const auto cq = make_extreme_cq(random_pure_state(rng), random_pure_state(rng),
                                    make_basis(x0, x0.orthogonal()));
    j += p[k] * cq.choi();
  }
  return QubitChannel::from_choi(j, ChannelClass::GE);
}

QubitChannel random_general(Engine& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  const int k = count(rng);
  const Eigen::MatrixXcd iso = random_isometry(rng, 2 * k, 2);
  std::vector<Mat2> kraus;
  for (int m = 0; m < k; ++m) kraus.push_back(iso.block<2, 2>(2 * m, 0));
  return QubitChannel::from_kraus(std::move(kraus), ChannelClass::C);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Mat2 haar_unitary(Engine& rng) { return random_isometry(rng, 2, 2); }

PureState random_pure_state(Engine& rng) {
  return PureState::normalized(Vec2(complex_normal(rng), complex_normal(rng)));
}

QubitState random_qubit_state(Engine& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::cbrt(u(rng));
  return QubitState::from_bloch(r * random_unit_vector(rng));
}

Vec4 random_pure_bipartite(Engine& rng) {
  Vec4 v;
  for (int i = 0; i < 4; ++i) v[i] = complex_normal(rng);
  return v.normalized();
}

BipartiteState random_bipartite_state(Engine& rng, int max_rank) {
  std::uniform_int_distribution<int> rank(1, std::max(1, max_rank));
  const int n = rank(rng);
  const auto p = dirichlet(rng, n);
  Mat4 m = Mat4::Zero();
  for (int k = 0; k < n; ++k) {
    const Vec4 v = random_pure_bipartite(rng);
    m += p[k] * v * v.adjoint();
  }
  return BipartiteState::from_matrix(m);
}

BipartiteState random_state_with_mixed_output_marginal(Engine& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  const int n = count(rng);
  const auto p = dirichlet(rng, n + 1);
  const Mat4 pplus = BipartiteState::maximally_entangled().matrix();
  Mat4 m = Mat4::Zero();
  for (int k = 0; k < n; ++k) {
    const Mat4 iu = kron(Mat2::Identity(), haar_unitary(rng));
    m += p[k] * iu * pplus * iu.adjoint();
  }
  m += p[n] * kron(random_qubit_state(rng).matrix(), 0.5 * Mat2::Identity());
  return BipartiteState::from_matrix(m);
}

std::vector<double> dirichlet(Engine& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : p) {
    x = e(rng);
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

QubitChannel random_channel(ChannelClass cls, Engine& rng) {
  switch (cls) {
    case ChannelClass::D: return make_depolarizing(random_qubit_state(rng));
    case ChannelClass::R: return random_unital(rng, false);
    case ChannelClass::UE: return random_unital(rng, true);
    case ChannelClass::GE: return random_entanglement_breaking(rng);
    case ChannelClass::C: return random_general(rng);
  }
  throw ValidationError("unknown channel class");
}

}  // namespace qcb::sampling
