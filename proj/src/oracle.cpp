#include "qcb/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "qcb/sampling.hpp"

namespace qcb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio
constexpr double kLineHalfWidth = 0.3;
constexpr double kLineTolerance = 1e-7;
constexpr double kViolationSlack = 1e-9;

// G_{mu nu} = tr[tau (sigma_nu^T (x) sigma_mu)] so that tr[tau J] = (1/2) sum T * G.
Real44 pauli_moments(const BipartiteState& tau) {
  Real44 g;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      g(mu, nu) = (tau.matrix() * kron(Mat2(pauli(nu).transpose()), pauli(mu))).trace().real();
    }
  }
  return g;
}

Real3 direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Real44 embed(const Real33& r) {
  Real44 t = Real44::Zero();
  t(0, 0) = 1.0;
  t.block<3, 3>(1, 1) = r;
  return t;
}

// lambda = v / |v|_1 for a point v on the unit sphere.
Real3 octahedron_point(double theta, double phi) {
  const Real3 v = direction(theta, phi);
  return v / v.cwiseAbs().sum();
}

struct Parameterization {
  int dims;
  // Coordinates with a finite box; the rest are periodic angles.
  std::vector<std::pair<double, double>> box;
  std::function<Real44(const std::vector<double>&)> ptm;
  std::function<QubitChannel(const std::vector<double>&)> witness;
};

Parameterization parameterization(ChannelClass cls) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::pair<double, double> free{-kInf, kInf};
  switch (cls) {
    case ChannelClass::D:
      return {3,
              {{0.0, 1.0}, free, free},
              [](const std::vector<double>& p) {
                Real44 t = Real44::Zero();
                t(0, 0) = 1.0;
                t.block<3, 1>(1, 0) = p[0] * direction(p[1], p[2]);
                return t;
              },
              [](const std::vector<double>& p) {
                return make_depolarizing(QubitState::from_bloch(p[0] * direction(p[1], p[2])));
              }};
    case ChannelClass::R:
      return {3,
              {free, free, free},
              [](const std::vector<double>& p) {
                return embed(euler_zyz_rotation(p[0], p[1], p[2]));
              },
              [](const std::vector<double>& p) {
                return make_unitary(euler_zyz_unitary(p[0], p[1], p[2]));
              }};
    case ChannelClass::UE:
      return {8,
              std::vector<std::pair<double, double>>(8, free),
              [](const std::vector<double>& p) {
                const Real3 lambda = octahedron_point(p[6], p[7]);
                return embed(euler_zyz_rotation(p[0], p[1], p[2]) * lambda.asDiagonal() *
                             euler_zyz_rotation(p[3], p[4], p[5]));
              },
              [](const std::vector<double>& p) {
                return make_unital(euler_zyz_unitary(p[0], p[1], p[2]),
                                   octahedron_point(p[6], p[7]),
                                   euler_zyz_unitary(p[3], p[4], p[5]), ChannelClass::UE);
              }};
    case ChannelClass::GE:
      return {6,
              std::vector<std::pair<double, double>>(6, free),
              [](const std::vector<double>& p) {
                Eigen::Vector4d a, c, n0, n1;
                a << 1.0, direction(p[0], p[1]);
                c << 1.0, direction(p[2], p[3]);
                const Real3 n = direction(p[4], p[5]);
                n0 << 1.0, n;
                n1 << 1.0, -n;
                return Real44(0.5 * (a * n0.transpose() + c * n1.transpose()));
              },
              [](const std::vector<double>& p) {
                const PureState x0 = PureState::from_bloch(direction(p[4], p[5]));
                return make_extreme_cq(PureState::from_bloch(direction(p[0], p[1])),
                                       PureState::from_bloch(direction(p[2], p[3])),
                                       make_basis(x0, x0.orthogonal()));
              }};
    case ChannelClass::C:
      return {8,
              std::vector<std::pair<double, double>>(8, free),
              [](const std::vector<double>& p) {
                GeneralizedExtremePoint g;
                g.u1 = p[0];
                g.u2 = p[1];
                return Real44(embed(euler_zyz_rotation(p[2], p[3], p[4])) * g.lambda_ptm() *
                              embed(euler_zyz_rotation(p[5], p[6], p[7])));
              },
              [](const std::vector<double>& p) {
                return make_generalized_extreme({euler_zyz_unitary(p[2], p[3], p[4]),
                                                 euler_zyz_unitary(p[5], p[6], p[7]), p[0],
                                                 p[1]});
              }};
  }
  throw ValidationError("unknown channel class");
}

struct Search {
  const Parameterization& param;
  const Real44& g;
  std::uint64_t evaluations = 0;

  double value(const std::vector<double>& p) {
    ++evaluations;
    return 0.5 * param.ptm(p).cwiseProduct(g).sum();
  }

  // Golden-section maximization of coordinate k within [lo, hi].
  std::pair<double, double> line_max(std::vector<double>& p, int k, double lo, double hi) {
    const double saved = p[k];
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    p[k] = x1;
    double f1 = value(p);
    p[k] = x2;
    double f2 = value(p);
    while (b - a > kLineTolerance) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        p[k] = x2;
        f2 = value(p);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        p[k] = x1;
        f1 = value(p);
      }
    }
    p[k] = saved;
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
  }

  double refine(std::vector<double>& p, int max_sweeps, double tolerance) {
    double current = value(p);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      const double before = current;
      for (int k = 0; k < param.dims; ++k) {
        const auto [blo, bhi] = param.box[k];
        const double lo = std::max(blo, p[k] - kLineHalfWidth);
        const double hi = std::min(bhi, p[k] + kLineHalfWidth);
        const auto [arg, f] = line_max(p, k, lo, hi);
        if (f > current) {
          p[k] = arg;
          current = f;
        }
      }
      if (current - before < tolerance) break;
    }
    return current;
  }
};

std::vector<double> random_start(const Parameterization& param, sampling::Engine& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<double> p(param.dims);
  for (int k = 0; k < param.dims; ++k) {
    const auto [lo, hi] = param.box[k];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      p[k] = std::uniform_real_distribution<double>(lo, hi)(rng);
    } else {
      p[k] = angle(rng);
    }
  }
  return p;
}

}  // namespace

OracleResult maximize(const BipartiteState& tau, const OracleConfig& config) {
  if (config.n_starts <= 0 || config.refine_iters <= 0) {
    throw ValidationError("oracle needs positive n_starts and refine_iters");
  }
  const Parameterization param = parameterization(config.cls);
  const Real44 g = pauli_moments(tau);
  Search search{param, g};

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_params;
  int best_start = -1;
  for (int start = 0; start < config.n_starts; ++start) {
    sampling::Engine rng(sampling::mix_seed(config.seed, static_cast<std::uint64_t>(start)));
    std::vector<double> p = random_start(param, rng);
    const double v = search.refine(p, config.refine_iters, config.tolerance);
    if (v > best) {
      best = v;
      best_params = p;
      best_start = start;
    }
  }
  QubitChannel witness = param.witness(best_params).with_tag(config.cls);
  return {objective(tau, witness), std::move(witness), search.evaluations, best_start};
}

DominanceSweepReport dominance_sweep(ChannelClass cls, int n_tau, int n_channels,
                                     std::uint64_t seed) {
  DominanceSweepReport report{cls, std::max(0, n_tau), std::max(0, n_channels), seed,
                              -std::numeric_limits<double>::infinity(), 0,
                              std::numeric_limits<double>::infinity()};
  sampling::Engine channel_rng(sampling::mix_seed(seed, 0));
  sampling::Engine tau_rng(sampling::mix_seed(seed, 1));
  std::vector<Mat4> chois;
  chois.reserve(report.n_channels);
  for (int k = 0; k < report.n_channels; ++k) {
    chois.push_back(sampling::random_channel(cls, channel_rng).choi());
  }
  for (int i = 0; i < report.n_tau; ++i) {
    const BipartiteState tau = sampling::random_bipartite_state(tau_rng);
    const double c = bound(tau, cls).value;
    for (const auto& j : chois) {
      const double v = (tau.matrix() * j).trace().real();
      report.max_violation = std::max(report.max_violation, v - c);
      report.min_gap = std::min(report.min_gap, c - v);
      if (v > c + kViolationSlack) ++report.violations;
    }
  }
  return report;
}

}  // namespace qcb
