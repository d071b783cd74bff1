#include "qcb/convertibility.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>


namespace qcb {

namespace {

constexpr double kBisectionTolerance = 1e-10;
constexpr double kZeroDiff = 1e-12;

double overlap(const PureState& a, const PureState& b) {
  return std::min(1.0, std::abs(a.inner(b)));
}

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1]");
  }
}

PureState real_pair_state(double overlap_value) {
  return PureState(overlap_value, std::sqrt(std::max(0.0, 1.0 - overlap_value * overlap_value)));
}

double cross_term(double x, double y) {
  return std::sqrt(std::max(0.0, (1.0 - x * x) * (1.0 - y * y)));
}

// a = xy, b = sqrt((1 - x^2)(1 - y^2))
double class_value(double a, double b, double y, ChannelClass cls) {
  switch (cls) {
    case ChannelClass::D: return 0.5 * (1.0 + y);
    case ChannelClass::R: return 0.5 * (1.0 + a + b);
    case ChannelClass::UE: return 0.5 * (1.0 + std::max(a, b));
    case ChannelClass::GE: return 0.5 * (1.0 + std::hypot(y, std::max(a, b)));
    case ChannelClass::C: return 0.5 * (1.0 + std::hypot(y, a + b));
  }
  throw ValidationError("unknown channel class");
}

// Maps |psi> to |e> and |phi> to |f> when 0 < x <= y < 1.
QubitChannel generalized_extreme_achiever(const ConversionInstance& inst) {
  const double x = inst.x(), y = inst.y();
  const auto [ep, em] = adapted_pair(inst.e(), inst.f());
  const auto [pp, pm] = adapted_pair(inst.psi(), inst.phi());
  GeneralizedExtremePoint g;
  g.v.col(0) = ep.amplitudes();
  g.v.col(1) = em.amplitudes();
  g.w.row(0) = pp.amplitudes().adjoint();
  g.w.row(1) = pm.amplitudes().adjoint();
  const double one_minus_x2 = 1.0 - x * x;
  const double cos_u1 = std::sqrt((1.0 - y * y) / one_minus_x2);
  const double sin_u1 = std::sqrt(std::max(0.0, y * y - x * x) / one_minus_x2);
  const double cos_u2 = (x / y) * cos_u1;
  const double sin_u2 = std::sqrt(std::max(0.0, y * y - x * x) / (y * y * one_minus_x2));
  g.u1 = std::atan2(sin_u1, cos_u1);
  g.u2 = std::atan2(sin_u2, cos_u2);
  return make_generalized_extreme(g);
}

// Measure-and-prepare channel A -> sum_k <in_k|A|in_k> |out_k><out_k|.
QubitChannel classical_channel(const std::pair<PureState, PureState>& in,
                               const std::pair<PureState, PureState>& out, ChannelClass tag) {
  return make_extreme_cq(out.first, out.second, make_basis(in.first, in.second)).with_tag(tag);
}

std::pair<PureState, PureState> rotated_pair(const std::pair<PureState, PureState>& p) {
  const double r = 1.0 / std::sqrt(2.0);
  return {PureState::normalized(r * (p.first.amplitudes() + p.second.amplitudes())),
          PureState::normalized(r * (p.first.amplitudes() - p.second.amplitudes()))};
}

double parse_number(std::string_view text) {
  std::string s(text);
  std::erase(s, ' ');
  if (s == "1/sqrt2" || s == "1/sqrt(2)") return 1.0 / std::sqrt(2.0);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("cannot parse family value '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

ConversionInstance::ConversionInstance(PureState psi, PureState phi, PureState e, PureState f)
    : psi_(std::move(psi)),
      phi_(std::move(phi)),
      e_(std::move(e)),
      f_(std::move(f)),
      x_(overlap(psi_, phi_)),
      y_(overlap(e_, f_)),
      xc_(overlap(psi_.orthogonal(), phi_)),
      yc_(overlap(e_.orthogonal(), f_)) {}

ConversionInstance ConversionInstance::from_overlaps(double x, double y) {
  require_unit_interval(x, "x");
  require_unit_interval(y, "y");
  return ConversionInstance(PureState::zero(), real_pair_state(x), PureState::zero(),
                            real_pair_state(y));
}

std::pair<PureState, PureState> adapted_pair(const PureState& a, const PureState& b) {
  const Complex ab = a.inner(b);
  const double o = std::abs(ab);
  if (o <= kOverlapDegeneracy) {
    const double r = 1.0 / std::sqrt(2.0);
    return {PureState::normalized(r * (a.amplitudes() + b.amplitudes())),
            PureState::normalized(r * (a.amplitudes() - b.amplitudes()))};
  }
  if (o >= 1.0 - kOverlapDegeneracy) {
    return {a, a.orthogonal()};
  }
  const Complex phase = std::conj(ab) / o;  // <b|a> / |<a|b>|
  return {PureState::normalized(a.amplitudes() + phase * b.amplitudes()),
          PureState::normalized(a.amplitudes() - phase * b.amplitudes())};
}

BipartiteState build_tau(const ConversionInstance& inst) {
  const Mat4 m = 0.5 * (kron(Mat2(inst.psi().projector().transpose()), inst.e().projector()) +
                        kron(Mat2(inst.phi().projector().transpose()), inst.f().projector()));
  return BipartiteState::from_matrix(m);
}

Real3 tau_singular_values(double x, double y) {
  require_unit_interval(x, "x");
  require_unit_interval(y, "y");
  Real3 s(x * y, cross_term(x, y), 0.0);
  if (s[1] > s[0]) std::swap(s[0], s[1]);
  return s;
}

Real3 tau_singular_values(const ConversionInstance& inst) {
  Real3 s(inst.x() * inst.y(), inst.x_complement() * inst.y_complement(), 0.0);
  if (s[1] > s[0]) std::swap(s[0], s[1]);
  return s;
}

double convertibility_value(double x, double y, ChannelClass cls) {
  require_unit_interval(x, "x");
  require_unit_interval(y, "y");
  return class_value(x * y, cross_term(x, y), y, cls);
}

double convertibility_value(const ConversionInstance& inst, ChannelClass cls) {
  return class_value(inst.x() * inst.y(), inst.x_complement() * inst.y_complement(), inst.y(),
                     cls);
}

double convertibility_value_from_tau(const ConversionInstance& inst, ChannelClass cls) {
  return bound(build_tau(inst), cls).value;
}

bool is_convertible_all_channels(const ConversionInstance& inst) {
  return inst.x() <= inst.y() + 1e-12;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Convertible: return "convertible";
    case Verdict::NotConvertible: return "not-convertible";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ConvertibilityReport convertibility_report(const ConversionInstance& inst) {
  ConvertibilityReport report{inst.x(), inst.y(), {}};
  for (std::size_t k = 0; k < kAllClasses.size(); ++k) {
    const ChannelClass cls = kAllClasses[k];
    ClassVerdict cv{cls, convertibility_value(inst, cls), Verdict::Inconclusive, std::nullopt};
    const bool unity = cv.value >= 1.0 - kUnityTolerance;
    switch (cls) {
      case ChannelClass::D:
      case ChannelClass::R:
      case ChannelClass::UE:
        cv.verdict = unity ? Verdict::Convertible : Verdict::NotConvertible;
        cv.achiever = build_achiever(inst, cls);
        break;
      case ChannelClass::GE:
        cv.verdict = unity ? Verdict::Inconclusive : Verdict::NotConvertible;
        break;
      case ChannelClass::C:
        if (is_convertible_all_channels(inst)) {
          cv.verdict = Verdict::Convertible;
          cv.achiever = build_achiever(inst, cls);
        } else {
          cv.verdict = Verdict::NotConvertible;
        }
        break;
    }
    report.classes[k] = std::move(cv);
  }
  return report;
}

QubitChannel build_achiever(const ConversionInstance& inst, ChannelClass cls) {
  const double x = inst.x(), y = inst.y();
  switch (cls) {
    case ChannelClass::D: {
      const PureState target =
          y <= kOverlapDegeneracy ? inst.e() : adapted_pair(inst.e(), inst.f()).first;
      return make_depolarizing(QubitState::from_pure(target));
    }
    case ChannelClass::R: {
      const auto [ep, em] = adapted_pair(inst.e(), inst.f());
      const auto [pp, pm] = adapted_pair(inst.psi(), inst.phi());
      const Mat2 u = ep.amplitudes() * pp.amplitudes().adjoint() +
                     em.amplitudes() * pm.amplitudes().adjoint();
      return make_unitary(u);
    }
    case ChannelClass::UE: {
      const auto e_pair = adapted_pair(inst.e(), inst.f());
      const auto psi_pair = adapted_pair(inst.psi(), inst.phi());
      if (x * y >= inst.x_complement() * inst.y_complement()) {
        return classical_channel(psi_pair, e_pair, ChannelClass::UE);
      }
      return classical_channel(rotated_pair(psi_pair), rotated_pair(e_pair), ChannelClass::UE);
    }
    case ChannelClass::GE:
      throw ValidationError("no achiever construction exists for the GE class");
    case ChannelClass::C: {
      if (!is_convertible_all_channels(inst)) {
        std::ostringstream os;
        os << "no channel converts the pair: x = " << x << " exceeds y = " << y;
        throw InfeasibleError(os.str());
      }
      if (y >= 1.0 - kOverlapDegeneracy) {
        return make_depolarizing(QubitState::from_pure(inst.e())).with_tag(ChannelClass::C);
      }
      if (x <= kOverlapDegeneracy) {
        return make_extreme_cq(inst.e(), inst.f(), make_basis(inst.psi(), inst.psi().orthogonal()))
            .with_tag(ChannelClass::C);
      }
      return generalized_extreme_achiever(inst);
    }
  }
  throw ValidationError("unknown channel class");
}

double average_fidelity(const ConversionInstance& inst, const QubitChannel& channel) {
  const Mat2 out_psi = channel.apply(Mat2(inst.psi().projector()));
  const Mat2 out_phi = channel.apply(Mat2(inst.phi().projector()));
  const double fe = (inst.e().amplitudes().adjoint() * out_psi * inst.e().amplitudes())(0).real();
  const double ff = (inst.f().amplitudes().adjoint() * out_phi * inst.f().amplitudes())(0).real();
  return 0.5 * (fe + ff);
}

// ---------------------------------------------------------------------------
// Class comparisons along one-parameter families

std::string Family::name() const {
  std::ostringstream os;
  os << (fixed == Fixed::X ? "x" : "y") << "=" << value;
  return os.str();
}

ConversionInstance Family::at(double t) const {
  return fixed == Fixed::X ? ConversionInstance::from_overlaps(value, t)
                           : ConversionInstance::from_overlaps(t, value);
}

Family parse_family(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ValidationError("family must look like x=<value> or y=<value>");
  }
  const std::string_view var = text.substr(0, eq);
  Family fam{};
  if (var == "x") {
    fam.fixed = Family::Fixed::X;
  } else if (var == "y") {
    fam.fixed = Family::Fixed::Y;
  } else {
    throw ValidationError("family variable must be x or y");
  }
  fam.value = parse_number(text.substr(eq + 1));
  require_unit_interval(fam.value, "family value");
  return fam;
}

CrossingReport compare_classes(const Family& family, ChannelClass first, ChannelClass second,
                               int grid_points) {
  if (grid_points < 2) throw ValidationError("comparison grid needs at least 2 points");
  const auto diff_at = [&](double t) {
    const auto inst = family.fixed == Family::Fixed::X ? std::pair{family.value, t}
                                                       : std::pair{t, family.value};
    return convertibility_value(inst.first, inst.second, first) -
           convertibility_value(inst.first, inst.second, second);
  };
  const auto sign_of = [](double d) { return std::abs(d) <= kZeroDiff ? 0 : (d > 0 ? 1 : -1); };

  CrossingReport r{first, second, family, {}, {}, {}, {}};
  const int n = grid_points;
  for (int i = 0; i < n; ++i) {
    const double t = (i == n - 1) ? 1.0 : static_cast<double>(i) / (n - 1);
    const double d = diff_at(t);
    r.parameter.push_back(t);
    r.diff.push_back(d);
    r.sign.push_back(sign_of(d));
  }
  for (int i = 0; i < n; ++i) {
    if (r.sign[i] == 0) {
      r.zeros.push_back(r.parameter[i]);
      continue;
    }
    if (i + 1 < n && r.sign[i + 1] != 0 && r.sign[i + 1] != r.sign[i]) {
      double lo = r.parameter[i], hi = r.parameter[i + 1];
      const int s_lo = r.sign[i];
      while (hi - lo > kBisectionTolerance) {
        const double mid = 0.5 * (lo + hi);
        const double d = diff_at(mid);
        if ((d > 0 ? 1 : -1) == s_lo && d != 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      r.zeros.push_back(0.5 * (lo + hi));
    }
  }
  return r;
}

double special_case_orthogonal_targets(const ConversionInstance& inst) {
  if (inst.y() > kOverlapDegeneracy) {
    throw ValidationError("orthogonal-target special case requires y = 0");
  }
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - inst.x() * inst.x())));
}

}  // namespace qcb
