#pragma once

// Joint convertibility of pure-state pairs: can one channel of a class map
// |psi> -> |e> and |phi> -> |f> simultaneously?
//
// The figure of merit is the average squared fidelity
//   (1/2) <e|Psi(psi)|e> + (1/2) <f|Psi(phi)|f> = tr[tau J_Psi],
//   tau = (1/2)(|psi><psi|^T (x) |e><e| + |phi><phi|^T (x) |f><f|),
// which depends on the pair only through x = |<psi|phi>| and y = |<e|f>|.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcb/bounds.hpp"
#include "qcb/channels.hpp"
#include "qcb/qubit_core.hpp"

namespace qcb {

/// Overlaps within this distance of 0 or 1 use the degenerate helper states.
inline constexpr double kOverlapDegeneracy = 1e-12;
/// A class value within this distance of 1 counts as unity.
inline constexpr double kUnityTolerance = 1e-9;

class ConversionInstance {
 public:
  ConversionInstance(PureState psi, PureState phi, PureState e, PureState f);
  /// psi = |0>, phi = x|0> + sqrt(1-x^2)|1>, and likewise e, f with y.
  static ConversionInstance from_overlaps(double x, double y);

  const PureState& psi() const { return psi_; }
  const PureState& phi() const { return phi_; }
  const PureState& e() const { return e_; }
  const PureState& f() const { return f_; }
  double x() const { return x_; }
  double y() const { return y_; }
  /// sqrt(1 - x^2) evaluated as |<psi-perp|phi>|, accurate near x = 1.
  double x_complement() const { return xc_; }
  double y_complement() const { return yc_; }

 private:
  PureState psi_, phi_, e_, f_;
  double x_, y_, xc_, yc_;
};

/// The orthonormal pair {a+, a-} adapted to (a, b): a = sqrt((1+o)/2) a+ +
/// sqrt((1-o)/2) a-, with o = |<a|b>| and b carrying the phase <a|b>/|<a|b>|.
/// For o = 0 the pair is (a +- b)/sqrt2, for o = 1 it is (a, a-perp).
std::pair<PureState, PureState> adapted_pair(const PureState& a, const PureState& b);

BipartiteState build_tau(const ConversionInstance& inst);

/// {xy, sqrt((1-x^2)(1-y^2)), 0} sorted descending.
Real3 tau_singular_values(const ConversionInstance& inst);
Real3 tau_singular_values(double x, double y);

/// Closed-form class value in terms of (x, y). Exact for D, R, UE; an upper
/// estimate for GE and C.
double convertibility_value(double x, double y, ChannelClass cls);
double convertibility_value(const ConversionInstance& inst, ChannelClass cls);

/// Same quantity through the generic bound on build_tau(inst).
double convertibility_value_from_tau(const ConversionInstance& inst, ChannelClass cls);

/// x <= y + 1e-12
bool is_convertible_all_channels(const ConversionInstance& inst);

enum class Verdict { Convertible, NotConvertible, Inconclusive };
std::string_view verdict_name(Verdict v);

struct ClassVerdict {
  ChannelClass cls;
  double value;
  Verdict verdict;
  std::optional<QubitChannel> achiever;
};

struct ConvertibilityReport {
  double x;
  double y;
  std::array<ClassVerdict, 5> classes;  // ordered as kAllClasses

  const ClassVerdict& at(ChannelClass cls) const {
    return classes[static_cast<std::size_t>(cls)];
  }
};

ConvertibilityReport convertibility_report(const ConversionInstance& inst);

/// A channel attaining the class value (D, R, UE) or performing the
/// conversion exactly (C, requires x <= y). GE has no construction and
/// throws ValidationError; C with x > y throws InfeasibleError.
QubitChannel build_achiever(const ConversionInstance& inst, ChannelClass cls);

/// (1/2) <e|Psi(psi)|e> + (1/2) <f|Psi(phi)|f>
double average_fidelity(const ConversionInstance& inst, const QubitChannel& channel);

/// One-parameter family with either x or y held fixed.
struct Family {
  enum class Fixed { X, Y };
  Fixed fixed;
  double value;

  std::string name() const;
  ConversionInstance at(double t) const;
};
/// Accepts "x=<v>" or "y=<v>" where <v> is a number, "1/sqrt2" or "1/sqrt(2)".
Family parse_family(std::string_view text);

struct CrossingReport {
  ChannelClass first;
  ChannelClass second;
  Family family;
  std::vector<double> parameter;
  std::vector<double> diff;  // value(first) - value(second)
  std::vector<int> sign;     // -1, 0, +1 with |diff| <= 1e-12 counted as 0
  std::vector<double> zeros;  // grid zeros and bisected crossings, ascending
};

/// Evaluates value(first) - value(second) on a uniform grid of `grid_points`
/// over [0, 1] and locates every sign change by bisection to 1e-10.
CrossingReport compare_classes(const Family& family, ChannelClass first, ChannelClass second,
                               int grid_points);

/// With y = 0 the R, UE, GE and C values coincide at (1/2)(1 + sqrt(1 - x^2)).
/// Throws ValidationError if y exceeds 1e-12.
double special_case_orthogonal_targets(const ConversionInstance& inst);

}  // namespace qcb
