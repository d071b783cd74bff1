// qcb: command-line front-end for channel bounds, convertibility and detection.
//
// Exit codes: 0 success, 1 verification failure or internal error,
// 2 invalid input, 3 infeasible request.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "qcb/bounds.hpp"
#include "qcb/convertibility.hpp"
#include "qcb/detection.hpp"
#include "qcb/measurement.hpp"
#include "qcb/oracle.hpp"
#include "qcb/sampling.hpp"
#include "qcb/serialization.hpp"

namespace {

using qcb::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

enum class Format { Table, Json, Csv };

Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw qcb::ValidationError("unknown format '" + s + "' (expected table, json or csv)");
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

// Writes to --out when given, stdout otherwise. Files are opened in binary
// mode so line endings stay LF.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw qcb::ValidationError("cannot write '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct Common {
  std::string format = "table";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--out", c.out, "output file (default: stdout)");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

// ---------------------------------------------------------------------------
// bound / fef

Json bound_json(const qcb::BoundReport& r) {
  Json j{{"class", qcb::class_name(r.cls)}, {"value", r.value}, {"exact", r.exact}};
  if (r.witness) j["witness"] = qcb::io::to_json(*r.witness);
  return j;
}

int run_bound(const std::string& tau_source, const Common& c) {
  const auto tau = qcb::io::load_tau(tau_source);
  const auto report = qcb::bound_dominance_check(tau);
  Sink sink(c.out);
  auto& os = sink.os();
  switch (parse_format(c.format)) {
    case Format::Table:
      fmt::print(os, "{:<6}{:<24}{}\n", "class", "value", "exact");
      for (const auto& r : report.reports) {
        fmt::print(os, "{:<6}{:<24.12f}{}\n", qcb::class_name(r.cls), r.value,
                   r.exact ? "yes" : "no");
      }
      break;
    case Format::Csv:
      os << "class,value,exact\n";
      for (const auto& r : report.reports) {
        os << qcb::class_name(r.cls) << ',' << num(r.value) << ',' << (r.exact ? "true" : "false")
           << '\n';
      }
      break;
    case Format::Json: {
      Json arr = Json::array();
      for (const auto& r : report.reports) arr.push_back(bound_json(r));
      os << Json{{"tau", qcb::io::to_json(tau)}, {"bounds", arr}}.dump(2) << '\n';
      break;
    }
  }
  return kExitOk;
}

int run_fef(const std::string& tau_source, const Common& c) {
  const auto tau = qcb::io::load_tau(tau_source);
  const double f = qcb::fef(tau);
  Sink sink(c.out);
  auto& os = sink.os();
  switch (parse_format(c.format)) {
    case Format::Table: fmt::print(os, "fully entangled fraction: {:.12f}\n", f); break;
    case Format::Csv: os << "fef\n" << num(f) << '\n'; break;
    case Format::Json: os << Json{{"fef", f}}.dump(2) << '\n'; break;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// prob

int run_prob(const std::string& channel_path, const std::string& ppovm_path, const Common& c) {
  const auto channel = qcb::io::channel_from_json(qcb::io::load_json_file(channel_path));
  const auto ppovm = qcb::io::ppovm_from_json(qcb::io::load_json_file(ppovm_path));
  const auto p = qcb::probabilities(ppovm, channel);
  Sink sink(c.out);
  auto& os = sink.os();
  switch (parse_format(c.format)) {
    case Format::Table:
      fmt::print(os, "{:<16}{}\n", "outcome", "probability");
      for (std::size_t m = 0; m < p.size(); ++m) {
        fmt::print(os, "{:<16}{:.12f}\n", ppovm.labels()[m], p[m]);
      }
      break;
    case Format::Csv:
      os << "outcome,probability\n";
      for (std::size_t m = 0; m < p.size(); ++m) os << ppovm.labels()[m] << ',' << num(p[m]) << '\n';
      break;
    case Format::Json: {
      Json arr = Json::array();
      for (std::size_t m = 0; m < p.size(); ++m) {
        arr.push_back({{"outcome", ppovm.labels()[m]}, {"probability", p[m]}});
      }
      os << Json{{"probabilities", arr}}.dump(2) << '\n';
      break;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// convert

struct ConvertArgs {
  std::optional<double> x, y;
  std::string instance;
  std::string achiever;
};

int run_convert(const ConvertArgs& a, const Common& c) {
  std::optional<qcb::ConversionInstance> inst;
  if (!a.instance.empty()) {
    inst = qcb::io::instance_from_json(qcb::io::load_json_file(a.instance));
  } else if (a.x && a.y) {
    inst = qcb::ConversionInstance::from_overlaps(*a.x, *a.y);
  } else {
    throw qcb::ValidationError("convert needs --instance or both --x and --y");
  }
  Sink sink(c.out);
  auto& os = sink.os();
  const Format format = parse_format(c.format);

  if (!a.achiever.empty()) {
    const auto cls = qcb::parse_channel_class(a.achiever);
    const auto channel = qcb::build_achiever(*inst, cls);
    const double fid = qcb::average_fidelity(*inst, channel);
    if (format == Format::Table) {
      fmt::print(os, "achiever for {} (average fidelity {:.12f}):\n", qcb::class_name(cls), fid);
      os << qcb::io::to_json(channel).dump(2) << '\n';
    } else if (format == Format::Csv) {
      os << "class,average_fidelity\n" << qcb::class_name(cls) << ',' << num(fid) << '\n';
    } else {
      os << qcb::io::to_json(channel).dump(2) << '\n';
    }
    return kExitOk;
  }

  const auto report = qcb::convertibility_report(*inst);
  switch (format) {
    case Format::Table:
      fmt::print(os, "x = |<psi|phi>| = {:.12f}\ny = |<e|f>|     = {:.12f}\n\n", report.x, report.y);
      fmt::print(os, "{:<6}{:<18}{:<18}{}\n", "class", "value", "verdict", "achiever");
      for (const auto& cv : report.classes) {
        fmt::print(os, "{:<6}{:<18.12f}{:<18}{}\n", qcb::class_name(cv.cls), cv.value,
                   qcb::verdict_name(cv.verdict), cv.achiever ? "yes" : "no");
      }
      break;
    case Format::Csv:
      os << "class,value,verdict\n";
      for (const auto& cv : report.classes) {
        os << qcb::class_name(cv.cls) << ',' << num(cv.value) << ','
           << qcb::verdict_name(cv.verdict) << '\n';
      }
      break;
    case Format::Json: {
      Json arr = Json::array();
      for (const auto& cv : report.classes) {
        Json e{{"class", qcb::class_name(cv.cls)},
               {"value", cv.value},
               {"verdict", qcb::verdict_name(cv.verdict)}};
        if (cv.achiever) e["achiever"] = qcb::io::to_json(*cv.achiever);
        arr.push_back(e);
      }
      os << Json{{"instance", qcb::io::to_json(*inst)},
                 {"x", report.x},
                 {"y", report.y},
                 {"classes", arr}}
                .dump(2)
         << '\n';
      break;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

int run_compare(const std::string& pair, const std::string& family, int grid, const Common& c) {
  const auto names = split(pair, ',');
  if (names.size() != 2) throw qcb::ValidationError("--pair must look like UE,D");
  const auto first = qcb::parse_channel_class(names[0]);
  const auto second = qcb::parse_channel_class(names[1]);
  const auto report = qcb::compare_classes(qcb::parse_family(family), first, second, grid);
  const char* param = report.family.fixed == qcb::Family::Fixed::X ? "y" : "x";

  Sink sink(c.out);
  auto& os = sink.os();
  switch (parse_format(c.format)) {
    case Format::Csv:
      os << "parameter,diff,sign\n";
      for (std::size_t i = 0; i < report.parameter.size(); ++i) {
        os << num(report.parameter[i]) << ',' << num(report.diff[i]) << ',' << report.sign[i]
           << '\n';
      }
      break;
    case Format::Table:
      fmt::print(os, "{} - {} along {} (parameter {}), {} grid points\n", names[0], names[1],
                 report.family.name(), param, grid);
      fmt::print(os, "zeros:");
      for (double z : report.zeros) fmt::print(os, " {:.12f}", z);
      fmt::print(os, "\n");
      break;
    case Format::Json: {
      Json rows = Json::array();
      for (std::size_t i = 0; i < report.parameter.size(); ++i) {
        rows.push_back({{"parameter", report.parameter[i]},
                        {"diff", report.diff[i]},
                        {"sign", report.sign[i]}});
      }
      os << Json{{"pair", {names[0], names[1]}},
                 {"family", report.family.name()},
                 {"zeros", report.zeros},
                 {"rows", rows}}
                .dump(2)
         << '\n';
      break;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// detect

struct DetectArgs {
  std::optional<double> w;
  std::optional<int> sweep;
  std::string at;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

std::string optional_num(const std::optional<double>& v) { return v ? num(*v) : "none"; }

int run_detect(const DetectArgs& a, const Common& c) {
  const Format format = parse_format(c.format);
  Sink sink(c.out);
  auto& os = sink.os();

  if (a.w && !a.sweep && a.at.empty()) {
    if (a.shots) {
      const auto e = qcb::detect_sampled(*a.w, qcb::Scheme::Entangled, *a.shots,
                                         qcb::sampling::mix_seed(a.seed, 0));
      const auto f = qcb::detect_sampled(*a.w, qcb::Scheme::AncillaFree, *a.shots,
                                         qcb::sampling::mix_seed(a.seed, 1));
      if (format == Format::Csv) {
        os << "scheme,w,shots,successes,estimate,wilson_lower,wilson_upper,bound,verdict\n";
      }
      for (const auto& d : {e, f}) {
        if (format == Format::Csv) {
          os << qcb::scheme_name(d.scheme) << ',' << num(d.w) << ',' << d.shots << ','
             << d.successes << ',' << num(d.estimate) << ',' << num(d.interval.lower) << ','
             << num(d.interval.upper) << ',' << num(d.bound) << ',' << qcb::verdict_name(d.verdict)
             << '\n';
        } else {
          fmt::print(os, "{:<14} estimate {:.6f}  95% [{:.6f}, {:.6f}]  bound {:.6f}  {}\n",
                     qcb::scheme_name(d.scheme), d.estimate, d.interval.lower, d.interval.upper,
                     d.bound, qcb::verdict_name(d.verdict));
        }
      }
      return kExitOk;
    }
    const auto e = qcb::detect_not_eb(*a.w, qcb::Scheme::Entangled);
    const auto f = qcb::detect_not_eb(*a.w, qcb::Scheme::AncillaFree);
    const bool both = e.verdict == qcb::DetectionVerdict::NotEntanglementBreaking &&
                      f.verdict == qcb::DetectionVerdict::NotEntanglementBreaking;
    const bool neither = e.verdict == qcb::DetectionVerdict::Inconclusive &&
                         f.verdict == qcb::DetectionVerdict::Inconclusive;
    switch (format) {
      case Format::Table:
        for (const auto& d : {e, f}) {
          fmt::print(os, "{:<14} p = {:.12f}  EB bound = {:.12f}  {}\n", qcb::scheme_name(d.scheme),
                     d.probability, d.bound, qcb::verdict_name(d.verdict));
        }
        if (both) {
          os << "not entanglement breaking (both schemes)\n";
        } else if (neither) {
          os << "inconclusive (both schemes)\n";
        } else {
          os << "schemes disagree\n";
        }
        break;
      case Format::Csv:
        os << "scheme,w,probability,bound,verdict\n";
        for (const auto& d : {e, f}) {
          os << qcb::scheme_name(d.scheme) << ',' << num(d.w) << ',' << num(d.probability) << ','
             << num(d.bound) << ',' << qcb::verdict_name(d.verdict) << '\n';
        }
        break;
      case Format::Json: {
        Json arr = Json::array();
        for (const auto& d : {e, f}) {
          arr.push_back({{"scheme", qcb::scheme_name(d.scheme)},
                         {"probability", d.probability},
                         {"bound", d.bound},
                         {"verdict", qcb::verdict_name(d.verdict)}});
        }
        os << Json{{"w", *a.w}, {"schemes", arr}}.dump(2) << '\n';
        break;
      }
    }
    return kExitOk;
  }

  std::vector<double> grid;
  if (!a.at.empty()) {
    for (const auto& s : split(a.at, ',')) {
      try {
        grid.push_back(std::stod(s));
      } catch (const std::exception&) {
        throw qcb::ValidationError("cannot parse grid value '" + s + "'");
      }
    }
  } else if (a.sweep) {
    if (*a.sweep < 0) throw qcb::ValidationError("--sweep needs a non-negative point count");
    grid = qcb::uniform_grid(*a.sweep);
  } else {
    throw qcb::ValidationError("detect needs --w, --sweep or --at");
  }

  if (a.shots) {
    const auto sweep = qcb::threshold_sweep_sampled(grid, *a.shots, a.seed);
    if (format == Format::Json) {
      Json rows = Json::array();
      for (const auto& r : sweep.rows) {
        rows.push_back({{"w", r.w},
                        {"estimate_entangled", r.entangled.estimate},
                        {"estimate_ancilla_free", r.ancilla_free.estimate},
                        {"verdict_entangled", qcb::verdict_name(r.entangled.verdict)},
                        {"verdict_ancilla_free", qcb::verdict_name(r.ancilla_free.verdict)}});
      }
      os << Json{{"shots", *a.shots}, {"seed", a.seed}, {"rows", rows}}.dump(2) << '\n';
    } else {
      os << "w,estimate_entangled,lower_entangled,upper_entangled,bound_entangled,"
            "verdict_entangled,estimate_ancilla_free,lower_ancilla_free,upper_ancilla_free,"
            "bound_ancilla_free,verdict_ancilla_free\n";
      for (const auto& r : sweep.rows) {
        os << num(r.w) << ',' << num(r.entangled.estimate) << ','
           << num(r.entangled.interval.lower) << ',' << num(r.entangled.interval.upper) << ','
           << num(r.entangled.bound) << ',' << qcb::verdict_name(r.entangled.verdict) << ','
           << num(r.ancilla_free.estimate) << ',' << num(r.ancilla_free.interval.lower) << ','
           << num(r.ancilla_free.interval.upper) << ',' << num(r.ancilla_free.bound) << ','
           << qcb::verdict_name(r.ancilla_free.verdict) << '\n';
      }
    }
    std::cerr << "threshold (entangled): " << optional_num(sweep.threshold_entangled)
              << ", threshold (ancilla-free): " << optional_num(sweep.threshold_ancilla_free)
              << '\n';
    return kExitOk;
  }

  const auto table = qcb::threshold_sweep(grid);
  if (format == Format::Json) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"w", r.w},
                      {"p_entangled", r.p_entangled},
                      {"p_ancilla_free", r.p_ancilla_free},
                      {"bound_entangled", r.bound_entangled},
                      {"bound_ancilla_free", r.bound_ancilla_free},
                      {"verdict_entangled", qcb::verdict_name(r.verdict_entangled)},
                      {"verdict_ancilla_free", qcb::verdict_name(r.verdict_ancilla_free)}});
    }
    Json j{{"rows", rows}};
    j["threshold_entangled"] = table.threshold_entangled ? Json(*table.threshold_entangled) : Json();
    j["threshold_ancilla_free"] =
        table.threshold_ancilla_free ? Json(*table.threshold_ancilla_free) : Json();
    os << j.dump(2) << '\n';
  } else {
    os << "w,p_entangled,p_ancilla_free,bound_entangled,bound_ancilla_free,verdict_entangled,"
          "verdict_ancilla_free\n";
    for (const auto& r : table.rows) {
      os << num(r.w) << ',' << num(r.p_entangled) << ',' << num(r.p_ancilla_free) << ','
         << num(r.bound_entangled) << ',' << num(r.bound_ancilla_free) << ','
         << qcb::verdict_name(r.verdict_entangled) << ','
         << qcb::verdict_name(r.verdict_ancilla_free) << '\n';
    }
    std::cerr << "threshold (entangled): " << optional_num(table.threshold_entangled)
              << ", threshold (ancilla-free): " << optional_num(table.threshold_ancilla_free)
              << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle / verify

std::vector<qcb::ChannelClass> classes_from(const std::string& list) {
  if (list == "all") return {qcb::kAllClasses.begin(), qcb::kAllClasses.end()};
  std::vector<qcb::ChannelClass> out;
  for (const auto& s : split(list, ',')) out.push_back(qcb::parse_channel_class(s));
  return out;
}

struct OracleArgs {
  std::string tau;
  std::string cls = "all";
  int starts = 256;
  int iters = 400;
  std::uint64_t seed = 0;
};

int run_oracle(const OracleArgs& a, const Common& c) {
  const auto tau = qcb::io::load_tau(a.tau);
  const Format format = parse_format(c.format);
  Sink sink(c.out);
  auto& os = sink.os();
  Json arr = Json::array();
  if (format == Format::Table) {
    fmt::print(os, "{:<6}{:<20}{:<20}{:<14}{}\n", "class", "oracle", "bound", "gap", "exact");
  } else if (format == Format::Csv) {
    os << "class,oracle,bound,gap,exact,evaluations\n";
  }
  for (const auto cls : classes_from(a.cls)) {
    qcb::OracleConfig config;
    config.cls = cls;
    config.n_starts = a.starts;
    config.refine_iters = a.iters;
    config.seed = a.seed;
    const auto result = qcb::maximize(tau, config);
    const auto b = qcb::bound(tau, cls);
    const double gap = b.value - result.best_value;
    switch (format) {
      case Format::Table:
        fmt::print(os, "{:<6}{:<20.12f}{:<20.12f}{:<14.3e}{}\n", qcb::class_name(cls),
                   result.best_value, b.value, gap, b.exact ? "yes" : "no");
        break;
      case Format::Csv:
        os << qcb::class_name(cls) << ',' << num(result.best_value) << ',' << num(b.value) << ','
           << num(gap) << ',' << (b.exact ? "true" : "false") << ',' << result.evaluations
           << '\n';
        break;
      case Format::Json:
        arr.push_back({{"class", qcb::class_name(cls)},
                       {"oracle", result.best_value},
                       {"bound", b.value},
                       {"gap", gap},
                       {"exact", b.exact},
                       {"evaluations", result.evaluations},
                       {"witness", qcb::io::to_json(result.witness)}});
        break;
    }
  }
  if (format == Format::Json) os << Json{{"seed", a.seed}, {"results", arr}}.dump(2) << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::string cls = "all";
  int n_tau = 100;
  int n_channels = 1000;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& a, const Common& c) {
  const Format format = parse_format(c.format);
  Sink sink(c.out);
  auto& os = sink.os();
  bool ok = true;
  Json arr = Json::array();
  if (format == Format::Table) {
    fmt::print(os, "{:<6}{:<8}{:<10}{:<24}{:<12}{}\n", "class", "n_tau", "channels",
               "max(value - bound)", "violations", "min gap");
  } else if (format == Format::Csv) {
    os << "class,n_tau,n_channels,seed,max_violation,violations,min_gap\n";
  }
  for (const auto cls : classes_from(a.cls)) {
    const auto r = qcb::dominance_sweep(cls, a.n_tau, a.n_channels, a.seed);
    ok = ok && r.violations == 0;
    switch (format) {
      case Format::Table:
        fmt::print(os, "{:<6}{:<8}{:<10}{:<24.6e}{:<12}{:.6e}\n", qcb::class_name(cls), r.n_tau,
                   r.n_channels, r.max_violation, r.violations, r.min_gap);
        break;
      case Format::Csv:
        os << qcb::class_name(cls) << ',' << r.n_tau << ',' << r.n_channels << ',' << r.seed << ','
           << num(r.max_violation) << ',' << r.violations << ',' << num(r.min_gap) << '\n';
        break;
      case Format::Json: {
        Json e{{"class", qcb::class_name(cls)},
               {"n_tau", r.n_tau},
               {"n_channels", r.n_channels},
               {"seed", r.seed},
               {"violations", r.violations}};
        // Empty sweeps have infinite extremes, which JSON cannot carry.
        e["max_violation"] = std::isfinite(r.max_violation) ? Json(r.max_violation) : Json();
        e["min_gap"] = std::isfinite(r.min_gap) ? Json(r.min_gap) : Json();
        arr.push_back(e);
        break;
      }
    }
  }
  if (format == Format::Json) os << Json{{"sweeps", arr}, {"ok", ok}}.dump(2) << '\n';
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds, convertibility and entanglement-breaking detection for qubit channels"};
  app.require_subcommand(1);

  Common common;
  std::uint64_t seed = 0;

  std::string tau_source;
  auto* bound = app.add_subcommand("bound", "all five class bounds for a state");
  bound->add_option("--tau", tau_source, "preset name or state JSON path")->required();
  add_common(bound, common);

  auto* fef = app.add_subcommand("fef", "fully entangled fraction of a state");
  fef->add_option("--tau", tau_source, "preset name or state JSON path")->required();
  add_common(fef, common);

  std::string channel_path, ppovm_path;
  auto* prob = app.add_subcommand("prob", "outcome probabilities of a PPOVM on a channel");
  prob->add_option("--channel", channel_path, "channel JSON path")->required();
  prob->add_option("--ppovm", ppovm_path, "PPOVM JSON path")->required();
  add_common(prob, common);

  ConvertArgs conv;
  auto* convert = app.add_subcommand("convert", "joint convertibility of two pure-state pairs");
  convert->add_option("--x", conv.x, "|<psi|phi>|");
  convert->add_option("--y", conv.y, "|<e|f>|");
  convert->add_option("--instance", conv.instance, "instance JSON path");
  convert->add_option("--achiever", conv.achiever, "emit the achiever channel for D, R, UE or C");
  add_common(convert, common);

  std::string pair, family;
  int grid = 1000;
  auto* compare = app.add_subcommand("compare", "difference of two class values along a family");
  compare->add_option("--pair", pair, "two classes, e.g. UE,D")->required();
  compare->add_option("--family", family, "x=<v> or y=<v>, e.g. x=1/sqrt2")->required();
  compare->add_option("--grid", grid, "number of grid points on [0, 1]");
  Common compare_common;
  compare_common.format = "csv";
  add_common(compare, compare_common);

  DetectArgs det;
  auto* detect = app.add_subcommand("detect", "Werner-channel detection of non-EB behaviour");
  detect->add_option("--w", det.w, "Werner parameter");
  detect->add_option("--sweep", det.sweep, "uniform sweep with this many points on [0, 1]");
  detect->add_option("--at", det.at, "explicit comma-separated w values");
  detect->add_option("--shots", det.shots, "finite-sample mode with this many shots per scheme");
  detect->add_option("--seed", seed, "seed for finite-sample mode")->envname("QCB_SEED");
  add_common(detect, common);

  OracleArgs orc;
  auto* oracle = app.add_subcommand("oracle", "brute-force maximization over a channel class");
  oracle->add_option("--tau", orc.tau, "preset name or state JSON path")->required();
  oracle->add_option("--class", orc.cls, "D, R, UE, GE, C, a comma list, or all");
  oracle->add_option("--starts", orc.starts, "random starts")->check(CLI::PositiveNumber);
  oracle->add_option("--iters", orc.iters, "refinement sweeps per start")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", seed, "seed")->envname("QCB_SEED");
  add_common(oracle, common);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "random soundness sweeps of every bound");
  verify->add_option("--class", ver.cls, "D, R, UE, GE, C, a comma list, or all");
  verify->add_option("--n-tau", ver.n_tau, "random states per class")->check(CLI::NonNegativeNumber);
  verify->add_option("--n-channels", ver.n_channels, "random channels per class")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "seed")->envname("QCB_SEED");
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*bound) return run_bound(tau_source, common);
    if (*fef) return run_fef(tau_source, common);
    if (*prob) return run_prob(channel_path, ppovm_path, common);
    if (*convert) return run_convert(conv, common);
    if (*compare) return run_compare(pair, family, grid, compare_common);
    if (*detect) {
      det.seed = seed;
      return run_detect(det, common);
    }
    if (*oracle) {
      orc.seed = seed;
      return run_oracle(orc, common);
    }
    if (*verify) {
      ver.seed = seed;
      return run_verify(ver, common);
    }
  } catch (const qcb::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const qcb::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
