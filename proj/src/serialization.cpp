#include "qcb/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qcb/detection.hpp"

namespace qcb::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ValidationError(path + ": " + message);
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

double real_from(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Complex complex_from(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(path, "expected a number or [re, im]");
}

Json complex_to(Complex c) { return Json::array({c.real(), c.imag()}); }

template <int N>
Eigen::Matrix<Complex, N, N> matrix_from(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != N) fail(path, "expected " + std::to_string(N) + " rows");
  Eigen::Matrix<Complex, N, N> m;
  for (int r = 0; r < N; ++r) {
    const std::string row_path = index_path(path, r);
    const Json& row = j[r];
    if (!row.is_array() || row.size() != N) {
      fail(row_path, "expected " + std::to_string(N) + " entries");
    }
    for (int c = 0; c < N; ++c) m(r, c) = complex_from(row[c], index_path(row_path, c));
  }
  return m;
}

template <typename M>
Json matrix_to(const M& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Real44 real_matrix_from(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) fail(path, "expected 4 rows");
  Real44 t;
  for (int r = 0; r < 4; ++r) {
    const std::string row_path = index_path(path, r);
    if (!j[r].is_array() || j[r].size() != 4) fail(row_path, "expected 4 entries");
    for (int c = 0; c < 4; ++c) t(r, c) = real_from(j[r][c], index_path(row_path, c));
  }
  return t;
}

Vec2 vector2_from(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected 2 amplitudes");
  return Vec2(complex_from(j[0], index_path(path, 0)), complex_from(j[1], index_path(path, 1)));
}

PureState pure_from(const Json& j, const std::string& path) {
  const Vec2 v = vector2_from(j, path);
  try {
    return PureState(v);
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

// Runs a library constructor and prefixes its validation message with `path`.
template <typename F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string_view representation_name(Representation r) {
  switch (r) {
    case Representation::Kraus: return "kraus";
    case Representation::Ptm: return "ptm";
    case Representation::Choi: return "choi";
  }
  return "choi";
}

}  // namespace

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // byte is one past the offending character.
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream os;
    os << source << ":" << line << ":" << column << ": malformed JSON (" << e.what() << ")";
    throw ValidationError(os.str());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

// ---------------------------------------------------------------------------

Json to_json(const QubitChannel& channel) {
  Json j;
  const Representation rep = channel.representation();
  j["representation"] = representation_name(rep);
  switch (rep) {
    case Representation::Kraus: {
      Json ks = Json::array();
      for (const auto& k : channel.kraus()) ks.push_back(matrix_to(k));
      j["kraus"] = ks;
      break;
    }
    case Representation::Ptm: {
      Json rows = Json::array();
      for (int r = 0; r < 4; ++r) {
        Json row = Json::array();
        for (int c = 0; c < 4; ++c) row.push_back(channel.ptm()(r, c));
        rows.push_back(row);
      }
      j["ptm"] = rows;
      break;
    }
    case Representation::Choi:
      j["choi"] = matrix_to(channel.choi());
      break;
  }
  if (channel.class_tag()) j["class"] = class_name(*channel.class_tag());
  return j;
}

QubitChannel channel_from_json(const Json& j) {
  const std::string root = "$";
  const Json& rep_json = field(j, root, "representation");
  if (!rep_json.is_string()) fail(root + ".representation", "expected a string");
  const std::string rep = rep_json.get<std::string>();

  std::optional<ChannelClass> tag;
  if (j.contains("class")) {
    const Json& c = j["class"];
    if (!c.is_string()) fail(root + ".class", "expected a string");
    tag = with_path(root + ".class", [&] { return parse_channel_class(c.get<std::string>()); });
  }

  if (rep == "kraus") {
    const Json& ks = field(j, root, "kraus");
    if (!ks.is_array() || ks.empty()) fail(root + ".kraus", "expected a non-empty array");
    std::vector<Mat2> kraus;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      kraus.push_back(matrix_from<2>(ks[i], index_path(root + ".kraus", i)));
    }
    return with_path(root, [&] { return QubitChannel::from_kraus(kraus, tag); });
  }
  if (rep == "ptm") {
    const Real44 t = real_matrix_from(field(j, root, "ptm"), root + ".ptm");
    return with_path(root, [&] { return QubitChannel::from_ptm(t, tag); });
  }
  if (rep == "choi") {
    const Mat4 c = matrix_from<4>(field(j, root, "choi"), root + ".choi");
    return with_path(root, [&] { return QubitChannel::from_choi(c, tag); });
  }
  fail(root + ".representation", "expected \"kraus\", \"ptm\" or \"choi\", got \"" + rep + "\"");
}

Json to_json(const BipartiteState& tau) { return Json{{"matrix", matrix_to(tau.matrix())}}; }

BipartiteState state_from_json(const Json& j) {
  const std::string root = "$";
  if (!j.is_object()) fail(root, "expected an object");
  if (j.contains("matrix")) {
    const Mat4 m = matrix_from<4>(j["matrix"], root + ".matrix");
    return with_path(root + ".matrix", [&] { return BipartiteState::from_matrix(m); });
  }
  if (j.contains("pure")) {
    const Json& p = j["pure"];
    if (!p.is_array() || p.size() != 4) fail(root + ".pure", "expected 4 amplitudes");
    Vec4 v;
    for (int i = 0; i < 4; ++i) v[i] = complex_from(p[i], index_path(root + ".pure", i));
    return with_path(root + ".pure", [&] { return BipartiteState::from_pure(v); });
  }
  fail(root, "expected field \"matrix\" or \"pure\"");
}

Json to_json(const Ppovm& ppovm) {
  Json effects = Json::array();
  for (std::size_t m = 0; m < ppovm.size(); ++m) {
    effects.push_back({{"label", ppovm.labels()[m]}, {"matrix", matrix_to(ppovm.effects()[m])}});
  }
  return Json{{"anc_marginal", matrix_to(ppovm.anc_marginal().matrix())}, {"effects", effects}};
}

Ppovm ppovm_from_json(const Json& j) {
  const std::string root = "$";
  const Mat2 anc = matrix_from<2>(field(j, root, "anc_marginal"), root + ".anc_marginal");
  const QubitState rho =
      with_path(root + ".anc_marginal", [&] { return QubitState::from_matrix(anc); });
  const Json& es = field(j, root, "effects");
  if (!es.is_array() || es.empty()) fail(root + ".effects", "expected a non-empty array");
  std::vector<Mat4> effects;
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < es.size(); ++m) {
    const std::string path = index_path(root + ".effects", m);
    effects.push_back(matrix_from<4>(field(es[m], path, "matrix"), path + ".matrix"));
    if (es[m].contains("label")) {
      if (!es[m]["label"].is_string()) fail(path + ".label", "expected a string");
      labels.push_back(es[m]["label"].get<std::string>());
    } else {
      labels.push_back(std::to_string(m));
    }
  }
  return with_path(root, [&] { return Ppovm::make(effects, rho, labels); });
}

Json to_json(const ConversionInstance& inst) {
  const auto state = [](const PureState& s) {
    return Json::array({complex_to(s[0]), complex_to(s[1])});
  };
  return Json{{"psi", state(inst.psi())},
              {"phi", state(inst.phi())},
              {"e", state(inst.e())},
              {"f", state(inst.f())}};
}

ConversionInstance instance_from_json(const Json& j) {
  const std::string root = "$";
  if (!j.is_object()) fail(root, "expected an object");
  if (j.contains("x") || j.contains("y")) {
    const double x = real_from(field(j, root, "x"), root + ".x");
    const double y = real_from(field(j, root, "y"), root + ".y");
    return with_path(root, [&] { return ConversionInstance::from_overlaps(x, y); });
  }
  return ConversionInstance(pure_from(field(j, root, "psi"), root + ".psi"),
                            pure_from(field(j, root, "phi"), root + ".phi"),
                            pure_from(field(j, root, "e"), root + ".e"),
                            pure_from(field(j, root, "f"), root + ".f"));
}

// ---------------------------------------------------------------------------

std::optional<BipartiteState> tau_preset(std::string_view name) {
  if (name == "maximally-entangled") return BipartiteState::maximally_entangled();
  if (name == "maximally-mixed") return BipartiteState::maximally_mixed();
  if (name == "product-00") {
    return BipartiteState::product(QubitState::from_pure(PureState::zero()),
                                   QubitState::from_pure(PureState::zero()));
  }
  if (name == "detection-ancilla-free") return detection_ancilla_free_tau();
  constexpr std::string_view kWerner = "werner-state:";
  if (name.substr(0, kWerner.size()) == kWerner) {
    const std::string_view arg = name.substr(kWerner.size());
    double w = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), w);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) {
      throw ValidationError("werner-state preset needs a number, got '" + std::string(arg) + "'");
    }
    // (id (x) Psi_w)(P+) = w P+ + (1 - w) I/4
    return BipartiteState::from_matrix(make_werner(w).apply_extended(
        BipartiteState::maximally_entangled().matrix()));
  }
  return std::nullopt;
}

BipartiteState load_tau(const std::string& preset_or_path) {
  if (auto preset = tau_preset(preset_or_path)) return *preset;
  return state_from_json(load_json_file(preset_or_path));
}

}  // namespace qcb::io
