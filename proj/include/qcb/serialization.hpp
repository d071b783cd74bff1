#pragma once

// JSON schemas for channels, states, PPOVMs and conversion instances.
//
// Scalars: a complex entry is [re, im] or a bare real number.
// Matrices: arrays of rows, e.g. a 2x2 matrix is [[a, b], [c, d]].
//
// Channel   {"representation": "kraus", "kraus": [M, ...]}
//           {"representation": "ptm", "ptm": <4x4 real>}
//           {"representation": "choi", "choi": <4x4>}
//           optional "class": "D" | "R" | "UE" | "GE" | "C"
// State     {"matrix": <4x4>} or {"pure": [c00, c01, c10, c11]}
// PPOVM     {"anc_marginal": <2x2>, "effects": [{"label": "...", "matrix": <4x4>}, ...]}
// Instance  {"psi": [c0, c1], "phi": ..., "e": ..., "f": ...} or {"x": 0.3, "y": 0.5}
//
// Failures raise ValidationError naming the JSON path, e.g.
// "$.effects[1].matrix[2][0]: expected a number or [re, im]".

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qcb/channels.hpp"
#include "qcb/convertibility.hpp"
#include "qcb/measurement.hpp"

namespace qcb::io {

using Json = nlohmann::json;

/// Parses text, reporting syntax errors as "<source>:<line>:<column>: ...".
Json parse_json_text(std::string_view text, std::string_view source = "<input>");
Json load_json_file(const std::string& path);

Json to_json(const QubitChannel& channel);
QubitChannel channel_from_json(const Json& j);

Json to_json(const BipartiteState& tau);
BipartiteState state_from_json(const Json& j);

Json to_json(const Ppovm& ppovm);
Ppovm ppovm_from_json(const Json& j);

Json to_json(const ConversionInstance& inst);
ConversionInstance instance_from_json(const Json& j);

/// maximally-entangled, maximally-mixed, product-00, werner-state:<w>,
/// detection-ancilla-free. Returns nullopt for an unknown name.
std::optional<BipartiteState> tau_preset(std::string_view name);
/// A preset name or a path to a state JSON file.
BipartiteState load_tau(const std::string& preset_or_path);

}  // namespace qcb::io
