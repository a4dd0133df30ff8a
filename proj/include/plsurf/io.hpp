#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "plsurf/cell_automorphism.hpp"
#include "plsurf/decomposition.hpp"
#include "plsurf/generate.hpp"

namespace plsurf {

/// Reads an instance file:
///   {"vertices": [id], "edges": [[id, tail, head]], "faces": [[id, [+-edge]]],
///    "values": {"id": "p/q"}, "target": "line" | "circle", "metadata": {}}
/// Malformed JSON throws SyntaxError with line and column, a wrong shape
/// throws SchemaError naming the offending field. The complex and function
/// are then built, and with `validate` the axioms are checked.
/// Non-string metadata values are kept as their JSON text.
Instance parse_instance(std::string_view text, bool validate = true);

/// Canonical form: cells in complex order, rationals as reduced "p/q",
/// two-space indentation.
std::string serialize_instance(const Instance& inst);

/// Automorphism file, in ids of the instance:
///   {"annuli": [face id], "vertices": {"id": id}, "edges": {"id": [id, +-1]},
///    "faces": {"id": [id, +-1]}}
/// Annulus faces turn the partition into one with boundary circles.
struct AutomorphismInput {
  CellPartition partition;
  CellularAutomorphism map;
};

AutomorphismInput parse_automorphism(std::string_view text, const SurfaceComplex& s);
std::string serialize_automorphism(const CellPartition& p, const CellularAutomorphism& h);

/// A command result as structured data and as plain text.
struct Report {
  nlohmann::ordered_json data;
  std::string text;
};

Report validate_report(const Instance& inst);
Report analyze_report(const Atlas& a);
Report atoms_report(const Atlas& a);
Report decomposition_report(const DecompositionReport& rep);
Report lefschetz_report(const AutomorphismInput& in, bool assume_isotopic);

}  // namespace plsurf
