#pragma once

#include <string>

#include "json.hpp"

#include "fracto/registry.hpp"
#include "fracto/report.hpp"
#include "fracto/sphere.hpp"

namespace fracto {

using json = nlohmann::ordered_json;

/// Parses a space file:
///   { "n": int, "size": int, "convexities": [
///       {"id": str, "kind": "explicit", "hull": {"0,2": [0,1,2], ...}},
///       {"id": str, "kind": "interval"},
///       {"id": str, "kind": "permuted_interval", "perm": [ids]},
///       {"id": str, "kind": "robinson", "points": [[x,y,z],...],
///        "center": [x,y,z], "tol": t} ] }
/// Subset keys are comma-joined ascending ids; a missing key is an error for
/// the explicit kind.
Registry load_space(const json& doc);
Registry load_space_file(const std::string& path);

json report_to_json(const Report& rep);

json family_to_json(const SetFamily& fam);

json set_to_json(const Bits& s);

}  // namespace fracto
