#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "specscale/oracle.hpp"
#include "specscale/pencil.hpp"
#include "specscale/range.hpp"
#include "specscale/scale.hpp"
#include "specscale/structure.hpp"

namespace specscale {

/// Malformed matrix files and unreadable paths raise this; the CLI maps it
/// to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// {"n": N, "entries": [[[re, im], ...] x N] x N}, row-major.
CMat read_matrix_file(const std::string& path);
nlohmann::json matrix_to_json(const CMat& m);

nlohmann::json boundary_to_json(const RangeBoundary& rb, const ClassifyReport& report);
nlohmann::json body_to_json(const ScaleBody& body, const std::vector<FlatFace>& faces);
nlohmann::json slice_to_json(const IsotraceSlice& slice);
nlohmann::json pencil_to_json(const BivariatePencilPoly& f, const Discriminant& disc,
                              const CriticalAngleSet& angles);
nlohmann::json scan_to_json(const ScanReport& rep);
nlohmann::json analyze_to_json(const Operator& op, const ReducingStructure& rs,
                               const ClassifyReport& base, const std::vector<bool>& polygon_flags);

/// Writes via a temp file and rename so failures leave no partial output.
void write_json_atomic(const nlohmann::json& j, const std::string& path);

}  // namespace specscale
