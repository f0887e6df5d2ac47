#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cremona/action.hpp"
#include "cremona/birmap.hpp"
#include "cremona/piclattice.hpp"

namespace cremona {

using Json = nlohmann::json;

/// Parses JSON text, raising ErrorKind::Parse on malformed input.
Json parse_json(const std::string& text);

CycScalar scalar_from_json(const Json& j);  // "1/2*zeta(8)" or an integer
Json to_json(const CycScalar& s);

/// [x, y, z] or {"coords": [x, y, z]}.
ProjPoint point_from_json(const Json& j);
Json to_json(const ProjPoint& p);
std::vector<ProjPoint> points_from_json(const Json& j);

/// [f0, f1, f2] or {"components": [f0, f1, f2]}.
ProjMap map_from_json(const Json& j);
Json to_json(const ProjMap& f);

/// {"rank": r} for a bare lattice, or {"points": [{"proper": [..]} | {"near": {"parent": i, "line": [..]}}]}.
SurfaceModel model_from_json(const Json& j);
Json to_json(const SurfaceModel& model);

/// Label string ("L-E1"), {"ell": 1, "e": [...]} or a vector [ell, e1, ..., er].
DivisorClass class_from_json(const Json& j, int r);
Json to_json(const DivisorClass& c);

/// {"matrix": [[..]]} in basis (L, E1..Er), optionally with "basis": ["E1",..,"L"]
/// naming the order of rows and columns; or {"curve_perm": [["E2","D12"], ...]}
/// resolved against the model's curve labels.
LatticeIsometry isometry_from_json(const Json& j, const SurfaceModel* model);
Json to_json(const LatticeIsometry& m);

/// {"isolated_points": n, "curve_genera": [g, ...], "euler": chi}
FixedLocus fixed_locus_from_json(const Json& j);

Json labels_json(const SurfaceModel& model, const std::vector<std::size_t>& indices);
Json to_json(const ConicBundle& cb, const SurfaceModel& model);

}  // namespace cremona
