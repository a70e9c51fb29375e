#ifndef QBND_IO_JSON_HPP
#define QBND_IO_JSON_HPP

#include <json.hpp>
#include <string>
#include <variant>

#include "qbnd/boundariness.hpp"
#include "qbnd/polytope.hpp"

namespace qbnd {

using Json = nlohmann::json;

/// Matrix schema: {"rows": r, "cols": c, "data": [[re, im], ...]} with the
/// entries row-major.
Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json state_to_json(const QuantumState& s);
Json povm_to_json(const Povm& p);
Json channel_to_json(const QuantumChannel& c);
Json polytope_to_json(const PolytopeBase& b);

QuantumState state_from_json(const Json& j);
Povm povm_from_json(const Json& j);
QuantumChannel channel_from_json(const Json& j);
PolytopeBase polytope_from_json(const Json& j);

using LoadedObject = std::variant<QuantumState, Povm, QuantumChannel, PolytopeBase>;

/// Dispatches on "kind" ("state" | "povm" | "channel"); files without a
/// kind but with "vertices" load as polytope bases. Loaded objects are
/// validated.
LoadedObject object_from_json(const Json& j);
LoadedObject load_object(const std::string& path);

const char* object_kind(const LoadedObject& obj);

/// Report serialization; `kind` selects how the witness and complement are
/// packaged ("state" | "povm" | "channel").
Json report_to_json(const BoundarinessReport& rep, const std::string& kind);

/// Shortest representation that round-trips (17 significant digits).
std::string format_double(double v);

}  // namespace qbnd

#endif  // QBND_IO_JSON_HPP
