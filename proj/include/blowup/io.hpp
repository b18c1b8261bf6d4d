#pragma once

#include <json.hpp>

#include "blowup/models.hpp"

namespace blowup {

// JSON forms used by the vertex-set and script file formats.
nlohmann::json to_json(const PointII& p);
nlohmann::json to_json(const VertexSet& g);
nlohmann::json to_json(const DomainDescriptor& d);
nlohmann::json to_json(const BlowupOp& op);
nlohmann::json to_json(const BlowupScript& s);
nlohmann::json to_json(const Verdict& v);

PointII point_from_json(const nlohmann::json& j);
VertexSet set_from_json(const nlohmann::json& j);
BlowupOp op_from_json(const nlohmann::json& j);
BlowupScript script_from_json(const nlohmann::json& j);

// Inline vertex-set expression: "[zeta(0,1), zeta(0, 2/3)]".
VertexSet parse_vertex_set(std::string_view s);

}  // namespace blowup
