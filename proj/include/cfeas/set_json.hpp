#pragma once

#include "cfeas/family.hpp"

#include "json.hpp"

#include <string>

namespace cfeas
{

/// Version written to and required from every JSON document.
inline constexpr int kSchemaVersion = 1;

/// A JSON document violates the documented schema; the message names the
/// offending field path (e.g. "sets[1].kind").
class SchemaError : public Error
{
public:
    using Error::Error;
};

/// Set objects carry a "kind" discriminator:
///
///   {"kind": "halfspace",       "normal": [..], "offset": b}
///   {"kind": "hyperplane",      "normal": [..], "offset": b}
///   {"kind": "ball",            "center": [..], "radius": r}
///   {"kind": "box",             "lower": [..],  "upper": [..]}
///   {"kind": "flat",            "base": [..],   "basis": [[..], ..]}
///   {"kind": "circular_cone",   "apex": [..],   "axis": [..], "halfAngle": rad}
///   {"kind": "polytope",        "vertices": [[..], ..]}
///   {"kind": "translated_cone", "vertex": [..], "generators": [[..], ..]}
///
/// Unknown fields are rejected. A top-level set document also carries
/// "schemaVersion": 1.
nlohmann::ordered_json to_json(const ConvexSet& set);

ConvexSet set_from_json(const nlohmann::json& j, const std::string& path = "set");

/// {"schemaVersion": 1, "sets": [ ... ]}
nlohmann::ordered_json family_to_json(const Family& family);

Family family_from_json(const nlohmann::json& j, const std::string& path = "family");

nlohmann::ordered_json point_to_json(const Point& p);

Point point_from_json(const nlohmann::json& j, const std::string& path);

/// Throws SchemaError unless j is an object whose keys are all in `allowed`.
void require_known_fields(const nlohmann::json& j,
                          std::initializer_list<std::string_view> allowed,
                          const std::string& path);

/// Throws SchemaError unless j["schemaVersion"] == 1.
void require_schema_version(const nlohmann::json& j, const std::string& path);

double number_field(const nlohmann::json& j, const char* key, const std::string& path);

}  // namespace cfeas
