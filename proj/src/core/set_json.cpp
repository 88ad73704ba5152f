#include "cfeas/set_json.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace cfeas
{
namespace
{

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& path)
{
    auto it = j.find(key);
    if (it == j.end()) {
        throw SchemaError(fmt::format("{}.{}: missing required field", path, key));
    }
    return *it;
}

std::vector<Point> points_field(const nlohmann::json& j, const char* key, const std::string& path)
{
    const auto& arr = field(j, key, path);
    const std::string here = fmt::format("{}.{}", path, key);
    if (!arr.is_array()) {
        throw SchemaError(fmt::format("{}: expected an array of points", here));
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(point_from_json(arr[i], fmt::format("{}[{}]", here, i)));
    }
    return out;
}

nlohmann::ordered_json points_to_json(const std::vector<Point>& pts)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : pts) {
        arr.push_back(point_to_json(p));
    }
    return arr;
}

}  // namespace

nlohmann::ordered_json point_to_json(const Point& p)
{
    auto arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        arr.push_back(p(i));
    }
    return arr;
}

Point point_from_json(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_array() || j.empty()) {
        throw SchemaError(fmt::format("{}: expected a non-empty numeric array", path));
    }
    Point p(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw SchemaError(fmt::format("{}[{}]: expected a number", path, i));
        }
        p(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return p;
}

double number_field(const nlohmann::json& j, const char* key, const std::string& path)
{
    const auto& v = field(j, key, path);
    if (!v.is_number()) {
        throw SchemaError(fmt::format("{}.{}: expected a number", path, key));
    }
    return v.get<double>();
}

void require_known_fields(const nlohmann::json& j,
                          std::initializer_list<std::string_view> allowed,
                          const std::string& path)
{
    if (!j.is_object()) {
        throw SchemaError(fmt::format("{}: expected an object", path));
    }
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw SchemaError(fmt::format("{}.{}: unknown field", path, item.key()));
        }
    }
}

void require_schema_version(const nlohmann::json& j, const std::string& path)
{
    const auto& v = field(j, "schemaVersion", path);
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
        throw SchemaError(fmt::format("{}.schemaVersion: unsupported version (expected {})", path, kSchemaVersion));
    }
}

nlohmann::ordered_json to_json(const ConvexSet& set)
{
    nlohmann::ordered_json j;
    j["kind"] = std::string(kind_name(set));
    std::visit(overloaded{
                   [&](const Halfspace& s) {
                       j["normal"] = point_to_json(s.normal);
                       j["offset"] = s.offset;
                   },
                   [&](const Hyperplane& s) {
                       j["normal"] = point_to_json(s.normal);
                       j["offset"] = s.offset;
                   },
                   [&](const Ball& s) {
                       j["center"] = point_to_json(s.center);
                       j["radius"] = s.radius;
                   },
                   [&](const Box& s) {
                       j["lower"] = point_to_json(s.lower);
                       j["upper"] = point_to_json(s.upper);
                   },
                   [&](const AffineFlat& s) {
                       j["base"] = point_to_json(s.base);
                       j["basis"] = points_to_json(s.basis);
                   },
                   [&](const CircularCone& s) {
                       j["apex"] = point_to_json(s.apex);
                       j["axis"] = point_to_json(s.axis);
                       j["halfAngle"] = s.halfAngle;
                   },
                   [&](const Polytope& s) { j["vertices"] = points_to_json(s.vertices); },
                   [&](const TranslatedCone& s) {
                       j["vertex"] = point_to_json(s.vertex);
                       j["generators"] = points_to_json(s.generators);
                   },
               },
               set);
    return j;
}

ConvexSet set_from_json(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_object()) {
        throw SchemaError(fmt::format("{}: expected an object", path));
    }
    const auto& kindField = field(j, "kind", path);
    if (!kindField.is_string()) {
        throw SchemaError(fmt::format("{}.kind: expected a string", path));
    }
    const auto kind = kindField.get<std::string>();

    ConvexSet set;
    if (kind == "halfspace" || kind == "hyperplane") {
        require_known_fields(j, {"kind", "schemaVersion", "normal", "offset"}, path);
        const Point normal = point_from_json(field(j, "normal", path), path + ".normal");
        const double offset = number_field(j, "offset", path);
        if (kind == "halfspace") {
            set = Halfspace{normal, offset};
        } else {
            set = Hyperplane{normal, offset};
        }
    } else if (kind == "ball") {
        require_known_fields(j, {"kind", "schemaVersion", "center", "radius"}, path);
        set = Ball{point_from_json(field(j, "center", path), path + ".center"), number_field(j, "radius", path)};
    } else if (kind == "box") {
        require_known_fields(j, {"kind", "schemaVersion", "lower", "upper"}, path);
        set = Box{point_from_json(field(j, "lower", path), path + ".lower"),
                  point_from_json(field(j, "upper", path), path + ".upper")};
    } else if (kind == "flat") {
        require_known_fields(j, {"kind", "schemaVersion", "base", "basis"}, path);
        set = AffineFlat{point_from_json(field(j, "base", path), path + ".base"), points_field(j, "basis", path)};
    } else if (kind == "circular_cone") {
        require_known_fields(j, {"kind", "schemaVersion", "apex", "axis", "halfAngle"}, path);
        set = CircularCone{point_from_json(field(j, "apex", path), path + ".apex"),
                           point_from_json(field(j, "axis", path), path + ".axis"),
                           number_field(j, "halfAngle", path)};
    } else if (kind == "polytope") {
        require_known_fields(j, {"kind", "schemaVersion", "vertices"}, path);
        set = Polytope{points_field(j, "vertices", path)};
    } else if (kind == "translated_cone") {
        require_known_fields(j, {"kind", "schemaVersion", "vertex", "generators"}, path);
        set = TranslatedCone{point_from_json(field(j, "vertex", path), path + ".vertex"),
                             points_field(j, "generators", path)};
    } else {
        throw SchemaError(fmt::format("{}.kind: unknown set kind '{}'", path, kind));
    }
    try {
        validate(set);
    } catch (const Error& e) {
        throw SchemaError(fmt::format("{}: {}", path, e.what()));
    }
    return set;
}

nlohmann::ordered_json family_to_json(const Family& family)
{
    nlohmann::ordered_json j;
    j["schemaVersion"] = kSchemaVersion;
    auto sets = nlohmann::ordered_json::array();
    for (const auto& s : family.sets) {
        sets.push_back(to_json(s));
    }
    j["sets"] = std::move(sets);
    return j;
}

Family family_from_json(const nlohmann::json& j, const std::string& path)
{
    require_known_fields(j, {"schemaVersion", "sets"}, path);
    require_schema_version(j, path);
    const auto& sets = field(j, "sets", path);
    if (!sets.is_array() || sets.empty()) {
        throw SchemaError(fmt::format("{}.sets: expected a non-empty array", path));
    }
    Family family;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        family.sets.push_back(set_from_json(sets[i], fmt::format("{}.sets[{}]", path, i)));
    }
    try {
        family.validate();
    } catch (const Error& e) {
        throw SchemaError(fmt::format("{}: {}", path, e.what()));
    }
    return family;
}

}  // namespace cfeas
