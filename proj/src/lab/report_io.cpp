#include "cfeas/lab/report_io.hpp"

#include "cfeas/csv.hpp"
#include "cfeas/set_json.hpp"

#include <fmt/format.h>

namespace cfeas::lab
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

nlohmann::ordered_json cone_to_json(const ConeHull& hull)
{
    nlohmann::ordered_json j;
    j["vertex"] = point_to_json(hull.vertex);
    j["base"] = to_json(hull.base);
    j["realized"] = to_json(hull.realized);
    return j;
}

nlohmann::ordered_json polygon_to_json(const ConvexPolygon& poly)
{
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : poly.vertices) {
        vs.push_back({v.x(), v.y()});
    }
    nlohmann::ordered_json j;
    j["vertices"] = std::move(vs);
    j["area"] = poly.area();
    return j;
}

}  // namespace

std::string gpr_table_to_csv(const GprReport& report, std::size_t setCount)
{
    std::vector<std::string> header{"k"};
    for (std::size_t i = 1; i <= setCount; ++i) {
        header.push_back(fmt::format("d_set_{}", i));
    }
    header.emplace_back("d_intersection");
    CsvWriter csv(std::move(header));
    for (const auto& row : report.table) {
        csv.field(static_cast<long long>(row.k));
        for (double d : row.setDistances) {
            csv.field(d);
        }
        csv.field(row.intersectionDistance);
        csv.end_row();
    }
    return csv.str();
}

nlohmann::ordered_json scenario_to_json(const Scenario& scenario)
{
    nlohmann::ordered_json params = std::visit(
        overloaded{
            [](const std::monostate&) { return nlohmann::ordered_json::object(); },
            [](const Case1Params& p) {
                return nlohmann::ordered_json{
                    {"radiusA", p.radiusA}, {"radiusB", p.radiusB}, {"centerGap", p.centerGap}};
            },
            [](const Case2Params& p) {
                return nlohmann::ordered_json{
                    {"halfAngle", p.halfAngle}, {"delta", p.delta}, {"rSchedule", p.rSchedule}};
            },
            [](const Case3Params& p) {
                return nlohmann::ordered_json{
                    {"p", p.p}, {"d", p.d}, {"halfAngle", p.halfAngle}, {"rSchedule", p.rSchedule}};
            },
            [](const Case4Params& p) {
                return nlohmann::ordered_json{{"a", to_json(p.a)},
                                              {"b", to_json(p.b)},
                                              {"plane", to_json(p.plane)},
                                              {"common", polygon_to_json(p.common)}};
            },
        },
        scenario.params);

    nlohmann::ordered_json j;
    j["name"] = case_name(scenario.kind);
    j["params"] = std::move(params);
    j["family"] = family_to_json(scenario.family);
    auto ws = nlohmann::ordered_json::array();
    for (const auto& w : scenario.witnesses) {
        ws.push_back(point_to_json(w));
    }
    j["witnesses"] = std::move(ws);
    return j;
}

nlohmann::ordered_json gpr_report_to_json(const GprReport& report)
{
    nlohmann::ordered_json j;
    j["verdict"] = gpr_verdict_name(report.verdict);
    j["threshold"] = report.threshold;
    j["rows"] = report.table.size();
    j["perSetDistanceTails"] = report.perSetDistanceTails;
    j["intersectionDistanceTail"] = report.intersectionDistanceTail;
    j["intersectionDistanceTailMin"] = report.intersectionDistanceTailMin;
    return j;
}

nlohmann::ordered_json enlargement_to_json(const EnlargementPair& pair)
{
    nlohmann::ordered_json j;
    j["x"] = point_to_json(pair.x);
    j["px"] = point_to_json(pair.px);
    j["xs"] = point_to_json(pair.xs);
    j["coneA"] = cone_to_json(pair.coneA);
    j["coneB"] = cone_to_json(pair.coneB);
    j["plane"] = to_json(pair.plane);
    j["common"] = polygon_to_json(pair.common);
    return j;
}

nlohmann::ordered_json interior_report_to_json(const BoundedInteriorReport& report)
{
    nlohmann::ordered_json j;
    j["boundedRadiusBound"] = report.boundedRadiusBound;
    j["interiorBallRadius"] = report.interiorBallRadius;
    j["witnessCenter"] = point_to_json(report.witnessCenter);
    j["raysSampled"] = report.raysSampled;
    return j;
}

nlohmann::ordered_json certificate_to_json(const GprCertificate& cert)
{
    nlohmann::ordered_json j;
    j["schemaVersion"] = kSchemaVersion;
    j["epsilon"] = cert.epsilon;
    j["horizon"] = cert.horizon;
    j["tailIndex"] = cert.tailIndex;
    j["certified"] = cert.certified;
    j["chain"] = {{"enlargedDistanceBound", cert.enlargedDistanceBound},
                  {"baseDistanceBound", cert.baseDistanceBound},
                  {"holds", cert.chainHolds}};
    j["coneDistanceTail"] = cert.coneDistanceTail;
    j["setDistanceTail"] = cert.setDistanceTail;
    j["lemma3Report"] = interior_report_to_json(cert.lemma3Report);
    j["pair"] = enlargement_to_json(cert.pair);
    return j;
}

}  // namespace cfeas::lab
