#include "cfeas/trace_io.hpp"
#include "cfeas/csv.hpp"
#include "cfeas/set_json.hpp"

namespace cfeas
{

std::string trace_to_csv(const IterationTrace& trace)
{
    std::vector<std::string> header{"k", "chosenSet", "residual"};
    for (std::size_t i = 0; i < trace.setCount; ++i) {
        header.push_back("d_" + std::to_string(i + 1));
    }
    header.emplace_back("d_intersection");
    for (std::size_t j = 0; j < trace.witnessCount; ++j) {
        header.push_back("fejer_" + std::to_string(j + 1));
    }
    CsvWriter csv(header);
    for (const auto& s : trace.steps) {
        csv.field(static_cast<long long>(s.k)).field(static_cast<long long>(s.chosenSet + 1)).field(s.residual);
        for (double d : s.perSetDistance) {
            csv.field(d);
        }
        csv.field(s.intersectionDistance);
        for (double f : s.fejerDistances) {
            csv.field(f);
        }
        csv.end_row();
    }
    return csv.str();
}

nlohmann::ordered_json trace_to_json(const IterationTrace& trace)
{
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& s : trace.steps) {
        nlohmann::ordered_json j;
        j["k"] = s.k;
        j["x"] = point_to_json(s.x);
        j["chosenSet"] = s.chosenSet + 1;
        j["t"] = s.t;
        j["perSetDistance"] = s.perSetDistance;
        j["residual"] = s.residual;
        j["intersectionDistance"] = s.intersectionDistance ? nlohmann::ordered_json(*s.intersectionDistance) : nullptr;
        j["fejerDistances"] = s.fejerDistances;
        steps.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["schemaVersion"] = kSchemaVersion;
    out["converged"] = trace.converged;
    out["iterations"] = trace.iterations;
    out["stopResidual"] = trace.stopResidual;
    out["steps"] = std::move(steps);
    return out;
}

}  // namespace cfeas
