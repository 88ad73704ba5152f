#pragma once

#include "cfeas/lab/experiments.hpp"

#include "json.hpp"

#include <string>

namespace cfeas::lab
{

/// Columns: k, d_set_1..d_set_N, d_intersection.
std::string gpr_table_to_csv(const GprReport& report, std::size_t setCount);

/// Scenario name, parameters and the family it builds.
nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

nlohmann::ordered_json gpr_report_to_json(const GprReport& report);

nlohmann::ordered_json certificate_to_json(const GprCertificate& cert);

nlohmann::ordered_json enlargement_to_json(const EnlargementPair& pair);

nlohmann::ordered_json interior_report_to_json(const BoundedInteriorReport& report);

}  // namespace cfeas::lab
