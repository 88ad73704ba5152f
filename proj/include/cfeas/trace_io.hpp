#pragma once

#include "cfeas/iteration.hpp"

#include "json.hpp"

#include <string>

namespace cfeas
{

/// Columns: k, chosenSet, residual, d_1..d_N, d_intersection, fejer_1..fejer_W.
/// Set and witness columns are 1-based; d_intersection is empty when unknown.
std::string trace_to_csv(const IterationTrace& trace);

nlohmann::ordered_json trace_to_json(const IterationTrace& trace);

}  // namespace cfeas
