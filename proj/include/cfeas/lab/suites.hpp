#pragma once

#include "cfeas/tolerance.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cfeas::lab
{

/// Outcome of one randomized property suite.
struct SuiteReport
{
    std::string name;
    int cases{0};
    int failures{0};
    std::string worstMeasure;  // what worstValue measures
    double worstValue{0.0};    // the case closest to (or furthest past) its bound
    nlohmann::ordered_json worstWitness = nlohmann::ordered_json::object();
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    [[nodiscard]] bool passed() const { return cases > 0 && failures == 0; }
};

/// projections, fejer, identity, lemma2, lemma3, lemma4, modulus.
const std::vector<std::string_view>& suite_names();

/// Runs one suite, or every suite for "all". Throws PreconditionError for an
/// unknown name; the message lists the valid names.
std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed, const TolerancePolicy& tol = {});

SuiteReport run_suite(std::string_view name, std::uint64_t seed, const TolerancePolicy& tol = {});

nlohmann::ordered_json suite_report_to_json(const SuiteReport& report);

}  // namespace cfeas::lab
