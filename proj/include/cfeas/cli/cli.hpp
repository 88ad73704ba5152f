#pragma once

#include "cfeas/tolerance.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace cfeas::cli
{

/// Process exit codes.
enum ExitCode : int
{
    kOk = 0,
    kInputError = 1,
    kNotConverged = 2,    // solve: maxIters reached
    kVerdictMismatch = 3  // scenario verdict differs from the expected one, or a check suite failed
};

/// Settings shared by every subcommand.
struct RunConfig
{
    std::string command;
    std::filesystem::path inputPath;  // empty when not given
    std::filesystem::path outputDir{"out"};
    std::uint64_t seed{20240917};
    TolerancePolicy tol;
    std::optional<int> horizon;
};

/// Parses "30deg", "0.5rad" or a bare number of degrees into radians.
/// Throws PreconditionError on anything else.
double parse_angle(std::string_view text);

/// Runs the command line; returns the process exit code. Normal output goes
/// to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfeas::cli
