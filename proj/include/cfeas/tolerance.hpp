#pragma once

namespace cfeas
{

/// Stopping and membership tolerances shared by every projection routine.
struct TolerancePolicy
{
    double projTol{1e-10};      // iterative-projection stop
    double geomTol{1e-8};       // membership slack
    int maxInnerIters{10'000};  // cap for inner solvers and Dykstra cycles

    /// Throws PreconditionError unless 0 < projTol <= geomTol and maxInnerIters >= 1.
    void validate() const;
};

}  // namespace cfeas
