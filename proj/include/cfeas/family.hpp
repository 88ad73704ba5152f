#pragma once

#include "cfeas/convex_set.hpp"

#include <functional>
#include <vector>

namespace cfeas
{

/// Exact distance to the intersection of a family, when one is known.
using DistanceOracle = std::function<double(const Point&)>;

/// An ordered family of closed convex sets M_1, ..., M_N.
struct Family
{
    std::vector<ConvexSet> sets;
    DistanceOracle intersectionOracle;  // optional

    [[nodiscard]] std::size_t size() const { return sets.size(); }
    [[nodiscard]] bool has_oracle() const { return static_cast<bool>(intersectionOracle); }

    /// Throws InvalidSetError on an empty family, an invalid member, or mixed dimensions.
    void validate() const;
};

/// Result of a Dykstra run: the approximate projection onto the intersection.
struct DykstraResult
{
    Point point;
    double distance{0.0};
    int cycles{0};
    double lastDisplacement{0.0};
};

/// Projection of x onto the intersection of the family by Dykstra's cyclic
/// corrected projections.
///
/// A cycle is accepted as final when the iterate and every correction term
/// move less than projTol and the observed contraction predicts a remaining
/// drift below projTol. Throws ConvergenceError (carrying the last cycle
/// displacement) after maxInnerIters cycles.
DykstraResult dykstra_project(const Family& family, const Point& x, const TolerancePolicy& tol = {});

/// ||x - x_hat|| with x_hat from dykstra_project.
double dykstra_distance(const Family& family, const Point& x, const TolerancePolicy& tol = {});

/// Distance to the intersection: the family oracle when present, Dykstra otherwise.
double intersection_distance(const Family& family, const Point& x, const TolerancePolicy& tol = {});

/// d(x, M_i) for every member.
std::vector<double> per_set_distances(const Family& family, const Point& x, const TolerancePolicy& tol = {});

}  // namespace cfeas
