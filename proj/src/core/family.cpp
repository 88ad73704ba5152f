#include "cfeas/family.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace cfeas
{

void Family::validate() const
{
    if (sets.empty()) {
        throw InvalidSetError("family: needs at least one set");
    }
    const Eigen::Index n = dimension(sets.front());
    for (const auto& s : sets) {
        cfeas::validate(s);
        if (dimension(s) != n) {
            throw DimensionError(fmt::format("family: mixed dimensions ({} vs {})", n, dimension(s)));
        }
    }
}

DykstraResult dykstra_project(const Family& family, const Point& x, const TolerancePolicy& tol)
{
    family.validate();
    tol.validate();
    require_dim(x, dimension(family.sets.front()), "dykstra start point");

    const std::size_t n = family.sets.size();
    Point y = x;
    std::vector<Point> increments(n, Point::Zero(x.size()));
    double previousMove = 0.0;

    for (int cycle = 1; cycle <= tol.maxInnerIters; ++cycle) {
        const Point start = y;
        double incrementMove = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const Point shifted = y + increments[i];
            const Point next = project(family.sets[i], shifted, tol);
            Point updated = shifted - next;
            incrementMove = std::max(incrementMove, (updated - increments[i]).norm());
            increments[i] = std::move(updated);
            y = next;
        }
        const double move = std::max((y - start).norm(), incrementMove);
        bool done = move == 0.0 || (n == 1 && cycle >= 1);
        if (!done && move <= tol.projTol) {
            // Geometric tail estimate from the last two cycles.
            const double ratio = previousMove > 0.0 ? move / previousMove : 1.0;
            done = move <= 1e-3 * tol.projTol || (ratio < 1.0 && move * ratio / (1.0 - ratio) <= tol.projTol);
        }
        if (done) {
            return {y, (x - y).norm(), cycle, move};
        }
        previousMove = move;
        if (cycle == tol.maxInnerIters) {
            throw ConvergenceError(
                fmt::format("dykstra did not converge in {} cycles (last displacement {:.3e})", cycle, move), move);
        }
    }
    throw ConvergenceError("dykstra: no cycles run", 0.0);
}

double dykstra_distance(const Family& family, const Point& x, const TolerancePolicy& tol)
{
    return dykstra_project(family, x, tol).distance;
}

double intersection_distance(const Family& family, const Point& x, const TolerancePolicy& tol)
{
    if (family.has_oracle()) {
        return family.intersectionOracle(x);
    }
    return dykstra_distance(family, x, tol);
}

std::vector<double> per_set_distances(const Family& family, const Point& x, const TolerancePolicy& tol)
{
    std::vector<double> out;
    out.reserve(family.sets.size());
    for (const auto& s : family.sets) {
        out.push_back(distance(s, x, tol));
    }
    return out;
}

}  // namespace cfeas
