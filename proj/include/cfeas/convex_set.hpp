#pragma once

#include "cfeas/point.hpp"
#include "cfeas/tolerance.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace cfeas
{

/// {x : <normal, x> <= offset}
struct Halfspace
{
    Point normal;
    double offset{0.0};
};

/// {x : <normal, x> = offset}
struct Hyperplane
{
    Point normal;
    double offset{0.0};
};

struct Ball
{
    Point center;
    double radius{0.0};
};

struct Box
{
    Point lower;
    Point upper;
};

/// base + span(basis). An empty basis is the singleton {base}.
struct AffineFlat
{
    Point base;
    std::vector<Point> basis;
};

/// {apex + v : angle(v, axis) <= halfAngle}, one nappe.
struct CircularCone
{
    Point apex;
    Point axis;
    double halfAngle{0.0};
};

/// Convex hull of the vertices.
struct Polytope
{
    std::vector<Point> vertices;
};

/// vertex + cone{generators}. No generators is the singleton {vertex}.
struct TranslatedCone
{
    Point vertex;
    std::vector<Point> generators;
};

using ConvexSet = std::variant<Halfspace,
                               Hyperplane,
                               Ball,
                               Box,
                               AffineFlat,
                               CircularCone,
                               Polytope,
                               TranslatedCone>;

/// Short lowercase name of the variant ("halfspace", "ball", ...).
std::string_view kind_name(const ConvexSet& set);

/// Ambient dimension of the set.
Eigen::Index dimension(const ConvexSet& set);

/// Throws InvalidSetError if the set's parameters break its invariants.
void validate(const ConvexSet& set);

/// Metric projection of x onto the set.
///
/// Closed forms for halfspace, hyperplane, ball, box, flat and circular cone;
/// active-set nearest-point solvers for polytope and translated cone. Throws
/// DimensionError, InvalidSetError, or ConvergenceError (inner solver).
Point project(const ConvexSet& set, const Point& x, const TolerancePolicy& tol = {});

double distance(const ConvexSet& set, const Point& x, const TolerancePolicy& tol = {});

/// distance(set, x) <= tol.geomTol
bool contains(const ConvexSet& set, const Point& x, const TolerancePolicy& tol = {});

/// <x - P(x), P(x) - probe>, nonnegative for every probe in the set.
/// Throws PreconditionError if the probe is not in the set.
double kolmogorov_margin(const ConvexSet& set,
                         const Point& x,
                         const Point& probe,
                         const TolerancePolicy& tol = {});

}  // namespace cfeas
