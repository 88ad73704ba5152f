#pragma once

#include "cfeas/cone_hull.hpp"
#include "cfeas/family.hpp"
#include "cfeas/plane_polygon.hpp"

#include <functional>
#include <string_view>
#include <variant>
#include <vector>

namespace cfeas::lab
{

enum class CaseKind
{
    Case1,
    Case2,
    Case3,
    Case4,
    Custom
};

std::string_view case_name(CaseKind kind);

/// Two balls along e1 in R^3.
struct Case1Params
{
    double radiusA{1.0};
    double radiusB{1.0};
    double centerGap{1.0};
};

/// Cone with its tangent plane.
struct Case2Params
{
    double halfAngle{0.0};
    double delta{0.0};
    std::vector<double> rSchedule;
};

/// Cone with a halfspace whose boundary is parallel to a generatrix.
struct Case3Params
{
    double p{1.0};
    double d{1.0};
    std::vector<double> rSchedule;
    double halfAngle{0.7853981633974483};  // 45 degrees
};

/// Two polytopes on opposite sides of a plane that share a planar face.
struct Case4Params
{
    Polytope a;
    Polytope b;
    AffineFlat plane;
    PlaneFrame frame;
    ConvexPolygon common;
};

using ScenarioParams = std::variant<std::monostate, Case1Params, Case2Params, Case3Params, Case4Params>;

struct Scenario
{
    CaseKind kind{CaseKind::Custom};
    Family family;  // family.intersectionOracle is the exact distance to the intersection
    std::vector<Point> witnesses;
    std::function<Point(int)> generator;  // x_k for k = 0, 1, ...
    int generatorLength{-1};              // -1 when unbounded
    ScenarioParams params;

    [[nodiscard]] double exact_distance(const Point& x) const { return family.intersectionOracle(x); }
    [[nodiscard]] Point point(int k) const;
};

/// Two balls in R^3 with centers 0 and centerGap·e1. The oracle is exact:
/// the lens is a solid of revolution, so the problem reduces to the meridian
/// half-plane where the nearest point is a cap foot or the rim circle.
/// Generator: points at offset 1/(k+1) outside the rim.
Scenario scenario_case1(double radiusA, double radiusB, double centerGap);

/// Circular cone with apex 0 whose generatrix along e1 touches the plane
/// x3 = 0 (the axis is (cos θ, 0, -sin θ)). A1∩A2 is the ray R+·e1.
/// Generator: x_k on the cone surface with ||x_k|| = r_k and distance delta
/// from the ray.
Scenario scenario_case2(double halfAngle, double delta, std::vector<double> rSchedule);

/// Surface point of the Case-2 cone at norm r and distance delta from the
/// contact ray; throws PreconditionError when delta is too large for r.
Point case2_point(double halfAngle, double delta, double r);

/// Same cone; A2 = {x3 >= -c0} with c0 = p / tan θ, whose boundary meets the
/// cone in the parabola v^2 = 2p(u - u0) of focal parameter p.
/// Generator: x_k in the boundary plane at distance d outside the parabola,
/// level with the parabola point of focal radius r_k.
Scenario scenario_case3(const Case3Params& params);

/// sqrt(r^2 + d^2 + 2d sqrt(2pr - p^2)) - r for r = r_k.
double case3_distance(const Case3Params& params, int k);

/// The generated point x_k of the Case-3 family.
Point case3_point(const Case3Params& params, int k);

/// Distance from x to the Case-3 cone computed without the closed-form cone
/// projection: minimization over the surface parametrization (slant s,
/// azimuth phi) by nested golden-section search.
double case3_cone_distance_search(const Case3Params& params, const Point& x);

/// Two polytopes sharing a face in the plane. The oracle is exact:
/// A∩B is the common polygon, d^2 = height^2 + in-plane polygon distance^2.
/// Generator: midpoints of the projections onto A and B of probes that
/// circle the polygon boundary at offset 1/(k+1).
Scenario scenario_case4(const Polytope& a, const Polytope& b, const AffineFlat& plane, const TolerancePolicy& tol = {});

/// Square pyramids over [-1,1]^2 with apexes (0,0,1) and (0,0,-1).
Scenario twin_square_pyramids();

/// A triangle pyramid above z = 0 and a rotated-square pyramid below it.
Scenario triangle_square_pyramids();

/// The plane z = 0 in R^3.
AffineFlat ground_plane();

}  // namespace cfeas::lab
