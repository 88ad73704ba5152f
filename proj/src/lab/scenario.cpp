#include "cfeas/lab/scenario.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace cfeas::lab
{
namespace
{

constexpr double kGoldenFraction = 0.6180339887498949;

double frac(double v)
{
    return v - std::floor(v);
}

CircularCone tilted_cone(double halfAngle)
{
    return CircularCone{Point::Zero(3), make_point({std::cos(halfAngle), 0.0, -std::sin(halfAngle)}), halfAngle};
}

void check_angle(double halfAngle)
{
    if (!(halfAngle > 0.0 && halfAngle < std::numbers::pi / 2)) {
        throw PreconditionError(fmt::format("half-angle {} outside (0, pi/2)", halfAngle));
    }
}

void check_schedule(const std::vector<double>& r, const char* what)
{
    if (r.empty()) {
        throw PreconditionError(fmt::format("{}: empty radius schedule", what));
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!std::isfinite(r[i]) || (i > 0 && !(r[i] > r[i - 1]))) {
            throw PreconditionError(fmt::format("{}: radius schedule must be finite and increasing (entry {})", what, i));
        }
    }
}

double schedule_at(const std::vector<double>& r, int k)
{
    if (k < 0 || static_cast<std::size_t>(k) >= r.size()) {
        throw PreconditionError(fmt::format("sequence index {} outside the schedule of length {}", k, r.size()));
    }
    return r[static_cast<std::size_t>(k)];
}

// Case-3 plane geometry.
struct Parabola
{
    double c0;  // plane x3 = -c0
    double u0;  // vertex abscissa
    double p;
};

Parabola case3_parabola(const Case3Params& q)
{
    const double c0 = q.p / std::tan(q.halfAngle);
    return {c0, c0 / std::tan(2.0 * q.halfAngle), q.p};
}

// Minimum distance from x to the curve (u0 + v^2/2p, v, -c0): the stationary
// points solve v^3/(2p^2) + v(1 - (x1 - u0)/p) - x2 = 0.
double distance_to_parabola(const Parabola& par, const Point& x)
{
    const double a = 1.0 / (2.0 * par.p * par.p);
    const double b = 1.0 - (x(0) - par.u0) / par.p;
    const double c = -x(1);
    // Depressed cubic v^3 + P v + Q = 0.
    const double pp = b / a;
    const double qq = c / a;
    std::vector<double> roots;
    const double disc = qq * qq / 4.0 + pp * pp * pp / 27.0;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        roots.push_back(std::cbrt(-qq / 2.0 + s) + std::cbrt(-qq / 2.0 - s));
    } else {
        const double m = 2.0 * std::sqrt(-pp / 3.0);
        const double phi = std::acos(std::clamp(3.0 * qq / (pp * m), -1.0, 1.0)) / 3.0;
        for (int i = 0; i < 3; ++i) {
            roots.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * i / 3.0));
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (double v : roots) {
        for (int it = 0; it < 4; ++it) {
            const double f = a * v * v * v + b * v + c;
            const double df = 3.0 * a * v * v + b;
            if (df == 0.0) {
                break;
            }
            v -= f / df;
        }
        const Point g = make_point({par.u0 + v * v / (2.0 * par.p), v, -par.c0});
        best = std::min(best, (x - g).norm());
    }
    return best;
}

// Exact distance to A1∩A2 for two closed convex sets whose boundaries meet
// along a curve: a one-set projection that lands in the other set is the
// answer, otherwise the nearest point lies on the common boundary curve.
template <class CurveDistance>
double two_set_distance(const ConvexSet& a1, const ConvexSet& a2, const Point& x, CurveDistance curve)
{
    const TolerancePolicy tol;
    const bool in1 = contains(a1, x, tol);
    const bool in2 = contains(a2, x, tol);
    if (in1 && in2) {
        return 0.0;
    }
    const Point p1 = project(a1, x, tol);
    if (contains(a2, p1, tol)) {
        return (x - p1).norm();
    }
    const Point p2 = project(a2, x, tol);
    if (contains(a1, p2, tol)) {
        return (x - p2).norm();
    }
    return curve(x);
}

Scenario case4_from(const Polytope& a, const Polytope& b, const AffineFlat& plane, const TolerancePolicy& tol)
{
    Case4Params params{a, b, plane, PlaneFrame::from_flat(plane), {}};
    params.common = planar_intersection(a, b, params.frame, tol.geomTol);
    // planar_intersection guarantees opposite sides; orient the normal toward A.
    int sideA = 0;
    (void)face_in_plane(a, params.frame, tol.geomTol, sideA);

    Scenario s;
    s.kind = CaseKind::Case4;
    s.family.sets = {a, b};
    const PlaneFrame frame = params.frame;
    const ConvexPolygon common = params.common;
    s.family.intersectionOracle = [frame, common](const Point& x) {
        require_dim(x, 3, "case4 probe");
        const double h = frame.signed_height(x);
        const double planar = common.distance(frame.to_plane(x));
        return std::sqrt(h * h + planar * planar);
    };
    s.witnesses = {frame.from_plane(common.centroid())};

    double perimeter = 0.0;
    const std::size_t nv = common.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) {
        perimeter += (common.vertices[(i + 1) % nv] - common.vertices[i]).norm();
    }
    const Point towardA = static_cast<double>(sideA) * frame.normal;
    s.generator = [frame, common, perimeter, towardA, a, b](int k) {
        // Walk the perimeter by golden-ratio steps.
        double along = frac(k * kGoldenFraction) * perimeter;
        const std::size_t n = common.vertices.size();
        std::size_t i = 0;
        while (true) {
            const double len = (common.vertices[(i + 1) % n] - common.vertices[i]).norm();
            if (along <= len || i + 1 == n) {
                break;
            }
            along -= len;
            ++i;
        }
        const Eigen::Vector2d e0 = common.vertices[i];
        const Eigen::Vector2d e1 = common.vertices[(i + 1) % n];
        const Eigen::Vector2d edge = e1 - e0;
        const Eigen::Vector2d y2 = e0 + std::min(1.0, along / edge.norm()) * edge;
        const Eigen::Vector2d out2 = Eigen::Vector2d(edge.y(), -edge.x()).normalized();
        const Point y = frame.from_plane(y2);
        const Point out = frame.from_plane(y2 + out2) - y;
        const double beta = 2.0 * std::numbers::pi * frac(k * std::numbers::sqrt2);
        const Point q = y + (std::cos(beta) * out + std::sin(beta) * towardA) / (k + 1.0);
        return Point(0.5 * (project(a, q) + project(b, q)));
    };
    s.params = std::move(params);
    return s;
}

}  // namespace

std::string_view case_name(CaseKind kind)
{
    switch (kind) {
    case CaseKind::Case1:
        return "case1";
    case CaseKind::Case2:
        return "case2";
    case CaseKind::Case3:
        return "case3";
    case CaseKind::Case4:
        return "case4";
    case CaseKind::Custom:
        break;
    }
    return "custom";
}

Point Scenario::point(int k) const
{
    if (!generator) {
        throw PreconditionError(fmt::format("{} scenario has no sequence generator", case_name(kind)));
    }
    if (k < 0 || (generatorLength >= 0 && k >= generatorLength)) {
        throw PreconditionError(fmt::format("sequence index {} outside [0, {})", k, generatorLength));
    }
    return generator(k);
}

Scenario scenario_case1(double radiusA, double radiusB, double centerGap)
{
    if (!(radiusA > 0.0) || !(radiusB > 0.0) || !(centerGap >= 0.0)) {
        throw PreconditionError("case1: radii must be positive and the gap nonnegative");
    }
    if (!(centerGap < radiusA + radiusB)) {
        throw PreconditionError("case1: the balls are tangent or disjoint");
    }
    if (!(centerGap > std::abs(radiusA - radiusB))) {
        throw PreconditionError("case1: one ball contains the other; the intersection has no rim");
    }
    const double g = centerGap;
    const double rimA = (radiusA * radiusA - radiusB * radiusB + g * g) / (2.0 * g);
    const double rimR = std::sqrt(radiusA * radiusA - rimA * rimA);

    Scenario s;
    s.kind = CaseKind::Case1;
    s.family.sets = {Ball{Point::Zero(3), radiusA}, Ball{make_point({g, 0, 0}), radiusB}};
    s.family.intersectionOracle = [=](const Point& x) {
        require_dim(x, 3, "case1 probe");
        const Eigen::Vector2d q(x(0), std::hypot(x(1), x(2)));
        const Eigen::Vector2d ca(0.0, 0.0);
        const Eigen::Vector2d cb(g, 0.0);
        const bool inA = (q - ca).norm() <= radiusA;
        const bool inB = (q - cb).norm() <= radiusB;
        if (inA && inB) {
            return 0.0;
        }
        if (!inA) {
            const Eigen::Vector2d pa = ca + radiusA * (q - ca).normalized();
            if ((pa - cb).norm() <= radiusB) {
                return (q - pa).norm();
            }
        }
        if (!inB) {
            const Eigen::Vector2d pb = cb + radiusB * (q - cb).normalized();
            if ((pb - ca).norm() <= radiusA) {
                return (q - pb).norm();
            }
        }
        return (q - Eigen::Vector2d(rimA, rimR)).norm();
    };
    const double lo = std::max(-radiusA, g - radiusB);
    const double hi = std::min(radiusA, g + radiusB);
    s.witnesses = {make_point({0.5 * (lo + hi), 0, 0})};
    s.generator = [=](int k) {
        const double h = 1.0 / (k + 1.0);
        const double phi = 2.0 * std::numbers::pi * frac(k * kGoldenFraction);
        return make_point({rimA, (rimR + h) * std::cos(phi), (rimR + h) * std::sin(phi)});
    };
    s.params = Case1Params{radiusA, radiusB, centerGap};
    return s;
}

Point case2_point(double halfAngle, double delta, double r)
{
    check_angle(halfAngle);
    if (!(delta > 0.0) || !(r > 0.0)) {
        throw PreconditionError("case2: delta and r must be positive");
    }
    if (delta > r) {
        throw PreconditionError(fmt::format("case2: delta {} exceeds the radius {}", delta, r));
    }
    const double sin2 = std::sin(halfAngle) * std::sin(halfAngle);
    const double ratio = (delta / r) * (delta / r);
    // c = 1 - cos(phi) for the azimuth phi around the axis, measured from the contact generatrix.
    const double c = ratio / (sin2 * (1.0 + std::sqrt(1.0 - ratio)));
    if (c > 2.0) {
        throw PreconditionError(fmt::format("case2: no surface point at distance {} for r = {}", delta, r));
    }
    const double cosPhi = 1.0 - c;
    const double sinPhi = std::sqrt(std::max(0.0, c * (2.0 - c)));
    const double st = std::sin(halfAngle);
    const double ct = std::cos(halfAngle);
    return make_point({r * (st * st * cosPhi + ct * ct), r * st * sinPhi, -r * st * ct * c});
}

Scenario scenario_case2(double halfAngle, double delta, std::vector<double> rSchedule)
{
    check_angle(halfAngle);
    check_schedule(rSchedule, "case2");
    (void)case2_point(halfAngle, delta, rSchedule.front());

    Scenario s;
    s.kind = CaseKind::Case2;
    s.family.sets = {tilted_cone(halfAngle), AffineFlat{Point::Zero(3), {make_point({1, 0, 0}), make_point({0, 1, 0})}}};
    s.family.intersectionOracle = [](const Point& x) {
        require_dim(x, 3, "case2 probe");
        Point foot = Point::Zero(3);
        foot(0) = std::max(0.0, x(0));
        return (x - foot).norm();
    };
    s.witnesses = {Point::Zero(3), make_point({1, 0, 0})};
    s.generatorLength = static_cast<int>(rSchedule.size());
    s.generator = [halfAngle, delta, rSchedule](int k) { return case2_point(halfAngle, delta, schedule_at(rSchedule, k)); };
    s.params = Case2Params{halfAngle, delta, std::move(rSchedule)};
    return s;
}

double case3_distance(const Case3Params& q, int k)
{
    const double r = schedule_at(q.rSchedule, k);
    const double inner = 2.0 * q.p * r - q.p * q.p;
    if (!(inner >= 0.0)) {
        throw PreconditionError(fmt::format("case3: 2pr - p^2 = {} is negative for r = {}", inner, r));
    }
    return std::sqrt(r * r + q.d * q.d + 2.0 * q.d * std::sqrt(inner)) - r;
}

Point case3_point(const Case3Params& q, int k)
{
    const double r = schedule_at(q.rSchedule, k);
    const Parabola par = case3_parabola(q);
    const double big = r - q.p / 2.0;
    if (!(big >= 0.0)) {
        throw PreconditionError(fmt::format("case3: focal radius {} is below p/2", r));
    }
    const double v = std::sqrt(2.0 * q.p * big);
    const double norm = std::hypot(q.p, v);
    return make_point({par.u0 + big - q.d * q.p / norm, v + q.d * v / norm, -par.c0});
}

Scenario scenario_case3(const Case3Params& params)
{
    check_angle(params.halfAngle);
    if (!(params.p > 0.0) || !(params.d > 0.0)) {
        throw PreconditionError("case3: p and d must be positive");
    }
    check_schedule(params.rSchedule, "case3");
    for (std::size_t k = 0; k < params.rSchedule.size(); ++k) {
        (void)case3_distance(params, static_cast<int>(k));
    }
    const Parabola par = case3_parabola(params);
    const CircularCone cone = tilted_cone(params.halfAngle);
    const Halfspace upper{make_point({0, 0, -1}), par.c0};

    Scenario s;
    s.kind = CaseKind::Case3;
    s.family.sets = {cone, upper};
    s.family.intersectionOracle = [cone, upper, par](const Point& x) {
        require_dim(x, 3, "case3 probe");
        return two_set_distance(cone, upper, x, [&](const Point& y) { return distance_to_parabola(par, y); });
    };
    s.witnesses = {Point::Zero(3), make_point({1, 0, 0})};
    s.generatorLength = static_cast<int>(params.rSchedule.size());
    s.generator = [params](int k) { return case3_point(params, k); };
    s.params = params;
    return s;
}

double case3_cone_distance_search(const Case3Params& params, const Point& x)
{
    const double t = params.halfAngle;
    const Point axis = make_point({std::cos(t), 0.0, -std::sin(t)});
    const Point b1 = make_point({std::sin(t), 0.0, std::cos(t)});
    const Point b2 = make_point({0.0, 1.0, 0.0});
    const double along = x.dot(axis);
    const double radial = std::hypot(x.dot(b1), x.dot(b2));
    if (along >= 0.0 && radial <= along * std::tan(t)) {
        return 0.0;
    }
    // For a fixed azimuth the best slant is the clamped foot on the generatrix.
    const auto dist = [&](double phi) {
        const Point g = std::cos(t) * axis + std::sin(t) * (std::cos(phi) * b1 + std::sin(phi) * b2);
        const double s = std::max(0.0, x.dot(g));
        return (x - s * g).norm();
    };
    const int n = 720;
    const double h = 2.0 * std::numbers::pi / n;
    int bestIdx = 0;
    double best = dist(0.0);
    for (int i = 1; i < n; ++i) {
        const double v = dist(i * h);
        if (v < best) {
            best = v;
            bestIdx = i;
        }
    }
    double lo = (bestIdx - 1) * h;
    double hi = (bestIdx + 1) * h;
    const double gr = kGoldenFraction;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = dist(c);
    double fd = dist(d);
    for (int i = 0; i < 200; ++i) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = dist(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = dist(d);
        }
    }
    return std::min({best, fc, fd});
}

Scenario scenario_case4(const Polytope& a, const Polytope& b, const AffineFlat& plane, const TolerancePolicy& tol)
{
    validate(ConvexSet{a});
    validate(ConvexSet{b});
    return case4_from(a, b, plane, tol);
}

AffineFlat ground_plane()
{
    return AffineFlat{Point::Zero(3), {make_point({1, 0, 0}), make_point({0, 1, 0})}};
}

Scenario twin_square_pyramids()
{
    const std::vector<Point> square{make_point({-1, -1, 0}), make_point({1, -1, 0}), make_point({1, 1, 0}),
                                    make_point({-1, 1, 0})};
    Polytope a{square};
    a.vertices.push_back(make_point({0, 0, 1}));
    Polytope b{square};
    b.vertices.push_back(make_point({0, 0, -1}));
    return scenario_case4(a, b, ground_plane());
}

Scenario triangle_square_pyramids()
{
    Polytope a{{make_point({-1.2, -0.8, 0}), make_point({1.3, -0.7, 0}), make_point({0.1, 1.4, 0}),
                make_point({0.2, 0.1, 0.8})}};
    const double s = std::sqrt(2.0);
    Polytope b{{make_point({s, 0, 0}), make_point({0, s, 0}), make_point({-s, 0, 0}), make_point({0, -s, 0}),
                make_point({-0.1, 0.2, -1.5})}};
    return scenario_case4(a, b, ground_plane());
}

}  // namespace cfeas::lab
