#include "cfeas/cone_hull.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace cfeas
{
namespace
{

bool in_both(const EnlargementPair& pair, const Point& p, const TolerancePolicy& tol)
{
    return contains(pair.coneA.realized, p, tol) && contains(pair.coneB.realized, p, tol);
}

// Unit vectors spread over the sphere (Fibonacci lattice).
std::vector<Point> sphere_directions(int count)
{
    std::vector<Point> out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / count;
        const double r = std::sqrt(1.0 - z * z);
        out.push_back(make_point({r * std::cos(golden * i), r * std::sin(golden * i), z}));
    }
    return out;
}

double diameter(const Polytope& a, const Polytope& b)
{
    std::vector<Point> all = a.vertices;
    all.insert(all.end(), b.vertices.begin(), b.vertices.end());
    double best = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            best = std::max(best, (all[i] - all[j]).norm());
        }
    }
    return best;
}

}  // namespace

ConeHull cone_hull(const Polytope& base, const Point& vertex, const TolerancePolicy& tol)
{
    validate(ConvexSet{base});
    require_finite(vertex, "cone hull vertex");
    require_dim(vertex, base.vertices.front().size(), "cone hull vertex");
    if (contains(base, vertex, tol)) {
        throw PreconditionError("cone_hull: vertex lies in the base");
    }
    ConeHull hull{vertex, base, TranslatedCone{vertex, {}}};
    for (const auto& v : base.vertices) {
        hull.realized.generators.push_back(v - vertex);
    }
    for (const auto& v : base.vertices) {
        if (!contains(hull.realized, v, tol)) {
            throw CertificationError("cone_hull: a base vertex is outside the realized cone");
        }
    }
    return hull;
}

double ray_min_parameter(const Point& x, const Point& d, const Point& origin)
{
    require_dim(d, x.size(), "ray direction point");
    require_dim(origin, x.size(), "ray origin");
    const Point step = d - x;
    const double len2 = step.squaredNorm();
    if (len2 == 0.0) {
        throw PreconditionError("ray_min_parameter: d equals x");
    }
    return std::max(0.0, (x - origin).dot(x - d) / len2);
}

double ray_min_parameter(const Point& x, const Point& d)
{
    return ray_min_parameter(x, d, Point::Zero(x.size()));
}

Point sup_side_point(const ConeHull& hull, const Point& d, double t, const Point& origin, const TolerancePolicy& tol)
{
    if (!contains(hull.base, d, tol)) {
        throw PreconditionError("sup_side_point: d is not in the base");
    }
    const double td = ray_min_parameter(hull.vertex, d, origin);
    if (!(t >= 0.0) || t > td * (1.0 + 1e-12)) {
        throw PreconditionError(fmt::format("sup_side_point: t = {} outside [0, t_d = {}]", t, td));
    }
    return hull.vertex + t * (d - hull.vertex);
}

Point sup_side_point(const ConeHull& hull, const Point& d, double t, const TolerancePolicy& tol)
{
    return sup_side_point(hull, d, t, Point::Zero(hull.vertex.size()), tol);
}

Point symmetric_point(const Point& x, const Point& px)
{
    require_dim(px, x.size(), "reflection center");
    return 2.0 * px - x;
}

double lemma2_margin(const Polytope& a, const Point& x, const Point& y, const TolerancePolicy& tol)
{
    const double dx = distance(a, x, tol);
    if (dx <= tol.geomTol) {
        throw PreconditionError("lemma2_margin: x lies in A");
    }
    return dx - distance(a, y, tol);
}

Point project_onto_common_face(const ConvexPolygon& common, const PlaneFrame& frame, const Point& x)
{
    return frame.from_plane(common.nearest(frame.to_plane(x)));
}

EnlargementPair build_enlargement(const Polytope& a,
                                  const Polytope& b,
                                  const AffineFlat& plane,
                                  const Point& x,
                                  const TolerancePolicy& tol)
{
    tol.validate();
    require_dim(x, 3, "enlargement point");
    const PlaneFrame frame = PlaneFrame::from_flat(plane);
    const ConvexPolygon common = planar_intersection(a, b, frame, tol.geomTol);
    if (contains(a, x, tol)) {
        throw PreconditionError("build_enlargement: x lies in A");
    }
    const Point px = project_onto_common_face(common, frame, x);
    const double margin = common.boundary_distance(frame.to_plane(px));
    if (margin <= tol.geomTol) {
        throw PreconditionError(
            fmt::format("build_enlargement: Px is within {:.3e} of the boundary of A∩B", margin));
    }
    const Point xs = symmetric_point(x, px);
    if (contains(b, xs, tol)) {
        throw PreconditionError("build_enlargement: the symmetric point lies in B");
    }
    return EnlargementPair{x, px, xs, cone_hull(a, x, tol), cone_hull(b, xs, tol), plane, common};
}

BoundedInteriorReport bounded_interior_report(const EnlargementPair& pair, int raySamples, const TolerancePolicy& tol)
{
    if (raySamples < 8) {
        throw PreconditionError("bounded_interior_report: need at least 8 rays");
    }
    BoundedInteriorReport report;
    report.witnessCenter = pair.px;
    report.raysSampled = raySamples;

    const auto sphere = sphere_directions(256);
    const auto ball_inside = [&](double rho) {
        for (const auto& u : sphere) {
            if (!in_both(pair, pair.px + rho * u, tol)) {
                return false;
            }
        }
        return true;
    };
    double lo = 0.0;
    double hi = (pair.x - pair.px).norm();
    for (int i = 0; i < 60 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ball_inside(mid) ? lo : hi) = mid;
    }
    report.interiorBallRadius = lo;
    if (lo < tol.geomTol) {
        throw CertificationError(fmt::format("interior ball collapsed (radius {:.3e})", lo));
    }

    const PlaneFrame frame = PlaneFrame::from_flat(pair.plane);
    const double diam = diameter(pair.coneA.base, pair.coneB.base);
    const double cap = 1e6 * diam;
    for (int i = 0; i < raySamples; ++i) {
        const double angle = 2.0 * std::numbers::pi * i / raySamples;
        const Point u = std::cos(angle) * frame.u + std::sin(angle) * frame.v;
        double inner = 0.0;
        double outer = diam;
        while (in_both(pair, pair.px + outer * u, tol)) {
            inner = outer;
            outer *= 2.0;
            if (outer > cap) {
                throw CertificationError(fmt::format("ray {} reached the cap {:.3e}", i, cap));
            }
        }
        for (int it = 0; it < 60 && outer - inner > 1e-12 * outer; ++it) {
            const double mid = 0.5 * (inner + outer);
            (in_both(pair, pair.px + mid * u, tol) ? inner : outer) = mid;
        }
        report.boundedRadiusBound = std::max(report.boundedRadiusBound, inner);
    }
    return report;
}

InteriorConfirmation confirm_interior_ball(const EnlargementPair& pair,
                                           double radius,
                                           int samples,
                                           Rng& rng,
                                           const TolerancePolicy& tol)
{
    InteriorConfirmation out;
    out.samples = samples;
    for (int i = 0; i < samples; ++i) {
        if (in_both(pair, random_in_ball(rng, pair.px, radius), tol)) {
            ++out.inside;
        }
    }
    return out;
}

}  // namespace cfeas
