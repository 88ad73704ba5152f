#include "cfeas/plane_polygon.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cfeas
{
namespace
{

double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

Eigen::Vector2d nearest_on_segment(const Eigen::Vector2d& q, const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) {
        return a;
    }
    const double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
    return a + t * ab;
}

}  // namespace

PlaneFrame PlaneFrame::from_flat(const AffineFlat& plane)
{
    validate(ConvexSet{plane});
    if (plane.base.size() != 3 || plane.basis.size() != 2) {
        throw PreconditionError("plane frame: need a 2-flat in R^3");
    }
    PlaneFrame f;
    f.origin = plane.base;
    f.u = plane.basis[0].normalized();
    Point v = plane.basis[1] - plane.basis[1].dot(f.u) * f.u;
    if (v.norm() < 1e-12 * plane.basis[1].norm()) {
        throw PreconditionError("plane frame: basis vectors are dependent");
    }
    f.v = v.normalized();
    Eigen::Vector3d n = Eigen::Vector3d(f.u).cross(Eigen::Vector3d(f.v));
    f.normal = n.normalized();
    return f;
}

Eigen::Vector2d PlaneFrame::to_plane(const Point& x) const
{
    const Point d = x - origin;
    return {d.dot(u), d.dot(v)};
}

Point PlaneFrame::from_plane(const Eigen::Vector2d& q) const
{
    return origin + q.x() * u + q.y() * v;
}

double PlaneFrame::signed_height(const Point& x) const
{
    return (x - origin).dot(normal);
}

double ConvexPolygon::area() const
{
    double twice = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % n];
        twice += a.x() * b.y() - a.y() * b.x();
    }
    return 0.5 * twice;
}

Eigen::Vector2d ConvexPolygon::centroid() const
{
    const double a = area();
    if (vertices.size() < 3 || a <= 0.0) {
        Eigen::Vector2d mean = Eigen::Vector2d::Zero();
        for (const auto& p : vertices) {
            mean += p;
        }
        return mean / static_cast<double>(std::max<std::size_t>(vertices.size(), 1));
    }
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = vertices[i];
        const auto& q = vertices[(i + 1) % n];
        const double w = p.x() * q.y() - q.x() * p.y();
        c += (p + q) * w;
    }
    return c / (6.0 * a);
}

bool ConvexPolygon::contains(const Eigen::Vector2d& q, double slack) const
{
    if (vertices.size() < 3) {
        return distance(q) <= slack;
    }
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % n];
        const double len = (b - a).norm();
        if (cross(a, b, q) < -slack * len) {
            return false;
        }
    }
    return true;
}

Eigen::Vector2d ConvexPolygon::nearest(const Eigen::Vector2d& q) const
{
    if (vertices.empty()) {
        throw PreconditionError("polygon: empty");
    }
    if (vertices.size() >= 3 && contains(q)) {
        return q;
    }
    Eigen::Vector2d best = vertices.front();
    double bestDist = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector2d c = nearest_on_segment(q, vertices[i], vertices[(i + 1) % n]);
        const double d = (c - q).norm();
        if (d < bestDist) {
            bestDist = d;
            best = c;
        }
    }
    return best;
}

double ConvexPolygon::distance(const Eigen::Vector2d& q) const
{
    return (nearest(q) - q).norm();
}

double ConvexPolygon::boundary_distance(const Eigen::Vector2d& q) const
{
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, (nearest_on_segment(q, vertices[i], vertices[(i + 1) % n]) - q).norm());
    }
    return best;
}

ConvexPolygon convex_hull_2d(std::vector<Eigen::Vector2d> points)
{
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) {
        return {points};
    }
    std::vector<Eigen::Vector2d> hull(2 * points.size());
    std::size_t k = 0;
    for (const auto& p : points) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
        const auto& p = points[i];
        while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= 0.0) {
            --k;
        }
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return {hull};
}

ConvexPolygon clip(const ConvexPolygon& subject, const ConvexPolygon& clipper)
{
    std::vector<Eigen::Vector2d> output = subject.vertices;
    const std::size_t m = clipper.vertices.size();
    for (std::size_t e = 0; e < m && !output.empty(); ++e) {
        const auto& a = clipper.vertices[e];
        const auto& b = clipper.vertices[(e + 1) % m];
        std::vector<Eigen::Vector2d> input = std::move(output);
        output.clear();
        for (std::size_t i = 0; i < input.size(); ++i) {
            const auto& cur = input[i];
            const auto& prev = input[(i + input.size() - 1) % input.size()];
            const double cCur = cross(a, b, cur);
            const double cPrev = cross(a, b, prev);
            if (cCur >= 0.0) {
                if (cPrev < 0.0) {
                    output.push_back(prev + (cur - prev) * (cPrev / (cPrev - cCur)));
                }
                output.push_back(cur);
            } else if (cPrev >= 0.0) {
                output.push_back(prev + (cur - prev) * (cPrev / (cPrev - cCur)));
            }
        }
    }
    return convex_hull_2d(std::move(output));
}

ConvexPolygon face_in_plane(const Polytope& body, const PlaneFrame& frame, double slack, int& side)
{
    validate(ConvexSet{body});
    double lo = 0.0;
    double hi = 0.0;
    std::vector<Eigen::Vector2d> onPlane;
    for (const auto& v : body.vertices) {
        require_dim(v, 3, "polytope vertex");
        const double h = frame.signed_height(v);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
        if (std::abs(h) <= slack) {
            onPlane.push_back(frame.to_plane(v));
        }
    }
    if (lo < -slack && hi > slack) {
        throw PreconditionError("polytope crosses the plane");
    }
    side = hi > slack ? 1 : (lo < -slack ? -1 : 0);
    return convex_hull_2d(std::move(onPlane));
}

ConvexPolygon planar_intersection(const Polytope& a, const Polytope& b, const PlaneFrame& frame, double slack)
{
    int sideA = 0;
    int sideB = 0;
    const ConvexPolygon faceA = face_in_plane(a, frame, slack, sideA);
    const ConvexPolygon faceB = face_in_plane(b, frame, slack, sideB);
    if (sideA == 0 || sideB == 0 || sideA == sideB) {
        throw PreconditionError("the two bodies must lie on opposite sides of the plane");
    }
    if (faceA.vertices.size() < 3 || faceB.vertices.size() < 3) {
        throw PreconditionError("a body does not touch the plane in a 2-dimensional face");
    }
    ConvexPolygon common = clip(faceA, faceB);
    if (common.vertices.size() < 3 || common.area() <= slack) {
        throw PreconditionError(fmt::format("common face has no relative interior (area {:.3e})", common.area()));
    }
    return common;
}

}  // namespace cfeas
