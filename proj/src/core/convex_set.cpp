#include "cfeas/convex_set.hpp"
#include "cfeas/nearest_point.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace cfeas
{
namespace
{

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::MatrixXd columns(const std::vector<Point>& pts, Eigen::Index n)
{
    Eigen::MatrixXd m(n, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        m.col(static_cast<Eigen::Index>(i)) = pts[i];
    }
    return m;
}

void check_normal(const Point& normal, double offset, const char* what)
{
    require_finite(normal, what);
    if (!std::isfinite(offset)) {
        throw InvalidSetError(fmt::format("{}: non-finite offset", what));
    }
    if (normal.norm() == 0.0) {
        throw InvalidSetError(fmt::format("{}: zero normal", what));
    }
}

void validate_one(const Halfspace& h) { check_normal(h.normal, h.offset, "halfspace"); }

void validate_one(const Hyperplane& h) { check_normal(h.normal, h.offset, "hyperplane"); }

void validate_one(const Ball& b)
{
    require_finite(b.center, "ball center");
    if (!std::isfinite(b.radius) || b.radius < 0.0) {
        throw InvalidSetError("ball: radius must be finite and >= 0");
    }
}

void validate_one(const Box& b)
{
    require_finite(b.lower, "box lower");
    require_finite(b.upper, "box upper");
    require_dim(b.upper, b.lower.size(), "box upper");
    if ((b.lower.array() > b.upper.array()).any()) {
        throw InvalidSetError("box: lower must be <= upper componentwise");
    }
}

void validate_one(const AffineFlat& f)
{
    require_finite(f.base, "flat base");
    for (const auto& v : f.basis) {
        require_finite(v, "flat basis vector");
        require_dim(v, f.base.size(), "flat basis vector");
    }
}

void validate_one(const CircularCone& c)
{
    require_finite(c.apex, "cone apex");
    require_finite(c.axis, "cone axis");
    require_dim(c.axis, c.apex.size(), "cone axis");
    if (std::abs(c.axis.norm() - 1.0) > 1e-12) {
        throw InvalidSetError(fmt::format("cone: axis must have unit norm (got {:.17g})", c.axis.norm()));
    }
    if (!(c.halfAngle > 0.0) || !(c.halfAngle < std::numbers::pi / 2)) {
        throw InvalidSetError("cone: halfAngle must lie in (0, pi/2)");
    }
}

void validate_one(const Polytope& p)
{
    if (p.vertices.empty()) {
        throw InvalidSetError("polytope: needs at least one vertex");
    }
    for (const auto& v : p.vertices) {
        require_finite(v, "polytope vertex");
        require_dim(v, p.vertices.front().size(), "polytope vertex");
    }
}

void validate_one(const TranslatedCone& c)
{
    require_finite(c.vertex, "cone vertex");
    for (const auto& g : c.generators) {
        require_finite(g, "cone generator");
        require_dim(g, c.vertex.size(), "cone generator");
    }
}

Point project_one(const Halfspace& h, const Point& x, const TolerancePolicy&)
{
    const double excess = h.normal.dot(x) - h.offset;
    if (excess <= 0.0) {
        return x;
    }
    return x - (excess / h.normal.squaredNorm()) * h.normal;
}

Point project_one(const Hyperplane& h, const Point& x, const TolerancePolicy&)
{
    const double excess = h.normal.dot(x) - h.offset;
    return x - (excess / h.normal.squaredNorm()) * h.normal;
}

Point project_one(const Ball& b, const Point& x, const TolerancePolicy&)
{
    const Point v = x - b.center;
    const double r = v.norm();
    if (r <= b.radius) {
        return x;
    }
    return b.center + (b.radius / r) * v;
}

Point project_one(const Box& b, const Point& x, const TolerancePolicy&)
{
    return x.cwiseMax(b.lower).cwiseMin(b.upper);
}

Point project_one(const AffineFlat& f, const Point& x, const TolerancePolicy&)
{
    if (f.basis.empty()) {
        return f.base;
    }
    const Eigen::MatrixXd basis = columns(f.basis, f.base.size());
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    const Eigen::Index rank = qr.rank();
    if (rank == 0) {
        return f.base;
    }
    const Eigen::MatrixXd q = Eigen::MatrixXd(qr.householderQ()).leftCols(rank);
    return f.base + q * (q.transpose() * (x - f.base));
}

Point project_one(const CircularCone& c, const Point& x, const TolerancePolicy&)
{
    const Point v = x - c.apex;
    const double s = v.dot(c.axis);
    const Point w = v - s * c.axis;
    const double r = w.norm();
    const double cosA = std::cos(c.halfAngle);
    const double sinA = std::sin(c.halfAngle);
    // r*cos - s*sin is the signed distance to the supporting plane through the foot generatrix.
    if (r * cosA - s * sinA <= 0.0) {
        return x;
    }
    if (r == 0.0) {
        return c.apex;  // on the negative axis
    }
    const Point e = cosA * c.axis + (sinA / r) * w;
    const double along = v.dot(e);
    if (along <= 0.0) {
        return c.apex;
    }
    return c.apex + along * e;
}

Point project_one(const Polytope& p, const Point& x, const TolerancePolicy& tol)
{
    if (p.vertices.size() == 1) {
        return p.vertices.front();
    }
    return nearest_in_hull(columns(p.vertices, x.size()), x, tol.projTol, tol.maxInnerIters).point;
}

Point project_one(const TranslatedCone& c, const Point& x, const TolerancePolicy& tol)
{
    if (c.generators.empty()) {
        return c.vertex;
    }
    return nearest_in_cone(c.vertex, columns(c.generators, x.size()), x, tol.projTol, tol.maxInnerIters).point;
}

}  // namespace

std::string_view kind_name(const ConvexSet& set)
{
    return std::visit(overloaded{
                          [](const Halfspace&) { return std::string_view{"halfspace"}; },
                          [](const Hyperplane&) { return std::string_view{"hyperplane"}; },
                          [](const Ball&) { return std::string_view{"ball"}; },
                          [](const Box&) { return std::string_view{"box"}; },
                          [](const AffineFlat&) { return std::string_view{"flat"}; },
                          [](const CircularCone&) { return std::string_view{"circular_cone"}; },
                          [](const Polytope&) { return std::string_view{"polytope"}; },
                          [](const TranslatedCone&) { return std::string_view{"translated_cone"}; },
                      },
                      set);
}

Eigen::Index dimension(const ConvexSet& set)
{
    return std::visit(overloaded{
                          [](const Halfspace& s) { return s.normal.size(); },
                          [](const Hyperplane& s) { return s.normal.size(); },
                          [](const Ball& s) { return s.center.size(); },
                          [](const Box& s) { return s.lower.size(); },
                          [](const AffineFlat& s) { return s.base.size(); },
                          [](const CircularCone& s) { return s.apex.size(); },
                          [](const Polytope& s) {
                              return s.vertices.empty() ? Eigen::Index{0} : s.vertices.front().size();
                          },
                          [](const TranslatedCone& s) { return s.vertex.size(); },
                      },
                      set);
}

void validate(const ConvexSet& set)
{
    std::visit([](const auto& s) { validate_one(s); }, set);
}

Point project(const ConvexSet& set, const Point& x, const TolerancePolicy& tol)
{
    validate(set);
    require_finite(x, "projected point");
    require_dim(x, dimension(set), "projected point");
    return std::visit([&](const auto& s) { return project_one(s, x, tol); }, set);
}

double distance(const ConvexSet& set, const Point& x, const TolerancePolicy& tol)
{
    return (x - project(set, x, tol)).norm();
}

bool contains(const ConvexSet& set, const Point& x, const TolerancePolicy& tol)
{
    return distance(set, x, tol) <= tol.geomTol;
}

double kolmogorov_margin(const ConvexSet& set, const Point& x, const Point& probe, const TolerancePolicy& tol)
{
    if (!contains(set, probe, tol)) {
        throw PreconditionError(fmt::format("kolmogorov_margin: probe is not in the {}", kind_name(set)));
    }
    const Point p = project(set, x, tol);
    return (x - p).dot(p - probe);
}

}  // namespace cfeas
