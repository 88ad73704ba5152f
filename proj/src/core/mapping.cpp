#include "cfeas/mapping.hpp"

#include <fmt/format.h>

#include <limits>

namespace cfeas
{

MappingSpec relaxed(MappingSpec inner, double t)
{
    return MappingSpec{RelaxedMap{std::make_shared<const MappingSpec>(std::move(inner)), t}};
}

Point apply(const MappingSpec& mapping, const Point& x, const TolerancePolicy& tol)
{
    if (const auto* p = std::get_if<ProjectionMap>(&mapping.map)) {
        return project(p->set, x, tol);
    }
    if (const auto* r = std::get_if<RemotestMap>(&mapping.map)) {
        const auto d = per_set_distances(r->family, x, tol);
        return project(r->family.sets[remotest_index(d)], x, tol);
    }
    if (const auto* r = std::get_if<RelaxedMap>(&mapping.map)) {
        if (!r->inner) {
            throw PreconditionError("relaxed map without an inner map");
        }
        return mann_step(x, apply(*r->inner, x, tol), r->t);
    }
    const auto& a = std::get<AffineMap>(mapping.map);
    if (a.matrix.rows() != x.size() || a.matrix.cols() != x.size()) {
        throw DimensionError(fmt::format("affine map is {}x{}, point has dimension {}", a.matrix.rows(),
                                         a.matrix.cols(), x.size()));
    }
    require_dim(a.offset, x.size(), "affine offset");
    return a.matrix * x + a.offset;
}

DemicontractivityEstimate estimate_k(const MappingSpec& mapping,
                                     const std::vector<Point>& fixpoints,
                                     const std::vector<Point>& samples,
                                     const TolerancePolicy& tol)
{
    if (fixpoints.empty() || samples.empty()) {
        throw PreconditionError("estimate_k: need at least one fixpoint and one sample");
    }
    for (std::size_t j = 0; j < fixpoints.size(); ++j) {
        const double moved = (apply(mapping, fixpoints[j], tol) - fixpoints[j]).norm();
        if (moved > tol.geomTol) {
            throw PreconditionError(fmt::format("estimate_k: fixpoint {} moves by {:.3e}", j, moved));
        }
    }
    DemicontractivityEstimate est;
    est.kLower = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& x : samples) {
        const Point tx = apply(mapping, x, tol);
        const double step2 = (tx - x).squaredNorm();
        if (step2 == 0.0) {
            continue;
        }
        for (const auto& xs : fixpoints) {
            const double ratio = ((tx - xs).squaredNorm() - (x - xs).squaredNorm()) / step2;
            if (!any || ratio > est.kLower) {
                est.kLower = ratio;
                est.worstX = x;
                est.worstFixpoint = xs;
                any = true;
            }
        }
    }
    if (!any) {
        throw PreconditionError("estimate_k: every sample is a fixed point");
    }
    est.lambdaUpper = lambda_k_convert(est.kLower, Conversion::KToLambda);
    return est;
}

std::vector<Point> mann_iterates(const MappingSpec& mapping,
                                 const ControlSchedule& schedule,
                                 const Point& x0,
                                 int steps,
                                 const TolerancePolicy& tol)
{
    std::vector<Point> ys{x0};
    for (int k = 0; k < steps; ++k) {
        const Point& y = ys.back();
        ys.push_back(mann_step(y, apply(mapping, y, tol), schedule.at(k)));
    }
    return ys;
}

std::vector<Point> general_mann_iterates(const MappingSpec& mapping,
                                         const Eigen::MatrixXd& matrix,
                                         const Point& x0,
                                         const TolerancePolicy& tol)
{
    std::vector<Point> xs{x0};
    std::vector<Point> vs;
    for (Eigen::Index n = 0; n < matrix.rows(); ++n) {
        Point v = Point::Zero(x0.size());
        for (Eigen::Index j = 0; j <= n; ++j) {
            v += matrix(n, j) * xs[static_cast<std::size_t>(j)];
        }
        vs.push_back(v);
        xs.push_back(apply(mapping, v, tol));
    }
    return vs;
}

}  // namespace cfeas
