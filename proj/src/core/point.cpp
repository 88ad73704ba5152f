#include "cfeas/point.hpp"
#include "cfeas/tolerance.hpp"

#include <fmt/format.h>

#include <cmath>

namespace cfeas
{

void require_dim(const Point& p, Eigen::Index n, const char* what)
{
    if (p.size() != n) {
        throw DimensionError(fmt::format("{}: expected dimension {}, got {}", what, n, p.size()));
    }
}

void require_finite(const Point& p, const char* what)
{
    if (p.size() == 0) {
        throw InvalidSetError(fmt::format("{}: empty point", what));
    }
    if (!p.allFinite()) {
        throw InvalidSetError(fmt::format("{}: non-finite coordinate", what));
    }
}

Point make_point(std::initializer_list<double> coords)
{
    Point p(static_cast<Eigen::Index>(coords.size()));
    Eigen::Index i = 0;
    for (double c : coords) {
        p(i++) = c;
    }
    return p;
}

Point make_point(const std::vector<double>& coords)
{
    return Eigen::Map<const Eigen::VectorXd>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

std::vector<double> to_vector(const Point& p)
{
    return {p.data(), p.data() + p.size()};
}

void TolerancePolicy::validate() const
{
    if (!(projTol > 0.0) || !(projTol <= geomTol) || !std::isfinite(geomTol)) {
        throw PreconditionError(
            fmt::format("tolerance policy requires 0 < projTol <= geomTol (got {}, {})", projTol, geomTol));
    }
    if (maxInnerIters < 1) {
        throw PreconditionError("tolerance policy requires maxInnerIters >= 1");
    }
}

}  // namespace cfeas
