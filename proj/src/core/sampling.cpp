#include "cfeas/sampling.hpp"

#include <cmath>
#include <numbers>

namespace cfeas
{
namespace
{

double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Orthonormal basis of the complement of unit vector u.
Eigen::MatrixXd complement_basis(const Point& u)
{
    const Eigen::Index n = u.size();
    Eigen::MatrixXd m(n, n);
    m.col(0) = u;
    m.rightCols(n - 1) = Eigen::MatrixXd::Identity(n, n).leftCols(n - 1);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return Eigen::MatrixXd(qr.householderQ()).rightCols(n - 1);
}

Eigen::MatrixXd random_rotation(Rng& rng, Eigen::Index n)
{
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        g.col(j) = random_gaussian(rng, n);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    return qr.householderQ();
}

}  // namespace

Point random_gaussian(Rng& rng, Eigen::Index n, double sigma)
{
    std::normal_distribution<double> normal(0.0, sigma);
    Point p(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        p(i) = normal(rng);
    }
    return p;
}

Point random_unit(Rng& rng, Eigen::Index n)
{
    while (true) {
        Point p = random_gaussian(rng, n);
        const double norm = p.norm();
        if (norm > 1e-6) {
            return p / norm;
        }
    }
}

Point random_in_ball(Rng& rng, const Point& center, double radius)
{
    const auto n = static_cast<double>(center.size());
    const double r = radius * std::pow(uniform(rng, 0.0, 1.0), 1.0 / n);
    return center + r * random_unit(rng, center.size());
}

ConvexSet random_set_containing(Rng& rng, SetKind kind, const Point& center, double radius)
{
    const Eigen::Index n = center.size();
    switch (kind) {
    case SetKind::Halfspace: {
        const Point u = random_unit(rng, n);
        return Halfspace{u, u.dot(center) + radius + uniform(rng, 0.0, 1.0)};
    }
    case SetKind::Hyperplane: {
        const Point u = random_unit(rng, n) * uniform(rng, 0.5, 2.0);
        return Hyperplane{u, u.dot(center)};
    }
    case SetKind::Ball: {
        const double shift = uniform(rng, 0.0, 1.0);
        return Ball{center + shift * random_unit(rng, n), shift + radius + uniform(rng, 0.2, 1.0)};
    }
    case SetKind::Box: {
        Point lo(n);
        Point hi(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            lo(i) = center(i) - radius - uniform(rng, 0.0, 1.0);
            hi(i) = center(i) + radius + uniform(rng, 0.0, 1.0);
        }
        return Box{lo, hi};
    }
    case SetKind::Flat: {
        AffineFlat f{center, {}};
        const int k = uniform_int(rng, 1, static_cast<int>(std::max<Eigen::Index>(1, n - 1)));
        for (int i = 0; i < k; ++i) {
            f.basis.push_back(random_gaussian(rng, n));
        }
        return f;
    }
    case SetKind::CircularCone: {
        const Point u = random_unit(rng, n);
        const double length = uniform(rng, 1.0, 3.0);
        const double angle =
            std::min(std::asin(std::min(1.0, radius / length)) + uniform(rng, 0.1, 0.5), std::numbers::pi / 2 - 0.05);
        return CircularCone{center - length * u, u, angle};
    }
    case SetKind::Polytope: {
        const Eigen::MatrixXd q = random_rotation(rng, n);
        const double reach = radius * std::sqrt(static_cast<double>(n)) + uniform(rng, 0.2, 1.0);
        Polytope p;
        for (Eigen::Index i = 0; i < n; ++i) {
            p.vertices.push_back(center + reach * q.col(i));
            p.vertices.push_back(center - reach * q.col(i));
        }
        const int extra = uniform_int(rng, 0, 4);
        for (int i = 0; i < extra; ++i) {
            p.vertices.push_back(center + random_gaussian(rng, n, reach));
        }
        return p;
    }
    case SetKind::TranslatedCone: {
        const Point u = random_unit(rng, n);
        const double length = uniform(rng, 1.0, 3.0);
        const Eigen::MatrixXd perp = complement_basis(u);
        // The generated cone contains the circular cone of half-angle atan(spread / sqrt(n-1)).
        const double need = std::tan(std::asin(std::min(0.95, radius / length))) * std::sqrt(static_cast<double>(n - 1));
        const double spread = need + uniform(rng, 0.1, 1.0);
        TranslatedCone c{center - length * u, {}};
        for (Eigen::Index i = 0; i < perp.cols(); ++i) {
            c.generators.push_back(u + spread * perp.col(i));
            c.generators.push_back(u - spread * perp.col(i));
        }
        return c;
    }
    }
    throw PreconditionError("random_set_containing: unknown kind");
}

ConvexSet random_set(Rng& rng, SetKind kind, Eigen::Index n)
{
    if (kind == SetKind::Polytope) {
        Polytope p;
        const int m = uniform_int(rng, 1, 8);
        for (int i = 0; i < m; ++i) {
            p.vertices.push_back(random_gaussian(rng, n));
        }
        return p;
    }
    if (kind == SetKind::TranslatedCone) {
        TranslatedCone c{random_gaussian(rng, n), {}};
        const int m = uniform_int(rng, 0, 5);
        for (int i = 0; i < m; ++i) {
            c.generators.push_back(random_gaussian(rng, n));
        }
        return c;
    }
    return random_set_containing(rng, kind, random_gaussian(rng, n), uniform(rng, 0.05, 0.5));
}

Point random_member(Rng& rng, const ConvexSet& set)
{
    if (const auto* p = std::get_if<Polytope>(&set)) {
        Eigen::VectorXd w(static_cast<Eigen::Index>(p->vertices.size()));
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            w(i) = -std::log(uniform(rng, 1e-12, 1.0));
        }
        w /= w.sum();
        Point out = Point::Zero(p->vertices.front().size());
        for (std::size_t i = 0; i < p->vertices.size(); ++i) {
            out += w(static_cast<Eigen::Index>(i)) * p->vertices[i];
        }
        return out;
    }
    if (const auto* c = std::get_if<TranslatedCone>(&set)) {
        Point out = c->vertex;
        for (const auto& g : c->generators) {
            out += uniform(rng, 0.0, 2.0) * g;
        }
        return out;
    }
    if (const auto* b = std::get_if<Ball>(&set)) {
        return random_in_ball(rng, b->center, b->radius);
    }
    if (const auto* b = std::get_if<Box>(&set)) {
        Point out(b->lower.size());
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            out(i) = uniform(rng, b->lower(i), b->upper(i));
        }
        return out;
    }
    if (const auto* c = std::get_if<CircularCone>(&set)) {
        const Eigen::Index n = c->apex.size();
        Point perp = random_gaussian(rng, n);
        perp -= perp.dot(c->axis) * c->axis;
        const double pn = perp.norm();
        const double t = uniform(rng, 0.0, 3.0);
        Point dir = c->axis;
        if (pn > 1e-9) {
            dir += uniform(rng, 0.0, 1.0) * std::tan(c->halfAngle) * perp / pn;
        }
        return c->apex + t * dir;
    }
    if (const auto* h = std::get_if<Halfspace>(&set)) {
        const Point x = random_gaussian(rng, h->normal.size(), 2.0);
        const Point onBoundary = x - ((h->normal.dot(x) - h->offset) / h->normal.squaredNorm()) * h->normal;
        return onBoundary - uniform(rng, 0.0, 1.0) * h->normal.normalized();
    }
    const Eigen::Index n = dimension(set);
    return project(set, random_gaussian(rng, n, 2.0));
}

}  // namespace cfeas
