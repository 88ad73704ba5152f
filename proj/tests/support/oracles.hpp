#pragma once

// Brute-force reference computations used only by the tests. They share no
// code with the library's solvers.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle
{

// Nearest point of conv(vertices) by enumerating vertex subsets: the optimum
// is the affine-hull projection onto some subset with nonnegative weights.
inline Eigen::VectorXd nearest_in_hull(const std::vector<Eigen::VectorXd>& vertices, const Eigen::VectorXd& x)
{
    const std::size_t m = vertices.size();
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd bestPoint = vertices.front();
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i) {
            if ((mask >> i) & 1u) {
                idx.push_back(i);
            }
        }
        if (idx.size() > static_cast<std::size_t>(x.size()) + 1) {
            continue;
        }
        const Eigen::VectorXd& v0 = vertices[idx[0]];
        Eigen::VectorXd w(static_cast<Eigen::Index>(idx.size()));
        Eigen::VectorXd p = v0;
        if (idx.size() == 1) {
            w(0) = 1.0;
        } else {
            Eigen::MatrixXd d(x.size(), static_cast<Eigen::Index>(idx.size() - 1));
            for (std::size_t j = 1; j < idx.size(); ++j) {
                d.col(static_cast<Eigen::Index>(j - 1)) = vertices[idx[j]] - v0;
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeThinU | Eigen::ComputeThinV);
            if (svd.singularValues().minCoeff() < 1e-9 * std::max(1.0, svd.singularValues().maxCoeff())) {
                continue;
            }
            const Eigen::VectorXd c = svd.solve(x - v0);
            w(0) = 1.0 - c.sum();
            w.tail(c.size()) = c;
            p = v0 + d * c;
        }
        if (w.minCoeff() < -1e-12) {
            continue;
        }
        const double dist = (x - p).norm();
        if (dist < best) {
            best = dist;
            bestPoint = p;
        }
    }
    return bestPoint;
}

// Nearest point of vertex + cone(generators) by enumerating generator subsets.
inline Eigen::VectorXd nearest_in_cone(const Eigen::VectorXd& vertex,
                                       const std::vector<Eigen::VectorXd>& generators,
                                       const Eigen::VectorXd& x)
{
    const std::size_t m = generators.size();
    double best = (x - vertex).norm();
    Eigen::VectorXd bestPoint = vertex;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i) {
            if ((mask >> i) & 1u) {
                idx.push_back(i);
            }
        }
        if (idx.size() > static_cast<std::size_t>(x.size())) {
            continue;
        }
        Eigen::MatrixXd g(x.size(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t j = 0; j < idx.size(); ++j) {
            g.col(static_cast<Eigen::Index>(j)) = generators[idx[j]];
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.singularValues().minCoeff() < 1e-9 * std::max(1.0, svd.singularValues().maxCoeff())) {
            continue;
        }
        const Eigen::VectorXd c = svd.solve(x - vertex);
        if (c.minCoeff() < -1e-12) {
            continue;
        }
        const Eigen::VectorXd p = vertex + g * c;
        const double dist = (x - p).norm();
        if (dist < best) {
            best = dist;
            bestPoint = p;
        }
    }
    return bestPoint;
}

// Golden-section minimum of f on [lo, hi] for a unimodal f.
template <class F, class Real = double>
Real golden_min(F f, Real lo, Real hi, int iters = 200)
{
    const Real g = (std::sqrt(Real(5)) - Real(1)) / Real(2);
    Real a = lo;
    Real b = hi;
    Real c = b - g * (b - a);
    Real d = a + g * (b - a);
    auto fc = f(c);
    auto fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / Real(2);
}

// Distance from x in R^2 to the lens of two discs, by dense angular scan of
// both boundary arcs followed by golden refinement.
inline double lens_distance_2d(const Eigen::Vector2d& c1,
                               double r1,
                               const Eigen::Vector2d& c2,
                               double r2,
                               const Eigen::Vector2d& x)
{
    if ((x - c1).norm() <= r1 && (x - c2).norm() <= r2) {
        return 0.0;
    }
    double best = std::numeric_limits<double>::infinity();
    const auto scan = [&](const Eigen::Vector2d& c, double r, const Eigen::Vector2d& oc, double orad) {
        const auto at = [&](double a) { return Eigen::Vector2d(c + r * Eigen::Vector2d(std::cos(a), std::sin(a))); };
        const auto cost = [&](double a) {
            const Eigen::Vector2d p = at(a);
            const double excess = std::max(0.0, (p - oc).norm() - orad);
            return (x - p).norm() + 1e6 * excess;
        };
        const int n = 20000;
        const double h = 2.0 * std::numbers::pi / n;
        for (int i = 0; i < n; ++i) {
            const double a = golden_min(cost, i * h - h, i * h + h, 60);
            const Eigen::Vector2d p = at(a);
            if ((p - oc).norm() <= orad + 1e-12) {
                best = std::min(best, (x - p).norm());
            }
        }
    };
    scan(c1, r1, c2, r2);
    scan(c2, r2, c1, r1);
    return best;
}

}  // namespace oracle
