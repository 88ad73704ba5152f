#include "cfeas/nearest_point.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cfeas
{
namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Minimizes ||Q_S mu|| subject to sum(mu) = 1 by eliminating the first
// column: w = q_0 + D beta with D = [q_i - q_0].
Eigen::VectorXd affine_min_norm(const Eigen::MatrixXd& shifted, const std::vector<Eigen::Index>& support)
{
    const auto k = static_cast<Eigen::Index>(support.size());
    Eigen::VectorXd mu(k);
    if (k == 1) {
        mu(0) = 1.0;
        return mu;
    }
    const Eigen::VectorXd q0 = shifted.col(support[0]);
    Eigen::MatrixXd diff(shifted.rows(), k - 1);
    for (Eigen::Index i = 1; i < k; ++i) {
        diff.col(i - 1) = shifted.col(support[static_cast<std::size_t>(i)]) - q0;
    }
    const Eigen::VectorXd beta = diff.colPivHouseholderQr().solve(-q0);
    mu(0) = 1.0 - beta.sum();
    mu.tail(k - 1) = beta;
    return mu;
}

}  // namespace

NearestPointResult nearest_in_hull(const Eigen::MatrixXd& vertices, const Point& x, double tol, int maxIters)
{
    const Eigen::Index m = vertices.cols();
    if (m == 0) {
        throw InvalidSetError("nearest_in_hull: no vertices");
    }
    const Eigen::MatrixXd shifted = vertices.colwise() - x;
    const Eigen::VectorXd norms2 = shifted.colwise().squaredNorm();
    const double scale2 = std::max(norms2.maxCoeff(), std::numeric_limits<double>::min());
    const double gapTol = std::max(tol * tol, 64.0 * kEps) * scale2;

    Eigen::Index start = 0;
    norms2.minCoeff(&start);
    std::vector<Eigen::Index> support{start};
    std::vector<double> lambda{1.0};
    Eigen::VectorXd w = shifted.col(start);

    auto rebuild_w = [&]() {
        w.setZero();
        for (std::size_t i = 0; i < support.size(); ++i) {
            w += lambda[i] * shifted.col(support[i]);
        }
    };

    int iterations = 0;
    double gap = 0.0;
    while (true) {
        const Eigen::VectorXd dots = shifted.transpose() * w;
        Eigen::Index entering = 0;
        const double best = dots.minCoeff(&entering);
        gap = w.squaredNorm() - best;
        if (gap <= gapTol) {
            break;
        }
        if (std::find(support.begin(), support.end(), entering) != support.end()) {
            break;  // rounding floor: the best vertex is already in the face
        }
        support.push_back(entering);
        lambda.push_back(0.0);

        while (true) {
            if (++iterations > maxIters) {
                throw ConvergenceError(
                    fmt::format("polytope projection did not settle in {} iterations (gap {:.3e})", maxIters, gap),
                    gap);
            }
            const Eigen::VectorXd mu = affine_min_norm(shifted, support);
            const double floor = 1e-14;
            if ((mu.array() > floor).all()) {
                for (std::size_t i = 0; i < support.size(); ++i) {
                    lambda[i] = mu(static_cast<Eigen::Index>(i));
                }
                break;
            }
            double theta = 1.0;
            for (std::size_t i = 0; i < support.size(); ++i) {
                const double mi = mu(static_cast<Eigen::Index>(i));
                if (mi <= floor) {
                    const double denom = lambda[i] - mi;
                    if (denom > 0.0) {
                        theta = std::min(theta, lambda[i] / denom);
                    }
                }
            }
            std::size_t dropped = 0;
            double smallest = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < support.size(); ++i) {
                lambda[i] += theta * (mu(static_cast<Eigen::Index>(i)) - lambda[i]);
                if (lambda[i] < smallest) {
                    smallest = lambda[i];
                    dropped = i;
                }
            }
            // Drop every vanished weight; always drop at least the smallest.
            std::vector<Eigen::Index> keptSupport;
            std::vector<double> keptLambda;
            for (std::size_t i = 0; i < support.size(); ++i) {
                if (i != dropped && lambda[i] > floor) {
                    keptSupport.push_back(support[i]);
                    keptLambda.push_back(lambda[i]);
                }
            }
            if (keptSupport.empty()) {
                keptSupport.push_back(support[dropped]);
                keptLambda.push_back(1.0);
            }
            const double total = std::accumulate(keptLambda.begin(), keptLambda.end(), 0.0);
            for (double& l : keptLambda) {
                l /= total;
            }
            support = std::move(keptSupport);
            lambda = std::move(keptLambda);
        }
        rebuild_w();
    }

    NearestPointResult result;
    result.point = x + w;
    result.weights = Eigen::VectorXd::Zero(m);
    for (std::size_t i = 0; i < support.size(); ++i) {
        result.weights(support[i]) = lambda[i];
    }
    result.residual = gap;
    result.iterations = iterations;
    return result;
}

NearestPointResult nearest_in_cone(const Point& vertex,
                                   const Eigen::MatrixXd& generators,
                                   const Point& x,
                                   double tol,
                                   int maxIters)
{
    const Eigen::Index m = generators.cols();
    const Eigen::VectorXd b = x - vertex;
    NearestPointResult result;
    result.weights = Eigen::VectorXd::Zero(m);
    if (m == 0) {
        result.point = vertex;
        result.residual = 0.0;
        return result;
    }

    const Eigen::VectorXd colNorms = generators.colwise().norm();
    const double bNorm = b.norm();
    const double dualTol = std::max(tol, 64.0 * kEps) * std::max(bNorm, std::numeric_limits<double>::min());

    std::vector<bool> passive(static_cast<std::size_t>(m), false);
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd residual = b;

    auto normalized_dual = [&](Eigen::Index j) {
        return colNorms(j) > 0.0 ? generators.col(j).dot(residual) / colNorms(j) : 0.0;
    };

    auto solve_passive = [&](std::vector<Eigen::Index>& idx) {
        idx.clear();
        for (Eigen::Index j = 0; j < m; ++j) {
            if (passive[static_cast<std::size_t>(j)]) {
                idx.push_back(j);
            }
        }
        Eigen::MatrixXd sub(generators.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            sub.col(static_cast<Eigen::Index>(i)) = generators.col(idx[i]);
        }
        return Eigen::VectorXd(sub.colPivHouseholderQr().solve(b));
    };

    int iterations = 0;
    double worst = 0.0;
    Eigen::Index lastEntered = -1;
    while (true) {
        Eigen::Index entering = -1;
        worst = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (passive[static_cast<std::size_t>(j)] || colNorms(j) == 0.0) {
                continue;
            }
            const double dj = normalized_dual(j);
            if (dj > worst) {
                worst = dj;
                entering = j;
            }
        }
        if (entering < 0 || worst <= dualTol || entering == lastEntered) {
            break;
        }
        passive[static_cast<std::size_t>(entering)] = true;
        lastEntered = entering;

        std::vector<Eigen::Index> idx;
        while (true) {
            if (++iterations > maxIters) {
                throw ConvergenceError(
                    fmt::format("cone projection did not settle in {} iterations (dual {:.3e})", maxIters, worst),
                    worst);
            }
            const Eigen::VectorXd s = solve_passive(idx);
            bool feasible = true;
            for (Eigen::Index i = 0; i < s.size(); ++i) {
                if (s(i) <= 0.0) {
                    feasible = false;
                }
            }
            if (feasible) {
                lambda.setZero();
                for (std::size_t i = 0; i < idx.size(); ++i) {
                    lambda(idx[i]) = s(static_cast<Eigen::Index>(i));
                }
                break;
            }
            double alpha = 1.0;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                const double si = s(static_cast<Eigen::Index>(i));
                const double li = lambda(idx[i]);
                if (si <= 0.0 && li - si > 0.0) {
                    alpha = std::min(alpha, li / (li - si));
                }
            }
            for (std::size_t i = 0; i < idx.size(); ++i) {
                const Eigen::Index j = idx[i];
                lambda(j) += alpha * (s(static_cast<Eigen::Index>(i)) - lambda(j));
                if (lambda(j) <= 1e-15 * std::max(1.0, lambda.cwiseAbs().maxCoeff())) {
                    lambda(j) = 0.0;
                    passive[static_cast<std::size_t>(j)] = false;
                }
            }
            if (std::none_of(passive.begin(), passive.end(), [](bool p) { return p; })) {
                lambda.setZero();
                break;
            }
        }
        residual = b - generators * lambda;
    }

    result.weights = lambda;
    result.point = vertex + generators * lambda;
    result.residual = worst;
    result.iterations = iterations;
    return result;
}

}  // namespace cfeas
