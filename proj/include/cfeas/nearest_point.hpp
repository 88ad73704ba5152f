#pragma once

#include "cfeas/point.hpp"

namespace cfeas
{

/// Outcome of an active-set nearest-point solve.
struct NearestPointResult
{
    Point point;              // nearest point found
    Eigen::VectorXd weights;  // coefficients on the generating columns
    double residual{0.0};     // optimality gap at exit
    int iterations{0};
};

/// Nearest point of conv{columns of vertices} to x (Wolfe's min-norm-point
/// algorithm on the shifted vertices v_i - x).
///
/// The residual is max_i <x - p, v_i - p>, the Kolmogorov violation over the
/// vertices; it is <= 0 up to rounding at an exact solution. Throws
/// ConvergenceError if maxIters major+minor cycles do not settle.
NearestPointResult nearest_in_hull(const Eigen::MatrixXd& vertices,
                                   const Point& x,
                                   double tol,
                                   int maxIters);

/// Nearest point of vertex + cone{columns of generators} to x, solved as the
/// nonnegative least-squares problem min ||G w - (x - vertex)||, w >= 0
/// (Lawson-Hanson active set).
///
/// The residual is the largest normalized dual infeasibility
/// <g_j, x - p> / ||g_j|| over the generators.
NearestPointResult nearest_in_cone(const Point& vertex,
                                   const Eigen::MatrixXd& generators,
                                   const Point& x,
                                   double tol,
                                   int maxIters);

}  // namespace cfeas
