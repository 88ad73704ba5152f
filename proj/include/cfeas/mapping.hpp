#pragma once

#include "cfeas/iteration.hpp"

#include <memory>
#include <variant>

namespace cfeas
{

struct MappingSpec;

/// x -> P_set(x)
struct ProjectionMap
{
    ConvexSet set;
};

/// x -> P_{M_i}(x) for the remotest member (least index on ties).
struct RemotestMap
{
    Family family;
};

/// x -> (1 - t) x + t T(x)
struct RelaxedMap
{
    std::shared_ptr<const MappingSpec> inner;
    double t{1.0};
};

/// x -> A x + b
struct AffineMap
{
    Eigen::MatrixXd matrix;
    Point offset;
};

struct MappingSpec
{
    std::variant<ProjectionMap, RemotestMap, RelaxedMap, AffineMap> map;
};

MappingSpec relaxed(MappingSpec inner, double t);

Point apply(const MappingSpec& mapping, const Point& x, const TolerancePolicy& tol = {});

struct DemicontractivityEstimate
{
    double kLower{0.0};
    double lambdaUpper{0.0};
    Point worstX;
    Point worstFixpoint;
};

/// kLower = max over samples x with Tx != x and fixpoints x* of
/// (||Tx - x*||^2 - ||x - x*||^2) / ||Tx - x||^2, a lower bound for any valid k.
///
/// Throws PreconditionError when a fixpoint moves by more than geomTol, when
/// an input list is empty, or when every sample is fixed.
DemicontractivityEstimate estimate_k(const MappingSpec& mapping,
                                     const std::vector<Point>& fixpoints,
                                     const std::vector<Point>& samples,
                                     const TolerancePolicy& tol = {});

/// y_0 = x0, y_{k+1} = mann_step(y_k, T y_k, t_k); returns y_0..y_steps.
std::vector<Point> mann_iterates(const MappingSpec& mapping,
                                 const ControlSchedule& schedule,
                                 const Point& x0,
                                 int steps,
                                 const TolerancePolicy& tol = {});

/// General Mann process for a lower-triangular averaging matrix:
/// v_n = sum_j alpha_{nj} x_j, x_{n+1} = T(v_n), x_0 = x0. Returns v_0..v_{rows-1}.
std::vector<Point> general_mann_iterates(const MappingSpec& mapping,
                                         const Eigen::MatrixXd& matrix,
                                         const Point& x0,
                                         const TolerancePolicy& tol = {});

}  // namespace cfeas
