#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace cfeas
{

/// A point of R^n. Dimension is carried by the vector itself.
using Point = Eigen::VectorXd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error
{
public:
    using Error::Error;
};

class InvalidSetError : public Error
{
public:
    using Error::Error;
};

class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// A numerical certificate could not be established (e.g. a sampled ray
/// escaped to the cap, or an interior ball collapsed).
class CertificationError : public Error
{
public:
    using Error::Error;
};

/// An iterative solver stopped before reaching its tolerance.
class ConvergenceError : public Error
{
public:
    ConvergenceError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved)
    {
    }

    /// Residual or displacement reached when the solver gave up.
    [[nodiscard]] double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// Throws DimensionError unless both points have dimension n.
void require_dim(const Point& p, Eigen::Index n, const char* what);

/// Throws InvalidSetError on NaN/Inf coordinates or an empty point.
void require_finite(const Point& p, const char* what);

/// Builds a point from a brace list, e.g. make_point({1.0, 0.0}).
Point make_point(std::initializer_list<double> coords);

Point make_point(const std::vector<double>& coords);

std::vector<double> to_vector(const Point& p);

}  // namespace cfeas
