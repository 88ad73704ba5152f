#pragma once

#include "cfeas/family.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cfeas
{

/// Relaxation parameters t_k.
class ControlSchedule
{
public:
    enum class Kind
    {
        Constant,
        Sequence,
        Krasnoselskii
    };

    static ControlSchedule constant(double t);
    static ControlSchedule krasnoselskii();
    /// Explicit values with bounds a <= t_k <= b; the last value repeats past the end.
    static ControlSchedule sequence(std::vector<double> values, double a, double b);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double at(int k) const;
    [[nodiscard]] double lower() const { return lower_; }
    [[nodiscard]] double upper() const { return upper_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }

    /// Throws PreconditionError unless every t_k lies in (0, 2).
    void validate_for_projection() const;

    /// Throws PreconditionError unless 0 < a <= t_k <= b < 1 - k.
    void validate_for_demicontractive(double k) const;

private:
    ControlSchedule(Kind kind, std::vector<double> values, double lower, double upper);

    Kind kind_;
    std::vector<double> values_;
    double lower_;
    double upper_;
};

enum class Strategy
{
    Cyclic,    // set k mod N
    Remotest   // least index attaining max_i d(x, M_i)
};

std::string_view strategy_name(Strategy s);

/// Least index whose distance is within 1e-12 of the maximum.
std::size_t remotest_index(const std::vector<double>& distances);

struct TraceStep
{
    int k{0};
    Point x;
    std::size_t chosenSet{0};
    double t{0.0};
    std::vector<double> perSetDistance;
    double residual{0.0};  // ||x_k - P_chosen(x_k)||
    std::optional<double> intersectionDistance;
    std::vector<double> fejerDistances;

    [[nodiscard]] double max_set_distance() const;
};

struct IterationTrace
{
    std::vector<TraceStep> steps;
    std::size_t setCount{0};
    std::size_t witnessCount{0};
    bool converged{false};
    int iterations{0};
    double stopResidual{0.0};
};

/// x_{k+1} = (1 - t_k) x_k + t_k P_{M_alpha(k)}(x_k) until max_i d(x_k, M_i)
/// <= stopResidual or maxIters steps. Every visited iterate is recorded,
/// including the last. Intersection distances are recorded when the family
/// carries an oracle.
///
/// Throws PreconditionError on a schedule outside (0, 2) or a witness that is
/// not in every set.
IterationTrace projection_algorithm(const Family& family,
                                    Strategy strategy,
                                    const ControlSchedule& schedule,
                                    const Point& x0,
                                    int maxIters,
                                    double stopResidual,
                                    const std::vector<Point>& witnesses = {},
                                    const TolerancePolicy& tol = {});

/// (1 - t) x + t Tx for 0 < t < 2.
Point mann_step(const Point& x, const Point& tx, double t);

/// ||x - y||^2 - t(2 - t)||x - Tx||^2 - ||mann_step(x, Tx, t) - y||^2
double descent_residual(const Point& x, const Point& tx, const Point& y, double t);

/// |LHS - RHS| of
///   ||x - x*||^2 + k||x - Tx||^2 - ||Tx - x*||^2 = 2<x - x*, x - Tx> - (1 - k)||x - Tx||^2
double demicontractivity_identity_residual(const Point& x, const Point& tx, const Point& xstar, double k);

enum class Conversion
{
    KToLambda,
    LambdaToK
};

/// lambda = (1 - k) / 2, or k = 1 - 2 lambda.
double lambda_k_convert(double value, Conversion direction);

/// Matrix rows 0..n-1 of a lower-triangular row-stochastic averaging matrix.
/// Returns t_k = alpha_{k+1,k+1} for k = 0..n-2. Throws PreconditionError
/// naming the worst row (0-based) when the matrix is not stochastic or breaks
/// alpha_{n+1,j} = (1 - alpha_{n+1,n+1}) alpha_{n,j}.
ControlSchedule segmenting_reduction(const Eigen::MatrixXd& matrix);

/// The segmenting matrix whose reduction is the given schedule.
Eigen::MatrixXd segmenting_matrix(const ControlSchedule& schedule, int rows);

enum class Verdict
{
    Regular,
    NotRegular,
    Inconclusive
};

std::string_view verdict_name(Verdict v);

struct MonitorReport
{
    std::vector<double> residuals;
    std::vector<double> intersectionDistances;
    Verdict verdict{Verdict::Inconclusive};
};

/// Finite-data reading of the regularity criterion.
///
/// Regular when the final intersection distance is <= 10 * threshold and the
/// final third is nonincreasing up to 1e-12 relative slack; NotRegular when the
/// final residual is <= threshold while every intersection distance of the
/// final third exceeds 100 * threshold. A nonpositive threshold means the
/// trace's stopResidual. Missing intersection distances come from the family
/// oracle or Dykstra.
MonitorReport regularity_monitor(const IterationTrace& trace,
                                 const Family& family,
                                 double threshold = 0.0,
                                 const TolerancePolicy& tol = {});

}  // namespace cfeas
