#include "cfeas/iteration.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace cfeas
{

ControlSchedule::ControlSchedule(Kind kind, std::vector<double> values, double lower, double upper)
    : kind_(kind), values_(std::move(values)), lower_(lower), upper_(upper)
{
}

ControlSchedule ControlSchedule::constant(double t)
{
    return {Kind::Constant, {t}, t, t};
}

ControlSchedule ControlSchedule::krasnoselskii()
{
    return {Kind::Krasnoselskii, {0.5}, 0.5, 0.5};
}

ControlSchedule ControlSchedule::sequence(std::vector<double> values, double a, double b)
{
    if (values.empty()) {
        throw PreconditionError("schedule: empty sequence");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= a && values[i] <= b)) {
            throw PreconditionError(fmt::format("schedule: t_{} = {} outside [{}, {}]", i, values[i], a, b));
        }
    }
    return {Kind::Sequence, std::move(values), a, b};
}

double ControlSchedule::at(int k) const
{
    if (kind_ != Kind::Sequence) {
        return values_.front();
    }
    const auto i = std::min(static_cast<std::size_t>(std::max(k, 0)), values_.size() - 1);
    return values_[i];
}

void ControlSchedule::validate_for_projection() const
{
    if (!(lower_ > 0.0) || !(upper_ < 2.0)) {
        throw PreconditionError(fmt::format("schedule: t_k must lie in (0, 2), got [{}, {}]", lower_, upper_));
    }
}

void ControlSchedule::validate_for_demicontractive(double k) const
{
    if (!(k < 1.0)) {
        throw PreconditionError("schedule: demicontractive constant must be < 1");
    }
    if (!(lower_ > 0.0) || !(upper_ < 1.0 - k)) {
        throw PreconditionError(
            fmt::format("schedule: need 0 < a <= t_k <= b < 1 - k = {}, got [{}, {}]", 1.0 - k, lower_, upper_));
    }
}

std::string_view strategy_name(Strategy s)
{
    return s == Strategy::Cyclic ? "cyclic" : "remotest";
}

std::size_t remotest_index(const std::vector<double>& distances)
{
    const double top = *std::max_element(distances.begin(), distances.end());
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (distances[i] >= top - 1e-12) {
            return i;
        }
    }
    return 0;
}

double TraceStep::max_set_distance() const
{
    return perSetDistance.empty() ? 0.0 : *std::max_element(perSetDistance.begin(), perSetDistance.end());
}

IterationTrace projection_algorithm(const Family& family,
                                    Strategy strategy,
                                    const ControlSchedule& schedule,
                                    const Point& x0,
                                    int maxIters,
                                    double stopResidual,
                                    const std::vector<Point>& witnesses,
                                    const TolerancePolicy& tol)
{
    family.validate();
    tol.validate();
    schedule.validate_for_projection();
    require_finite(x0, "starting point");
    require_dim(x0, dimension(family.sets.front()), "starting point");
    if (maxIters < 0 || !(stopResidual >= 0.0)) {
        throw PreconditionError("projection_algorithm: need maxIters >= 0 and stopResidual >= 0");
    }
    for (std::size_t j = 0; j < witnesses.size(); ++j) {
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (!contains(family.sets[i], witnesses[j], tol)) {
                throw PreconditionError(fmt::format("witness {} is not in set {}", j, i));
            }
        }
    }

    IterationTrace trace;
    trace.setCount = family.size();
    trace.witnessCount = witnesses.size();
    trace.stopResidual = stopResidual;
    Point x = x0;
    for (int k = 0;; ++k) {
        TraceStep step;
        step.k = k;
        step.x = x;
        step.t = schedule.at(k);
        std::vector<Point> projections;
        for (const auto& set : family.sets) {
            projections.push_back(project(set, x, tol));
            step.perSetDistance.push_back((x - projections.back()).norm());
        }
        step.chosenSet = strategy == Strategy::Cyclic ? static_cast<std::size_t>(k) % family.size()
                                                      : remotest_index(step.perSetDistance);
        step.residual = step.perSetDistance[step.chosenSet];
        if (family.has_oracle()) {
            step.intersectionDistance = family.intersectionOracle(x);
        }
        for (const auto& w : witnesses) {
            step.fejerDistances.push_back((x - w).norm());
        }
        const bool done = step.max_set_distance() <= stopResidual;
        trace.steps.push_back(std::move(step));
        if (done) {
            trace.converged = true;
            break;
        }
        if (k == maxIters) {
            break;
        }
        x = mann_step(x, projections[trace.steps.back().chosenSet], trace.steps.back().t);
        trace.iterations = k + 1;
    }
    return trace;
}

Point mann_step(const Point& x, const Point& tx, double t)
{
    if (!(t > 0.0 && t < 2.0)) {
        throw PreconditionError(fmt::format("mann_step: t = {} outside (0, 2)", t));
    }
    require_dim(tx, x.size(), "mapped point");
    if (t == 1.0) {
        return tx;
    }
    return (1.0 - t) * x + t * tx;
}

double descent_residual(const Point& x, const Point& tx, const Point& y, double t)
{
    return (x - y).squaredNorm() - t * (2.0 - t) * (x - tx).squaredNorm() - (mann_step(x, tx, t) - y).squaredNorm();
}

double demicontractivity_identity_residual(const Point& x, const Point& tx, const Point& xstar, double k)
{
    require_dim(tx, x.size(), "mapped point");
    require_dim(xstar, x.size(), "fixed point");
    const double step2 = (x - tx).squaredNorm();
    const double lhs = (x - xstar).squaredNorm() + k * step2 - (tx - xstar).squaredNorm();
    const double rhs = 2.0 * (x - xstar).dot(x - tx) - (1.0 - k) * step2;
    return std::abs(lhs - rhs);
}

double lambda_k_convert(double value, Conversion direction)
{
    return direction == Conversion::KToLambda ? (1.0 - value) / 2.0 : 1.0 - 2.0 * value;
}

ControlSchedule segmenting_reduction(const Eigen::MatrixXd& m)
{
    const Eigen::Index n = m.rows();
    if (n < 2 || m.cols() != n) {
        throw PreconditionError("segmenting_reduction: need a square matrix with at least 2 rows");
    }
    const auto fail = [](Eigen::Index row, const std::string& what, double by) {
        throw PreconditionError(fmt::format("segmenting_reduction: row {} {} (off by {:.3e})", row, what, by));
    };
    for (Eigen::Index r = 0; r < n; ++r) {
        const double minEntry = m.row(r).minCoeff();
        if (minEntry < 0.0) {
            fail(r, "has a negative entry", -minEntry);
        }
        const double upper = r + 1 < n ? m.row(r).tail(n - r - 1).cwiseAbs().maxCoeff() : 0.0;
        if (upper != 0.0) {
            fail(r, "is not lower-triangular", upper);
        }
        const double sumGap = std::abs(m.row(r).sum() - 1.0);
        if (sumGap > 1e-12) {
            fail(r, "does not sum to 1", sumGap);
        }
    }
    Eigen::Index worstRow = -1;
    double worst = 0.0;
    for (Eigen::Index r = 1; r < n; ++r) {
        const double t = m(r, r);
        for (Eigen::Index j = 0; j < r; ++j) {
            const double gap = std::abs(m(r, j) - (1.0 - t) * m(r - 1, j));
            if (gap > worst) {
                worst = gap;
                worstRow = r;
            }
        }
    }
    if (worst > 1e-12) {
        fail(worstRow, "breaks the segmenting condition", worst);
    }
    std::vector<double> t;
    for (Eigen::Index r = 1; r < n; ++r) {
        t.push_back(m(r, r));
    }
    const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
    return ControlSchedule::sequence(t, *lo, *hi);
}

Eigen::MatrixXd segmenting_matrix(const ControlSchedule& schedule, int rows)
{
    if (rows < 1) {
        throw PreconditionError("segmenting_matrix: need at least one row");
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, rows);
    m(0, 0) = 1.0;
    for (int r = 1; r < rows; ++r) {
        const double t = schedule.at(r - 1);
        m.row(r).head(r) = (1.0 - t) * m.row(r - 1).head(r);
        m(r, r) = t;
    }
    return m;
}

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Regular:
        return "regular";
    case Verdict::NotRegular:
        return "notRegular";
    case Verdict::Inconclusive:
        break;
    }
    return "inconclusive";
}

MonitorReport regularity_monitor(const IterationTrace& trace,
                                 const Family& family,
                                 double threshold,
                                 const TolerancePolicy& tol)
{
    MonitorReport out;
    if (trace.steps.empty()) {
        return out;
    }
    if (!(threshold > 0.0)) {
        threshold = trace.stopResidual;
    }
    for (const auto& s : trace.steps) {
        out.residuals.push_back(s.residual);
        out.intersectionDistances.push_back(s.intersectionDistance ? *s.intersectionDistance
                                                                   : intersection_distance(family, s.x, tol));
    }
    const std::size_t n = out.residuals.size();
    const std::size_t tailStart = n - std::max<std::size_t>(1, (n + 2) / 3);
    const auto& d = out.intersectionDistances;

    bool monotone = true;
    for (std::size_t i = tailStart + 1; i < n; ++i) {
        if (d[i] > d[i - 1] + 1e-12 * (1.0 + d[i - 1])) {
            monotone = false;
        }
    }
    if (d.back() <= 10.0 * threshold && monotone) {
        out.verdict = Verdict::Regular;
        return out;
    }
    const double tailMin = *std::min_element(d.begin() + static_cast<std::ptrdiff_t>(tailStart), d.end());
    if (out.residuals.back() <= threshold && tailMin > 100.0 * threshold) {
        out.verdict = Verdict::NotRegular;
    }
    return out;
}

}  // namespace cfeas
