#include "cfeas/lab/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace cfeas::lab
{
namespace
{

std::size_t tail_start(std::size_t n)
{
    return n - std::max<std::size_t>(1, (n + 2) / 3);
}

bool in_all(const Family& f, const Point& x, const TolerancePolicy& tol)
{
    return std::all_of(f.sets.begin(), f.sets.end(), [&](const ConvexSet& s) { return contains(s, x, tol); });
}

double max_set_distance(const Family& f, const Point& x, const TolerancePolicy& tol)
{
    const auto d = per_set_distances(f, x, tol);
    return *std::max_element(d.begin(), d.end());
}

}  // namespace

std::string_view gpr_verdict_name(GprVerdict v)
{
    switch (v) {
    case GprVerdict::Holds:
        return "gprHolds";
    case GprVerdict::Fails:
        return "gprFails";
    case GprVerdict::Inconclusive:
        break;
    }
    return "inconclusive";
}

GprReport gpr_experiment(const Scenario& scenario, int horizon, double threshold, const TolerancePolicy& tol)
{
    if (horizon < 10) {
        throw PreconditionError("gpr_experiment: horizon must be at least 10");
    }
    if (!(threshold > 0.0)) {
        throw PreconditionError("gpr_experiment: threshold must be positive");
    }
    if (!scenario.family.has_oracle()) {
        throw PreconditionError("gpr_experiment: scenario has no exact oracle");
    }
    GprReport report;
    report.threshold = threshold;
    for (int k = 0; k < horizon; ++k) {
        const Point x = scenario.point(k);
        report.table.push_back({k, per_set_distances(scenario.family, x, tol), scenario.exact_distance(x)});
    }
    const std::size_t start = tail_start(report.table.size());
    report.perSetDistanceTails.assign(scenario.family.size(), 0.0);
    report.intersectionDistanceTailMin = report.table[start].intersectionDistance;
    for (std::size_t r = start; r < report.table.size(); ++r) {
        const auto& row = report.table[r];
        for (std::size_t i = 0; i < row.setDistances.size(); ++i) {
            report.perSetDistanceTails[i] = std::max(report.perSetDistanceTails[i], row.setDistances[i]);
        }
        report.intersectionDistanceTail = std::max(report.intersectionDistanceTail, row.intersectionDistance);
        report.intersectionDistanceTailMin = std::min(report.intersectionDistanceTailMin, row.intersectionDistance);
    }
    const bool setsVanish = std::all_of(report.perSetDistanceTails.begin(), report.perSetDistanceTails.end(),
                                        [&](double d) { return d <= threshold; });
    if (setsVanish && report.intersectionDistanceTail <= 10.0 * threshold) {
        report.verdict = GprVerdict::Holds;
    } else if (setsVanish && report.intersectionDistanceTailMin > 100.0 * threshold) {
        report.verdict = GprVerdict::Fails;
    }
    return report;
}

Lemma1Report lemma1_check(const Scenario& scenario,
                          const std::vector<double>& deltaSchedule,
                          int trials,
                          Rng& rng,
                          const TolerancePolicy& tol)
{
    if (scenario.kind != CaseKind::Case1) {
        throw PreconditionError(
            fmt::format("lemma1_check: needs a case1 scenario (bounded intersection with interior), got {}",
                        case_name(scenario.kind)));
    }
    if (trials < 1 || deltaSchedule.empty()) {
        throw PreconditionError("lemma1_check: need trials >= 1 and a nonempty delta schedule");
    }
    const Family& fam = scenario.family;
    const Point center = scenario.witnesses.front();
    double reach = 1.0;
    while (in_all(fam, center + reach * Point::Unit(center.size(), 0), tol)) {
        reach *= 2.0;
    }
    reach *= 4.0;
    std::uniform_real_distribution<double> scale(0.0, 2.0);

    Lemma1Report report;
    for (double delta : deltaSchedule) {
        if (!(delta >= 0.0)) {
            throw PreconditionError("lemma1_check: deltas must be nonnegative");
        }
        Lemma1Row row;
        row.delta = delta;
        const int maxDraws = 1000 * trials;
        while (row.accepted < trials) {
            if (row.drawn >= maxDraws) {
                throw Error(fmt::format("lemma1_check: only {} of {} samples accepted at delta {}", row.accepted,
                                        trials, delta));
            }
            ++row.drawn;
            const Point u = random_unit(rng, center.size());
            double lo = 0.0;
            double hi = reach;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                (in_all(fam, center + mid * u, tol) ? lo : hi) = mid;
            }
            const Point x = center + lo * u + delta * scale(rng) * random_gaussian(rng, center.size());
            if (max_set_distance(fam, x, tol) > delta + tol.geomTol) {
                continue;
            }
            ++row.accepted;
            row.maxIntersectionDistance = std::max(row.maxIntersectionDistance, scenario.exact_distance(x));
        }
        row.ratio = delta > 0.0 ? row.maxIntersectionDistance / delta : 0.0;
        report.rows.push_back(row);
    }
    report.decreasing = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (report.rows[i].delta < report.rows[i - 1].delta &&
            !(report.rows[i].maxIntersectionDistance < report.rows[i - 1].maxIntersectionDistance)) {
            report.decreasing = false;
        }
    }
    for (const auto& r : report.rows) {
        report.fittedConstant = std::max(report.fittedConstant, r.ratio);
    }
    if (report.rows.size() >= 2) {
        const double last = report.rows.back().ratio;
        const double prev = report.rows[report.rows.size() - 2].ratio;
        report.constantDrift = last > 0.0 ? std::abs(last - prev) / last : 0.0;
        report.stable = report.constantDrift <= 0.5;
    }
    return report;
}

GprCertificate lemma4_certificate(const Scenario& scenario, double epsilon, int horizon, const TolerancePolicy& tol)
{
    const auto* params = std::get_if<Case4Params>(&scenario.params);
    if (scenario.kind != CaseKind::Case4 || params == nullptr) {
        throw PreconditionError("lemma4_certificate: needs a case4 scenario");
    }
    if (!(epsilon > 0.0) || horizon < 1) {
        throw PreconditionError("lemma4_certificate: need epsilon > 0 and horizon >= 1");
    }
    int sideA = 0;
    (void)face_in_plane(params->a, params->frame, tol.geomTol, sideA);
    const Point center = params->frame.from_plane(params->common.centroid());
    const Point x = center - (0.5 * epsilon * sideA) * params->frame.normal;

    GprCertificate cert;
    cert.epsilon = epsilon;
    cert.horizon = horizon;
    cert.pair = build_enlargement(params->a, params->b, params->plane, x, tol);
    cert.lemma3Report = bounded_interior_report(cert.pair, 32, tol);

    const Family cones{{cert.pair.coneA.realized, cert.pair.coneB.realized}, {}};
    // The cone facets meet at angles of order eps, so Dykstra contracts slowly;
    // the decision is against eps/2, so its tolerance is scaled to eps.
    TolerancePolicy coneTol = tol;
    coneTol.projTol = std::min(tol.geomTol, std::max(tol.projTol, 1e-7 * epsilon));
    coneTol.maxInnerIters = std::max(tol.maxInnerIters, 200000);
    // Walk back from the end of the horizon to the last index above eps/2.
    int tail = horizon;
    std::vector<double> enlarged(static_cast<std::size_t>(horizon), 0.0);
    for (int k = horizon - 1; k >= 0; --k) {
        const double d = dykstra_distance(cones, scenario.point(k), coneTol);
        if (d > 0.5 * epsilon) {
            break;
        }
        enlarged[static_cast<std::size_t>(k)] = d;
        tail = k;
    }
    if (tail == horizon) {
        throw CertificationError(
            fmt::format("lemma4_certificate: no tail within horizon {} for eps = {}", horizon, epsilon));
    }
    cert.tailIndex = tail;
    for (int k = tail; k < horizon; ++k) {
        const Point xk = scenario.point(k);
        cert.enlargedDistanceBound = std::max(cert.enlargedDistanceBound, enlarged[static_cast<std::size_t>(k)]);
        cert.baseDistanceBound = std::max(cert.baseDistanceBound, scenario.exact_distance(xk));
        cert.coneDistanceTail = std::max({cert.coneDistanceTail, distance(cert.pair.coneA.realized, xk, tol),
                                          distance(cert.pair.coneB.realized, xk, tol)});
        cert.setDistanceTail = std::max(cert.setDistanceTail, max_set_distance(scenario.family, xk, tol));
    }
    cert.chainHolds = cert.baseDistanceBound <= cert.enlargedDistanceBound + 0.5 * epsilon + 1e-9;
    cert.certified = cert.baseDistanceBound <= epsilon;
    return cert;
}

std::vector<ModulusRow> regularity_modulus(const Family& family,
                                           const Ball& region,
                                           const std::vector<double>& epsGrid,
                                           int samples,
                                           Rng& rng,
                                           const TolerancePolicy& tol)
{
    family.validate();
    validate(ConvexSet{region});
    if (samples < 2) {
        throw PreconditionError("regularity_modulus: need at least 2 samples");
    }
    std::uniform_int_distribution<std::size_t> pick(0, family.size() - 1);
    std::uniform_real_distribution<double> logScale(-4.0, 0.0);
    std::vector<double> maxDist;
    std::vector<double> interDist;
    for (int i = 0; i < samples; ++i) {
        Point x = random_in_ball(rng, region.center, region.radius);
        if (i % 2 == 1) {
            const Point onSet = project(family.sets[pick(rng)], x, tol);
            x = onSet + region.radius * std::pow(10.0, logScale(rng)) * random_unit(rng, x.size());
            if ((x - region.center).norm() > region.radius) {
                continue;
            }
        }
        maxDist.push_back(max_set_distance(family, x, tol));
        interDist.push_back(intersection_distance(family, x, tol));
    }
    if (maxDist.empty()) {
        throw Error("regularity_modulus: no sample landed in the region");
    }
    std::vector<ModulusRow> out;
    for (double eps : epsGrid) {
        ModulusRow row;
        row.eps = eps;
        row.deltaHat = *std::max_element(maxDist.begin(), maxDist.end());
        row.regionLimited = true;
        for (std::size_t i = 0; i < maxDist.size(); ++i) {
            if (interDist[i] > eps && maxDist[i] <= row.deltaHat) {
                row.deltaHat = maxDist[i];
                row.regionLimited = false;
            }
        }
        out.push_back(row);
    }
    return out;
}

CoherenceReport oracle_coherence(const Scenario& scenario, int probes, double spread, Rng& rng, const TolerancePolicy& tol)
{
    CoherenceReport report;
    report.probes = probes;
    const double limit = 10.0 * tol.projTol;
    for (int i = 0; i < probes; ++i) {
        const Point& w = scenario.witnesses[static_cast<std::size_t>(i) % scenario.witnesses.size()];
        const Point x = w + random_gaussian(rng, w.size(), spread);
        const double exact = scenario.exact_distance(x);
        double gap = 0.0;
        try {
            gap = std::abs(dykstra_distance(scenario.family, x, tol) - exact);
        } catch (const ConvergenceError&) {
            ++report.failedToConverge;
            gap = std::numeric_limits<double>::infinity();
        }
        if (gap <= limit) {
            ++report.agreeing;
        }
        if (gap > report.worstGap || report.worstProbe.size() == 0) {
            report.worstGap = gap;
            report.worstProbe = x;
        }
    }
    return report;
}

}  // namespace cfeas::lab
