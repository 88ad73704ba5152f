#include "cfeas/lab/suites.hpp"

#include "cfeas/iteration.hpp"
#include "cfeas/lab/experiments.hpp"
#include "cfeas/lab/report_io.hpp"
#include "cfeas/sampling.hpp"
#include "cfeas/set_json.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace cfeas::lab
{
namespace
{

using Json = nlohmann::ordered_json;

/// Keeps the most adverse value seen so far and the inputs behind it.
class Worst
{
public:
    explicit Worst(bool higherIsWorse) : higherIsWorse_(higherIsWorse) {}

    void offer(double value, const std::function<Json()>& witness)
    {
        if (!seen_ || (higherIsWorse_ ? value > value_ : value < value_)) {
            seen_ = true;
            value_ = value;
            witness_ = witness();
        }
    }

    void store(SuiteReport& report, std::string measure) const
    {
        report.worstMeasure = std::move(measure);
        report.worstValue = value_;
        report.worstWitness = witness_;
    }

private:
    bool higherIsWorse_;
    bool seen_{false};
    double value_{0.0};
    Json witness_ = Json::object();
};

const char* kind_label(SetKind kind)
{
    switch (kind) {
        case SetKind::Halfspace: return "halfspace";
        case SetKind::Hyperplane: return "hyperplane";
        case SetKind::Ball: return "ball";
        case SetKind::Box: return "box";
        case SetKind::Flat: return "flat";
        case SetKind::CircularCone: return "circular_cone";
        case SetKind::Polytope: return "polytope";
        case SetKind::TranslatedCone: return "translated_cone";
    }
    return "?";
}

bool has_interior(SetKind kind) { return kind != SetKind::Hyperplane && kind != SetKind::Flat; }

SuiteReport identity_suite(Rng& rng)
{
    SuiteReport r;
    r.name = "identity";
    constexpr double bound = 1e-10;
    Worst worst(true);
    std::uniform_real_distribution<double> logMag(-3.0, 3.0);
    std::uniform_real_distribution<double> kDist(-2.0, 1.0);
    for (int i = 0; i < 10'000; ++i) {
        const Eigen::Index n = 1 + i % 5;
        const Point x = random_gaussian(rng, n, std::pow(10.0, logMag(rng)));
        const Point tx = random_gaussian(rng, n, std::pow(10.0, logMag(rng)));
        const Point xs = random_gaussian(rng, n, std::pow(10.0, logMag(rng)));
        const double k = kDist(rng);
        const double scale = std::pow(1.0 + x.norm() + tx.norm() + xs.norm(), 2);
        const double ratio = demicontractivity_identity_residual(x, tx, xs, k) / scale;
        ++r.cases;
        if (!(ratio <= bound)) {
            ++r.failures;
        }
        worst.offer(ratio, [&] {
            return Json{{"x", point_to_json(x)}, {"tx", point_to_json(tx)}, {"xstar", point_to_json(xs)}, {"k", k}};
        });
    }
    worst.store(r, "identity residual / (1 + |x| + |Tx| + |x*|)^2");

    // k -> lambda -> k on every multiple of 2^-10 in [-4, 1).
    int roundTrips = 0;
    int roundTripFailures = 0;
    for (int i = -4096; i < 1024; ++i) {
        const double k = i / 1024.0;
        ++roundTrips;
        if (lambda_k_convert(lambda_k_convert(k, Conversion::KToLambda), Conversion::LambdaToK) != k) {
            ++roundTripFailures;
        }
    }
    r.failures += roundTripFailures;
    r.details = Json{{"bound", bound}, {"roundTripCases", roundTrips}, {"roundTripFailures", roundTripFailures}};
    return r;
}

SuiteReport projections_suite(Rng& rng, const TolerancePolicy& tol)
{
    SuiteReport r;
    r.name = "projections";
    Worst worst(false);
    Json perKind = Json::object();
    for (SetKind kind : kAllSetKinds) {
        int failures = 0;
        double idem = 0.0;
        double expansion = -std::numeric_limits<double>::infinity();
        double variational = -std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < 1000; ++trial) {
            const Eigen::Index n = 2 + trial % 4;
            const ConvexSet set = random_set(rng, kind, n);
            const Point x = random_gaussian(rng, n, 3.0);
            const Point y = random_gaussian(rng, n, 3.0);
            const Point px = project(set, x, tol);
            const Point py = project(set, y, tol);
            const Point z = random_member(rng, set);
            const double e1 = (project(set, px, tol) - px).norm();
            const double e2 = (px - py).norm() - (x - y).norm();
            const double e3 = (x - px).squaredNorm() + (px - z).squaredNorm() - (x - z).squaredNorm();
            bool ok = e1 <= tol.geomTol && e2 <= 1e-10 && e3 <= 1e-9;
            double margin = -std::numeric_limits<double>::infinity();
            try {
                margin = kolmogorov_margin(set, x, z, tol) / (1.0 + x.squaredNorm());
            } catch (const PreconditionError&) {
                ok = false;  // the sampled member was rejected
            }
            ok = ok && margin >= -1e-9;
            ++r.cases;
            if (!ok) {
                ++failures;
            }
            idem = std::max(idem, e1);
            expansion = std::max(expansion, e2);
            variational = std::max(variational, e3);
            worst.offer(margin, [&] {
                return Json{{"set", to_json(set)}, {"x", point_to_json(x)}, {"probe", point_to_json(z)}};
            });
        }
        r.failures += failures;
        perKind[kind_label(kind)] = Json{{"cases", 1000},
                                         {"failures", failures},
                                         {"maxIdempotenceError", idem},
                                         {"maxExpansion", expansion},
                                         {"maxVariationalExcess", variational}};
    }
    worst.store(r, "min Kolmogorov margin / (1 + |x|^2)");

    // Dykstra against the exact oracle of every scenario family.
    Json coherence = Json::object();
    const Case3Params c3{1.0, 1.0, {1.0}};
    const std::vector<Scenario> scenarios{
        scenario_case1(1.0, 1.0, 1.0),
        scenario_case2(std::numbers::pi / 6, 0.5, {1.0}),
        scenario_case3(c3),
        twin_square_pyramids(),
        triangle_square_pyramids(),
    };
    const std::vector<std::string> labels{"case1", "case2", "case3", "case4_twin", "case4_triangle_square"};
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const CoherenceReport c = oracle_coherence(scenarios[i], 100, 1.0, rng, tol);
        r.cases += c.probes;
        r.failures += c.probes - c.agreeing;
        coherence[labels[i]] = Json{{"probes", c.probes},
                                    {"agreeing", c.agreeing},
                                    {"failedToConverge", c.failedToConverge},
                                    {"worstGap", std::isfinite(c.worstGap) ? Json(c.worstGap) : Json("noConvergence")},
                                    {"worstProbe", point_to_json(c.worstProbe)}};
    }
    r.details = Json{{"perKind", std::move(perKind)},
                     {"oracleCoherence", std::move(coherence)},
                     {"coherenceBound", 10.0 * tol.projTol}};
    return r;
}

SuiteReport fejer_suite(Rng& rng, const TolerancePolicy& tol)
{
    SuiteReport r;
    r.name = "fejer";
    Worst worst(false);
    int interiorRuns = 0;
    int interiorConverged = 0;
    double maxFejerIncrease = -std::numeric_limits<double>::infinity();
    for (int run = 0; run < 50; ++run) {
        const Eigen::Index n = 2 + run % 3;
        const Point center = random_gaussian(rng, n);
        const bool interior = run % 2 == 0;
        const int count = 2 + run % 3;
        Family f;
        std::vector<std::string> kinds;
        std::uniform_int_distribution<std::size_t> pick(0, kAllSetKinds.size() - 1);
        for (int i = 0; i < count; ++i) {
            SetKind kind = kAllSetKinds[pick(rng)];
            while (interior && !has_interior(kind)) {
                kind = kAllSetKinds[pick(rng)];
            }
            kinds.emplace_back(kind_label(kind));
            f.sets.push_back(random_set_containing(rng, kind, center, 0.2));
        }
        const double t = std::array{0.5, 1.0, 1.5}[static_cast<std::size_t>(run % 3)];
        const Strategy strat = (run / 2) % 2 == 0 ? Strategy::Cyclic : Strategy::Remotest;
        const Point x0 = center + random_gaussian(rng, n, 4.0);
        const IterationTrace tr =
            projection_algorithm(f, strat, ControlSchedule::constant(t), x0, 10'000, 1e-8, {center}, tol);

        bool ok = true;
        double sum = 0.0;
        double worstDescent = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k + 1 < tr.steps.size(); ++k) {
            const TraceStep& s = tr.steps[k];
            const TraceStep& next = tr.steps[k + 1];
            const double increase = next.fejerDistances[0] - s.fejerDistances[0];
            maxFejerIncrease = std::max(maxFejerIncrease, increase);
            ok = ok && increase <= 1e-12;
            const Point tx = project(f.sets[s.chosenSet], s.x, tol);
            const double scale = 1.0 + s.x.squaredNorm() + center.squaredNorm();
            const double descent = descent_residual(s.x, tx, center, t) / scale;
            worstDescent = std::min(worstDescent, descent);
            ok = ok && descent >= -1e-10;
            sum += t * (2.0 - t) * (s.x - tx).squaredNorm();
            if (strat == Strategy::Remotest) {
                for (double d : s.perSetDistance) {
                    ok = ok && d <= s.residual;
                }
            }
        }
        ok = ok && sum <= (x0 - center).squaredNorm() + 1e-8;
        if (interior) {
            ++interiorRuns;
            interiorConverged += tr.converged ? 1 : 0;
            ok = ok && tr.converged;
        }
        ++r.cases;
        if (!ok) {
            ++r.failures;
        }
        worst.offer(worstDescent, [&] {
            Json j = family_to_json(f);
            j["kinds"] = kinds;
            j["x0"] = point_to_json(x0);
            j["witness"] = point_to_json(center);
            j["t"] = t;
            j["strategy"] = strategy_name(strat);
            j["iterations"] = tr.iterations;
            j["converged"] = tr.converged;
            return j;
        });
    }
    worst.store(r, "min descent residual / (1 + |x|^2 + |y|^2)");
    r.details = Json{{"interiorRuns", interiorRuns},
                     {"interiorConverged", interiorConverged},
                     {"maxFejerIncrease", maxFejerIncrease},
                     {"stopResidual", 1e-8},
                     {"maxIters", 10'000}};
    return r;
}

SuiteReport lemma2_suite(Rng& rng, const TolerancePolicy& tol)
{
    SuiteReport r;
    r.name = "lemma2";
    Worst worst(false);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (r.cases < 1000) {
        const ConvexSet set = random_set(rng, SetKind::Polytope, 3);
        const auto& a = std::get<Polytope>(set);
        const Point x = random_gaussian(rng, 3, 3.0);
        if (contains(set, x, tol)) {
            continue;
        }
        const Point d = random_member(rng, set);
        const double t = unit(rng);
        const Point y = x + t * (d - x);
        const double margin = lemma2_margin(a, x, y, tol) / (1.0 + x.squaredNorm());
        ++r.cases;
        if (!(margin >= -1e-9)) {
            ++r.failures;
        }
        worst.offer(margin, [&] {
            return Json{{"a", to_json(set)}, {"x", point_to_json(x)}, {"d", point_to_json(d)}, {"t", t}};
        });
    }
    worst.store(r, "min lemma2 margin / (1 + |x|^2)");
    r.details = Json{{"bound", -1e-9}};
    return r;
}

/// x at height eps/2 below the centroid of A∩B, on B's side.
Point certificate_x(const Case4Params& p, double eps, const TolerancePolicy& tol)
{
    int sideA = 0;
    (void)face_in_plane(p.a, p.frame, tol.geomTol, sideA);
    return p.frame.from_plane(p.common.centroid()) - (0.5 * eps * sideA) * p.frame.normal;
}

SuiteReport lemma3_suite(Rng& rng, const TolerancePolicy& tol)
{
    SuiteReport r;
    r.name = "lemma3";
    Worst worst(false);
    Json runs = Json::array();
    const std::vector<std::pair<std::string, Scenario>> instances{
        {"twin", twin_square_pyramids()}, {"triangle_square", triangle_square_pyramids()}};
    for (const auto& [label, s] : instances) {
        const auto& p = std::get<Case4Params>(s.params);
        for (double eps : {0.1, 0.01}) {
            ++r.cases;
            Json run{{"instance", label}, {"eps", eps}};
            try {
                const EnlargementPair pair = build_enlargement(p.a, p.b, p.plane, certificate_x(p, eps, tol), tol);
                const BoundedInteriorReport rep = bounded_interior_report(pair, 32, tol);
                const InteriorConfirmation conf = confirm_interior_ball(pair, rep.interiorBallRadius, 1000, rng, tol);
                const bool ok = rep.interiorBallRadius >= 1e-3 && std::isfinite(rep.boundedRadiusBound) &&
                                rep.raysSampled >= 32 && conf.inside == conf.samples;
                if (!ok) {
                    ++r.failures;
                }
                run["report"] = interior_report_to_json(rep);
                run["monteCarlo"] = Json{{"samples", conf.samples}, {"inside", conf.inside}};
                worst.offer(rep.interiorBallRadius, [&] { return run; });
            } catch (const Error& e) {
                ++r.failures;
                run["error"] = e.what();
                worst.offer(0.0, [&] { return run; });
            }
            runs.push_back(std::move(run));
        }
    }
    worst.store(r, "min interior ball radius");
    r.details = Json{{"runs", std::move(runs)}, {"minRadius", 1e-3}};
    return r;
}

SuiteReport lemma4_suite(const TolerancePolicy& tol)
{
    SuiteReport r;
    r.name = "lemma4";
    Worst worst(true);
    Json runs = Json::array();
    const std::vector<std::pair<std::string, Scenario>> instances{
        {"twin", twin_square_pyramids()}, {"triangle_square", triangle_square_pyramids()}};
    for (const auto& [label, s] : instances) {
        for (double eps : {0.1, 0.01}) {
            ++r.cases;
            Json run{{"instance", label}, {"eps", eps}};
            try {
                const GprCertificate c = lemma4_certificate(s, eps, 400, tol);
                const bool ok = c.certified && c.chainHolds && (c.pair.x - c.pair.px).norm() <= 0.5 * eps * (1 + 1e-12);
                if (!ok) {
                    ++r.failures;
                }
                run["tailIndex"] = c.tailIndex;
                run["baseDistanceBound"] = c.baseDistanceBound;
                run["enlargedDistanceBound"] = c.enlargedDistanceBound;
                run["certified"] = c.certified;
                run["chainHolds"] = c.chainHolds;
                worst.offer(c.baseDistanceBound / eps, [&] { return run; });
            } catch (const Error& e) {
                ++r.failures;
                run["error"] = e.what();
                worst.offer(std::numeric_limits<double>::max(), [&] { return run; });
            }
            runs.push_back(std::move(run));
        }
    }
    worst.store(r, "max tail d(x_k, A∩B) / eps");
    r.details = Json{{"runs", std::move(runs)}, {"horizon", 400}};
    return r;
}

SuiteReport modulus_suite(Rng& rng, const TolerancePolicy& tol)
{
    SuiteReport r;
    r.name = "modulus";
    Worst worst(false);
    Json rows = Json::array();
    const Ball region{Point::Zero(3), 5.0};
    const std::vector<std::pair<std::string, Family>> families{
        {"case1", scenario_case1(1.0, 1.0, 1.0).family},
        {"case2", scenario_case2(std::numbers::pi / 6, 0.5, {1.0}).family}};
    for (const auto& [label, family] : families) {
        for (const ModulusRow& m : regularity_modulus(family, region, {0.1, 0.01}, 2000, rng, tol)) {
            ++r.cases;
            if (!(m.deltaHat > 0.0)) {
                ++r.failures;
            }
            Json row{{"family", label}, {"eps", m.eps}, {"deltaHat", m.deltaHat}, {"regionLimited", m.regionLimited}};
            worst.offer(m.deltaHat, [&] { return row; });
            rows.push_back(std::move(row));
        }
    }
    worst.store(r, "min deltaHat");
    r.details = Json{{"regionRadius", region.radius}, {"samples", 2000}, {"rows", std::move(rows)}};
    return r;
}

}  // namespace

const std::vector<std::string_view>& suite_names()
{
    static const std::vector<std::string_view> names{"projections", "fejer",   "identity", "lemma2",
                                                     "lemma3",      "lemma4", "modulus"};
    return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed, const TolerancePolicy& tol)
{
    tol.validate();
    Rng rng(seed);
    if (name == "projections") {
        return projections_suite(rng, tol);
    }
    if (name == "fejer") {
        return fejer_suite(rng, tol);
    }
    if (name == "identity") {
        return identity_suite(rng);
    }
    if (name == "lemma2") {
        return lemma2_suite(rng, tol);
    }
    if (name == "lemma3") {
        return lemma3_suite(rng, tol);
    }
    if (name == "lemma4") {
        return lemma4_suite(tol);
    }
    if (name == "modulus") {
        return modulus_suite(rng, tol);
    }
    throw PreconditionError(fmt::format("unknown suite '{}'; valid suites: {}, all", name, fmt::join(suite_names(), ", ")));
}

std::vector<SuiteReport> run_suites(std::string_view name, std::uint64_t seed, const TolerancePolicy& tol)
{
    if (name != "all") {
        return {run_suite(name, seed, tol)};
    }
    std::vector<SuiteReport> out;
    for (std::string_view n : suite_names()) {
        out.push_back(run_suite(n, seed, tol));
    }
    return out;
}

Json suite_report_to_json(const SuiteReport& report)
{
    Json j;
    j["suite"] = report.name;
    j["passed"] = report.passed();
    j["cases"] = report.cases;
    j["failures"] = report.failures;
    j["worst"] = Json{{"measure", report.worstMeasure}, {"value", report.worstValue}, {"witness", report.worstWitness}};
    j["details"] = report.details;
    return j;
}

}  // namespace cfeas::lab
