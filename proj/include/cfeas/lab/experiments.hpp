#pragma once

#include "cfeas/lab/scenario.hpp"
#include "cfeas/sampling.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cfeas::lab
{

enum class GprVerdict
{
    Holds,
    Fails,
    Inconclusive
};

std::string_view gpr_verdict_name(GprVerdict v);

struct GprRow
{
    int k{0};
    std::vector<double> setDistances;
    double intersectionDistance{0.0};
};

struct GprReport
{
    std::vector<double> perSetDistanceTails;  // max over the final third
    double intersectionDistanceTail{0.0};     // max over the final third
    double intersectionDistanceTailMin{0.0};  // min over the final third
    double threshold{0.0};
    GprVerdict verdict{GprVerdict::Inconclusive};
    std::vector<GprRow> table;
};

/// Tabulates d(x_k, M_i) and the exact d(x_k, ∩M_i) for k < horizon.
///
/// Holds when every per-set tail is <= threshold and the intersection tail is
/// <= 10 * threshold; Fails when every per-set tail is <= threshold and the
/// intersection distance stays above 100 * threshold over the final third.
GprReport gpr_experiment(const Scenario& scenario, int horizon, double threshold, const TolerancePolicy& tol = {});

struct Lemma1Row
{
    double delta{0.0};
    int accepted{0};
    int drawn{0};
    double maxIntersectionDistance{0.0};
    double ratio{0.0};  // maxIntersectionDistance / delta
};

struct Lemma1Report
{
    std::vector<Lemma1Row> rows;
    bool decreasing{false};
    double fittedConstant{0.0};  // max ratio over the schedule
    double constantDrift{0.0};   // |c_last - c_prev| / c_last for the two smallest deltas
    bool stable{false};          // constantDrift <= 0.5
};

/// Rejection sampling near the intersection boundary: boundary points of the
/// intersection (bisection along rays from a witness) are perturbed by
/// Gaussian offsets of scale delta, and points with max_i d(x, M_i) <= delta are
/// kept. Only case1 scenarios are accepted. Throws PreconditionError for
/// other scenarios and Error when sampling cannot fill a delta band.
Lemma1Report lemma1_check(const Scenario& scenario,
                          const std::vector<double>& deltaSchedule,
                          int trials,
                          Rng& rng,
                          const TolerancePolicy& tol = {});

struct GprCertificate
{
    double epsilon{0.0};
    EnlargementPair pair;
    BoundedInteriorReport lemma3Report;
    int tailIndex{0};
    int horizon{0};
    double enlargedDistanceBound{0.0};  // max_{k >= tail} d(x_k, E(A,x) ∩ E(B,xs))
    double baseDistanceBound{0.0};      // max_{k >= tail} d(x_k, A∩B), exact oracle
    double coneDistanceTail{0.0};       // max_{k >= tail} max(d(x_k, E(A,x)), d(x_k, E(B,xs)))
    double setDistanceTail{0.0};        // max_{k >= tail} max(d(x_k, A), d(x_k, B))
    bool chainHolds{false};             // baseDistanceBound <= enlargedDistanceBound + eps/2 + 1e-9
    bool certified{false};              // baseDistanceBound <= eps
};

/// Builds the enlargement pair for x at height eps/2 below the centroid of
/// A∩B (on B's side), gathers the bounded-interior evidence, finds the first
/// index after which d(x_k, E(A,x) ∩ E(B,xs)) <= eps/2 for the rest of the
/// horizon (Dykstra on the two cones), and checks d(x_k, A∩B) <= eps there.
///
/// Throws PreconditionError for non-case4 scenarios, CertificationError when
/// the interior evidence fails or no tail index exists within the horizon.
GprCertificate lemma4_certificate(const Scenario& scenario, double epsilon, int horizon, const TolerancePolicy& tol = {});

struct ModulusRow
{
    double eps{0.0};
    double deltaHat{0.0};
    bool regionLimited{false};  // no sampled point violated the bound
};

/// For each eps, the largest delta such that every sampled point of the
/// region with max_i d(x, M_i) <= delta has d(x, ∩M_i) <= eps. Half the
/// samples are uniform in the region and half are pulled toward a random
/// member set, so small set distances are represented.
std::vector<ModulusRow> regularity_modulus(const Family& family,
                                           const Ball& region,
                                           const std::vector<double>& epsGrid,
                                           int samples,
                                           Rng& rng,
                                           const TolerancePolicy& tol = {});

struct CoherenceReport
{
    int probes{0};
    int agreeing{0};
    int failedToConverge{0};
    double worstGap{0.0};
    Point worstProbe;
};

/// Compares the exact oracle with Dykstra on probes drawn around the
/// witnesses; a probe agrees when |oracle - dykstra| <= 10 * projTol.
CoherenceReport oracle_coherence(const Scenario& scenario, int probes, double spread, Rng& rng, const TolerancePolicy& tol = {});

}  // namespace cfeas::lab
