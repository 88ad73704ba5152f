#pragma once

#include "cfeas/convex_set.hpp"
#include "cfeas/plane_polygon.hpp"
#include "cfeas/sampling.hpp"

namespace cfeas
{

/// The convex cone with vertex `vertex` generated by a polytope.
struct ConeHull
{
    Point vertex;
    Polytope base;
    TranslatedCone realized;  // vertex + cone{v_i - vertex}
};

/// Builds the cone hull. Throws PreconditionError if the vertex lies in the base.
ConeHull cone_hull(const Polytope& base, const Point& vertex, const TolerancePolicy& tol = {});

/// t >= 0 minimizing ||x + t(d - x) - origin||, i.e. max(0, <x - o, x - d> / ||d - x||^2).
/// Throws PreconditionError if d == x.
double ray_min_parameter(const Point& x, const Point& d, const Point& origin);

double ray_min_parameter(const Point& x, const Point& d);

/// vertex + t(d - vertex) for d in the base and 0 <= t <= t_d, where t_d is
/// the ray parameter measured from `origin`.
Point sup_side_point(const ConeHull& hull, const Point& d, double t, const Point& origin, const TolerancePolicy& tol = {});

Point sup_side_point(const ConeHull& hull, const Point& d, double t, const TolerancePolicy& tol = {});

/// 2 Px - x.
Point symmetric_point(const Point& x, const Point& px);

/// d(x, A) - d(y, A). Nonnegative whenever y lies on a segment from x into A.
/// Throws PreconditionError if x is in A.
double lemma2_margin(const Polytope& a, const Point& x, const Point& y, const TolerancePolicy& tol = {});

/// Cone hulls of A from x and of B from the reflection of x through its
/// projection onto A∩B.
struct EnlargementPair
{
    Point x;
    Point px;
    Point xs;
    ConeHull coneA;
    ConeHull coneB;
    AffineFlat plane;
    ConvexPolygon common;  // A∩B in plane coordinates
};

/// Builds the pair for two polytopes lying on opposite sides of `plane` and
/// sharing a face of positive area in it.
///
/// Throws PreconditionError if x is in A, if Px is within geomTol of the
/// relative boundary of A∩B, or if xs lands in B.
EnlargementPair build_enlargement(const Polytope& a,
                                  const Polytope& b,
                                  const AffineFlat& plane,
                                  const Point& x,
                                  const TolerancePolicy& tol = {});

/// Projection of x onto A∩B for the planar common face of a pair of polytopes.
Point project_onto_common_face(const ConvexPolygon& common, const PlaneFrame& frame, const Point& x);

struct BoundedInteriorReport
{
    double boundedRadiusBound{0.0};
    double interiorBallRadius{0.0};
    Point witnessCenter;
    int raysSampled{0};
};

/// Numerical evidence that the two cones of the pair meet in a bounded set
/// with interior.
///
/// interiorBallRadius is the largest radius, found by bisection, for which
/// sampled points of the sphere around Px lie in both cones.
/// boundedRadiusBound is the largest exit radius along raySamples in-plane
/// directions from Px; each ray is searched up to 1e6 times the diameter of
/// the bases. Throws CertificationError on a cap hit or a collapsed ball.
BoundedInteriorReport bounded_interior_report(const EnlargementPair& pair,
                                              int raySamples,
                                              const TolerancePolicy& tol = {});

struct InteriorConfirmation
{
    int samples{0};
    int inside{0};
};

/// Monte Carlo check that points of the ball B(Px, radius) lie in both cones.
InteriorConfirmation confirm_interior_ball(const EnlargementPair& pair,
                                           double radius,
                                           int samples,
                                           Rng& rng,
                                           const TolerancePolicy& tol = {});

}  // namespace cfeas
