#pragma once

#include "cfeas/convex_set.hpp"

#include <vector>

namespace cfeas
{

/// Orthonormal frame of a 2-flat in R^3.
struct PlaneFrame
{
    Point origin;
    Point u;
    Point v;
    Point normal;

    /// Builds the frame from a flat with two independent basis vectors in R^3.
    static PlaneFrame from_flat(const AffineFlat& plane);

    [[nodiscard]] Eigen::Vector2d to_plane(const Point& x) const;
    [[nodiscard]] Point from_plane(const Eigen::Vector2d& q) const;
    [[nodiscard]] double signed_height(const Point& x) const;
};

/// Convex polygon with counter-clockwise vertices.
struct ConvexPolygon
{
    std::vector<Eigen::Vector2d> vertices;

    [[nodiscard]] double area() const;
    [[nodiscard]] Eigen::Vector2d centroid() const;
    [[nodiscard]] bool contains(const Eigen::Vector2d& q, double slack = 0.0) const;
    [[nodiscard]] Eigen::Vector2d nearest(const Eigen::Vector2d& q) const;
    [[nodiscard]] double distance(const Eigen::Vector2d& q) const;
    /// Distance from q to the polygon's boundary (inside or outside).
    [[nodiscard]] double boundary_distance(const Eigen::Vector2d& q) const;
};

/// Convex hull (Andrew's monotone chain); collinear points are dropped.
ConvexPolygon convex_hull_2d(std::vector<Eigen::Vector2d> points);

/// Intersection of two convex polygons (Sutherland-Hodgman clipping).
ConvexPolygon clip(const ConvexPolygon& subject, const ConvexPolygon& clipper);

/// The face of a polytope lying in the plane: hull of the vertices within
/// `slack` of the plane. Throws PreconditionError unless the polytope lies in
/// one closed half-space of the plane; `side` receives +1 or -1.
ConvexPolygon face_in_plane(const Polytope& body, const PlaneFrame& frame, double slack, int& side);

/// A∩B for two polytopes on opposite sides of the plane, as a planar polygon.
/// Throws PreconditionError if the bodies share a side or the common face has
/// no relative interior.
ConvexPolygon planar_intersection(const Polytope& a, const Polytope& b, const PlaneFrame& frame, double slack);

}  // namespace cfeas
