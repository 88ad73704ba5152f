#pragma once

#include "cfeas/convex_set.hpp"

#include <array>
#include <random>

namespace cfeas
{

using Rng = std::mt19937_64;

enum class SetKind
{
    Halfspace,
    Hyperplane,
    Ball,
    Box,
    Flat,
    CircularCone,
    Polytope,
    TranslatedCone
};

inline constexpr std::array<SetKind, 8> kAllSetKinds{
    SetKind::Halfspace, SetKind::Hyperplane, SetKind::Ball,     SetKind::Box,
    SetKind::Flat,      SetKind::CircularCone, SetKind::Polytope, SetKind::TranslatedCone,
};

Point random_gaussian(Rng& rng, Eigen::Index n, double sigma = 1.0);

Point random_unit(Rng& rng, Eigen::Index n);

/// Uniform sample from the ball of the given center and radius.
Point random_in_ball(Rng& rng, const Point& center, double radius);

/// A random, valid set of the given kind in R^n with features of unit scale.
ConvexSet random_set(Rng& rng, SetKind kind, Eigen::Index n);

/// A random set of the given kind that contains the ball B(center, radius).
/// Hyperplanes and flats cannot contain a ball; they are built through center.
ConvexSet random_set_containing(Rng& rng, SetKind kind, const Point& center, double radius);

/// A point of the set: a projection of a random point, nudged inward for
/// kinds with interior. Used to draw Kolmogorov probes.
Point random_member(Rng& rng, const ConvexSet& set);

}  // namespace cfeas
