#include "cfeas/convex_set.hpp"
#include "cfeas/family.hpp"
#include "cfeas/nearest_point.hpp"
#include "cfeas/sampling.hpp"
#include "cfeas/set_json.hpp"

#include "../support/oracles.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace cfeas;

namespace
{

const double kPi = std::numbers::pi;

bool near(const Point& a, const Point& b, double eps)
{
    return (a - b).norm() <= eps;
}

}  // namespace

TEST_SUITE("projection examples")
{
    TEST_CASE("halfspace")
    {
        const ConvexSet h = Halfspace{make_point({1, 0, 0}), 0.0};
        CHECK(near(project(h, make_point({2, 0, 0})), make_point({0, 0, 0}), 1e-15));
    }

    TEST_CASE("ball")
    {
        const ConvexSet b = Ball{make_point({0, 0}), 1.0};
        CHECK(near(project(b, make_point({-3, 0})), make_point({-1, 0}), 1e-15));
        CHECK(distance(b, make_point({0, 0})) == 0.0);
        const ConvexSet dot = Ball{make_point({1, 2}), 0.0};
        CHECK(near(project(dot, make_point({5, 5})), make_point({1, 2}), 0.0));
    }

    TEST_CASE("circular cone")
    {
        const ConvexSet c = CircularCone{make_point({0, 0, 0}), make_point({0, 0, 1}), kPi / 4};
        CHECK(near(project(c, make_point({1, 0, 0})), make_point({0.5, 0, 0.5}), 1e-15));
        CHECK_FALSE(contains(c, make_point({1, 0, -2})));
        CHECK(near(project(c, make_point({0, 0, -3})), make_point({0, 0, 0}), 0.0));
        CHECK(near(project(c, make_point({0.2, 0.1, 1})), make_point({0.2, 0.1, 1}), 0.0));
    }

    TEST_CASE("triangle against subset enumeration")
    {
        const std::vector<Point> v{make_point({0, 0}), make_point({1, 0}), make_point({0, 1})};
        const ConvexSet t = Polytope{v};
        const Point x = make_point({1, 1});
        const Point expect = oracle::nearest_in_hull(v, x);
        CHECK(near(expect, make_point({0.5, 0.5}), 1e-14));
        CHECK(near(project(t, x), expect, 1e-10));
    }

    TEST_CASE("segment distance")
    {
        const ConvexSet s = Polytope{{make_point({0, 0}), make_point({1, 0})}};
        CHECK(distance(s, make_point({2, 1})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }

    TEST_CASE("hyperplane, box and slack membership")
    {
        CHECK(distance(Hyperplane{make_point({0, 1}), 2.0}, make_point({5, 0})) == doctest::Approx(2.0));
        CHECK(contains(Box{make_point({0, 0}), make_point({1, 1})}, make_point({0.5, 0.5})));
        TolerancePolicy tol;
        tol.geomTol = 1e-9;
        CHECK(contains(Halfspace{make_point({1, 0}), 0.0}, make_point({1e-12, 0}), tol));
    }

    TEST_CASE("degenerate sets are singletons")
    {
        const Point x = make_point({3, -1});
        CHECK(near(project(Polytope{{make_point({1, 1})}}, x), make_point({1, 1}), 0.0));
        CHECK(near(project(TranslatedCone{make_point({1, 1}), {}}, x), make_point({1, 1}), 0.0));
        CHECK(near(project(AffineFlat{make_point({1, 1}), {}}, x), make_point({1, 1}), 0.0));
    }

    TEST_CASE("flat")
    {
        const ConvexSet f = AffineFlat{make_point({0, 0, 1}), {make_point({1, 0, 0}), make_point({2, 0, 0})}};
        CHECK(near(project(f, make_point({3, 4, 5})), make_point({3, 0, 1}), 1e-14));
    }

    TEST_CASE("kolmogorov examples")
    {
        const ConvexSet b = Ball{make_point({0, 0}), 1.0};
        CHECK(kolmogorov_margin(b, make_point({2, 0}), make_point({0, 0})) == doctest::Approx(1.0));
        CHECK(kolmogorov_margin(b, make_point({0.1, 0.2}), make_point({0.3, -0.5})) == 0.0);
        CHECK_THROWS_AS(kolmogorov_margin(b, make_point({2, 0}), make_point({5, 0})), PreconditionError);
    }
}

TEST_SUITE("errors")
{
    TEST_CASE("invalid sets")
    {
        const Point x = make_point({1, 1});
        CHECK_THROWS_AS(project(Halfspace{make_point({0, 0}), 1.0}, x), InvalidSetError);
        CHECK_THROWS_AS(project(Ball{make_point({0, 0}), -1.0}, x), InvalidSetError);
        CHECK_THROWS_AS(project(Box{make_point({1, 0}), make_point({0, 1})}, x), InvalidSetError);
        CHECK_THROWS_AS(project(Polytope{}, x), InvalidSetError);
        CHECK_THROWS_AS(project(CircularCone{make_point({0, 0}), make_point({0, 2}), 0.5}, x), InvalidSetError);
        CHECK_THROWS_AS(project(CircularCone{make_point({0, 0}), make_point({0, 1}), kPi / 2}, x), InvalidSetError);
        CHECK_THROWS_AS(project(Ball{make_point({0, 0}), 1.0}, make_point({1, 2, 3})), DimensionError);
        CHECK_THROWS_AS(project(Ball{make_point({0, 0}), 1.0}, make_point({NAN, 0})), InvalidSetError);
        CHECK_THROWS_AS(Family{}.validate(), InvalidSetError);
    }

    TEST_CASE("tolerance policy")
    {
        TolerancePolicy t;
        CHECK_NOTHROW(t.validate());
        t.projTol = 1e-6;
        t.geomTol = 1e-8;
        CHECK_THROWS_AS(t.validate(), PreconditionError);
    }
}

TEST_SUITE("solvers against enumeration")
{
    TEST_CASE("random polytopes")
    {
        Rng rng(11);
        for (int trial = 0; trial < 300; ++trial) {
            const Eigen::Index n = 2 + trial % 3;
            const auto set = random_set(rng, SetKind::Polytope, n);
            const auto& p = std::get<Polytope>(set);
            const Point x = random_gaussian(rng, n, 2.0);
            const Point expect = oracle::nearest_in_hull(p.vertices, x);
            CHECK((project(set, x) - expect).norm() <= 1e-9);
        }
    }

    TEST_CASE("random translated cones")
    {
        Rng rng(12);
        for (int trial = 0; trial < 300; ++trial) {
            const Eigen::Index n = 2 + trial % 3;
            const auto set = random_set(rng, SetKind::TranslatedCone, n);
            const auto& c = std::get<TranslatedCone>(set);
            const Point x = random_gaussian(rng, n, 2.0);
            const Point expect = oracle::nearest_in_cone(c.vertex, c.generators, x);
            CHECK((project(set, x) - expect).norm() <= 1e-9);
        }
    }

    TEST_CASE("circular cone against angular search")
    {
        Rng rng(13);
        const ConvexSet set = CircularCone{make_point({0, 0, 0}), make_point({0, 0, 1}), 0.6};
        for (int trial = 0; trial < 100; ++trial) {
            const Point x = random_gaussian(rng, 3, 2.0);
            // Nearest generatrix lies in the half-plane through the axis and x.
            const double r = std::hypot(x(0), x(1));
            const double s = x(2);
            const auto dist2 = [&](double t) {
                const double a = t * std::sin(0.6);
                const double b = t * std::cos(0.6);
                return (r - a) * (r - a) + (s - b) * (s - b);
            };
            const double t = oracle::golden_min(dist2, 0.0, 20.0);
            const double inside = (std::atan2(r, s) <= 0.6) ? 0.0 : std::sqrt(dist2(t));
            CHECK(distance(set, x) == doctest::Approx(inside).epsilon(1e-9));
        }
    }

    TEST_CASE("iteration cap is reported")
    {
        const Eigen::MatrixXd v = Eigen::MatrixXd::Random(3, 12);
        const Point x = make_point({0.05, -0.02, 0.01});
        CHECK_THROWS_AS(nearest_in_hull(v, x, 1e-10, 1), ConvergenceError);
    }
}

TEST_SUITE("projection properties")
{
    TEST_CASE("idempotence, nonexpansiveness, kolmogorov, variational")
    {
        Rng rng(2024);
        const TolerancePolicy tol;
        for (SetKind kind : kAllSetKinds) {
            CAPTURE(static_cast<int>(kind));
            for (int trial = 0; trial < 150; ++trial) {
                const Eigen::Index n = 2 + trial % 4;
                const auto set = random_set(rng, kind, n);
                const Point x = random_gaussian(rng, n, 3.0);
                const Point y = random_gaussian(rng, n, 3.0);
                const Point px = project(set, x, tol);
                const Point py = project(set, y, tol);
                CHECK((project(set, px, tol) - px).norm() <= tol.geomTol);
                CHECK((px - py).norm() <= (x - y).norm() + 1e-10);
                const Point z = random_member(rng, set);
                REQUIRE(contains(set, z, tol));
                CHECK(kolmogorov_margin(set, x, z, tol) >= -1e-9 * (1.0 + x.squaredNorm()));
                CHECK((x - px).squaredNorm() + (px - z).squaredNorm() <= (x - z).squaredNorm() + 1e-9);
            }
        }
    }

    TEST_CASE("triangle margins")
    {
        Rng rng(7);
        const ConvexSet t = Polytope{{make_point({0, 0}), make_point({2, 0}), make_point({0.5, 1.5})}};
        const Point x = make_point({3, 3});
        for (int i = 0; i < 100; ++i) {
            CHECK(kolmogorov_margin(t, x, random_member(rng, t)) >= -1e-9);
        }
    }
}

TEST_SUITE("dykstra")
{
    TEST_CASE("quadrant")
    {
        Family f{{Halfspace{make_point({1, 0}), 0.0}, Halfspace{make_point({0, 1}), 0.0}}, {}};
        CHECK(dykstra_distance(f, make_point({1, 1})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }

    TEST_CASE("single set")
    {
        const ConvexSet b = Ball{make_point({1, 1, 1}), 0.5};
        Family f{{b}, {}};
        const Point x = make_point({3, 0, 2});
        CHECK(dykstra_distance(f, x) == doctest::Approx(distance(b, x)).epsilon(1e-15));
    }

    TEST_CASE("lens against angular search")
    {
        Family f{{Ball{make_point({0, 0}), 1.0}, Ball{make_point({1, 0}), 1.0}}, {}};
        const Point x = make_point({0.5, 2});
        const double expect =
            oracle::lens_distance_2d({0, 0}, 1.0, {1, 0}, 1.0, Eigen::Vector2d(0.5, 2.0));
        CHECK(std::abs(dykstra_distance(f, x) - expect) <= 1e-6);
        const Point y = make_point({-0.3, 1.4});
        const double expectY =
            oracle::lens_distance_2d({0, 0}, 1.0, {1, 0}, 1.0, Eigen::Vector2d(-0.3, 1.4));
        CHECK(std::abs(dykstra_distance(f, y) - expectY) <= 1e-6);
    }

    TEST_CASE("oracle takes precedence")
    {
        Family f{{Ball{make_point({0, 0}), 1.0}}, [](const Point&) { return 42.0; }};
        CHECK(intersection_distance(f, make_point({3, 0})) == 42.0);
        const auto d = per_set_distances(f, make_point({3, 0}));
        REQUIRE(d.size() == 1);
        CHECK(d[0] == doctest::Approx(2.0));
    }

    TEST_CASE("non-convergence is reported")
    {
        TolerancePolicy tol;
        tol.maxInnerIters = 2;
        Family f{{Ball{make_point({0, 0}), 1.0}, Ball{make_point({1.9, 0}), 1.0}}, {}};
        CHECK_THROWS_AS(dykstra_distance(f, make_point({1, 3}), tol), ConvergenceError);
    }
}

TEST_SUITE("json")
{
    TEST_CASE("round trip of every kind")
    {
        Rng rng(5);
        for (SetKind kind : kAllSetKinds) {
            const auto set = random_set(rng, kind, 3);
            const auto back = set_from_json(nlohmann::json::parse(to_json(set).dump()));
            CHECK(kind_name(back) == kind_name(set));
            const Point x = random_gaussian(rng, 3);
            CHECK((project(back, x) - project(set, x)).norm() <= 1e-12);
        }
    }

    TEST_CASE("schema errors name the field")
    {
        const auto doc = nlohmann::json::parse(R"({"schemaVersion":1,"sets":[
            {"kind":"ball","center":[0,0],"radius":1},
            {"center":[1,0],"radius":1}]})");
        try {
            (void)family_from_json(doc);
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(std::string(e.what()).find("sets[1].kind") != std::string::npos);
        }
        const auto extra = nlohmann::json::parse(R"({"kind":"ball","center":[0],"radius":1,"color":"red"})");
        CHECK_THROWS_AS(set_from_json(extra), SchemaError);
        const auto badVersion = nlohmann::json::parse(R"({"schemaVersion":2,"sets":[]})");
        CHECK_THROWS_AS(family_from_json(badVersion), SchemaError);
        const auto badKind = nlohmann::json::parse(R"({"kind":"torus"})");
        CHECK_THROWS_AS(set_from_json(badKind), SchemaError);
    }
}
