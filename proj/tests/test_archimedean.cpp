#include "preper/archimedean.hpp"
#include "preper/heights.hpp"

#include "doctest.h"

#include <cmath>

using namespace preper;

TEST_CASE("escape radius") {
    CHECK(escape_radius(Rational(2)) == doctest::Approx(2.0));
    CHECK(escape_radius(Rational(6)) >= 3.0);
    CHECK(escape_radius(6.0) < 3.0 + 1e-12);
}

TEST_CASE("julia route") {
    auto d = julia_distance_lower(Rational(3));
    CHECK(d.method == DeltaMethod::JuliaDistance);
    CHECK(d.delta_lower() == doctest::Approx(std::sqrt(3 - (0.5 + std::sqrt(3.25)))).epsilon(1e-12));
    CHECK(julia_distance_lower(Rational(1)).delta_lower() == doctest::Approx(0.5));
    CHECK_THROWS_AS(julia_distance_lower(Rational(1, 3)), std::invalid_argument);
}

TEST_CASE("attracting cycles") {
    auto fixed = find_attracting_cycle({0.2, 0}, 3);
    REQUIRE(fixed);
    CHECK(fixed->period == 1);
    CHECK(std::abs(fixed->multiplier) == doctest::Approx(1 - std::sqrt(0.2)).epsilon(1e-10));

    auto two = find_attracting_cycle({-0.9, 0}, 3);
    REQUIRE(two);
    CHECK(two->period == 2);
    CHECK(two->multiplier.real() == doctest::Approx(4 * (1 - 0.9)).epsilon(1e-10));

    CHECK_FALSE(find_attracting_cycle({2, 0}, 3));
    CHECK_FALSE(find_attracting_cycle({-0.75, 0}, 3));  // parabolic
}

TEST_CASE("hyperbolic constants") {
    CHECK(hyperbolic_constants(1, 4, 0).C3() == 1);
    CHECK(hyperbolic_constants(3, 4, 0).C3() == std::ldexp(1.0, 27));
    CHECK(hyperbolic_constants(1, 4, 0).C4 == doctest::Approx(116));
    CHECK(g_radius(0.7) > 1.0 / 60);
    CHECK(g_radius(0.1) / 0.1 > 1.0 / 3);
    CHECK(g_radius(0.7) / 0.09 > 1.0 / 5);
}

TEST_CASE("small-epsilon constants") {
    CHECK(a_infty_1(0.1) == doctest::Approx(13.8225).epsilon(1e-4));
    CHECK(a_infty_1_sound(0.1) >= a_infty_1(0.1));
    CHECK(a_infty_1_sound(0.05) >= a_infty_1_sound(0.1));
}

TEST_CASE("kosek route gives a positive radius below one") {
    double lambda0 = local_height_arch(Rational(0), Rational(3), 1e-12).value;
    auto k = kosek_delta(Rational(3), lambda0 * (1 - 1e-9));
    CHECK(k.certified);
    CHECK(k.delta_lower() > 0);
    CHECK(k.delta_lower() < 1);
}

TEST_CASE("arch delta selects a route") {
    auto r3 = arch_delta_bound(Rational(3), 0.1, 3, 0);
    CHECK(r3.best.method == DeltaMethod::JuliaDistance);
    CHECK(r3.lambda0_lower == doctest::Approx(0.6238).epsilon(1e-3));

    auto r = arch_delta_bound(Rational(-9, 10), 0.1, 3, 0.1);
    CHECK(r.best.method == DeltaMethod::Hyperbolic);
    REQUIRE(r.cycle);
    CHECK(r.cycle->period == 2);

    CHECK_THROWS_AS(arch_delta_bound(Rational(1, 3), 0.1, 3, 0), HypothesisUnverified);
    CHECK_THROWS_AS(arch_delta_bound(Rational(-2), 0.1, 3, 0), HypothesisUnverified);
}

TEST_CASE("method names round-trip") {
    for (auto m : {DeltaMethod::JuliaDistance, DeltaMethod::Kosek, DeltaMethod::Hyperbolic, DeltaMethod::Attracting,
                   DeltaMethod::Indifferent})
        CHECK(parse_delta_method(to_string(m)) == m);
}
