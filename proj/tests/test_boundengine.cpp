#include "preper/boundengine.hpp"
#include "preper/heights.hpp"
#include "preper/nonarchimedean.hpp"

#include "doctest.h"

#include <cmath>

using namespace preper;

TEST_CASE("lambert threshold") {
    CHECK(lambert_threshold(-1 / std::exp(1.0)) == doctest::Approx(std::exp(1.0)));
    CHECK(lambert_threshold(-0.01) == doctest::Approx(1466.12).epsilon(1e-5));
    for (int i = 1; i <= 100; ++i) {
        double z = -std::exp(-1.0) * i / 100.0;
        double T = lambert_threshold(z);
        CHECK(std::log(T) / T <= -z);
    }
}

TEST_CASE("truncation constants") {
    auto t = truncation_constants(1 / std::exp(1.0), true);
    CHECK(t.lipschitz == doctest::Approx(std::exp(1.0)));
    CHECK(t.dirichlet == doctest::Approx(4 * M_PI));
}

TEST_CASE("equidistribution needs enough points") {
    EquidistInput in;
    in.C = 2;
    in.kappa = 1;
    in.V_size = 1;
    in.F_size = 5;
    CHECK_THROWS_AS(quant_equid_rhs(in), std::invalid_argument);
    in.F_size = 100;
    in.dirichlet = 1;
    in.lipschitz = 1;
    CHECK(quant_equid_rhs(in) > 0);
}

TEST_CASE("integer headline") {
    auto d = int_bound_detail(PlaceSet({2}));
    CHECK(d.u == doctest::Approx(13.694218670).epsilon(1e-9));
    CHECK(d.bound == BigInt("451287433"));
    CHECK(int_bound(PlaceSet({2, 3})) == BigInt("58710059375926"));
    CHECK(int_bound(PlaceSet({3})) == BigInt("36894374499745"));
    CHECK_THROWS_AS(int_bound(PlaceSet()), std::invalid_argument);
}

TEST_CASE("bound grows with S") {
    auto a = int_bound(PlaceSet({2}));
    auto b = int_bound(PlaceSet({2, 3}));
    auto c = int_bound(PlaceSet({2, 3, 5}));
    CHECK(a < b);
    CHECK(b < c);
}

TEST_CASE("main bound from local inputs") {
    Rational c(1);
    PlaceSet S({2});
    std::vector<DeltaBound> deltas{DeltaBound{Place::infinite(), std::log(2.0), DeltaMethod::JuliaDistance, true},
                                   nonarch_delta(c, 2).to_delta_bound()};
    auto eq = equidist_constants(c);
    double hhat = canonical_height(Rational(0), c).value;
    auto r = main_bound(hhat, S, deltas, eq.C, eq.kappa, eq.V_size);
    CHECK(r.P == doctest::Approx(1448994.95).epsilon(1e-6));
    CHECK(r.P >= r.terms[0]);
    CHECK(r.P >= r.terms[1]);
    CHECK(r.P >= r.terms[2]);
    CHECK(r.log_P == doctest::Approx(std::log(r.P)).epsilon(1e-12));
}

TEST_CASE("uniform bound") {
    auto r = uniform_bound(Rational(3), PlaceSet({2}), 0.1, 3);
    CHECK(r.log_P == doctest::Approx(18.693).epsilon(1e-4));
    CHECK(r.log_P < std::log(451287433.0));
    auto h = uniform_bound(Rational(3, 2), PlaceSet({2}), 0.1, 3);
    CHECK(h.S_tilde == PlaceSet());
    CHECK(h.V_size == 2);
    CHECK_THROWS_AS(uniform_bound(parse_rational("-1999999999/1000000000"), PlaceSet({2}), 0.1, 3), HypothesisUnverified);
}
