#include "preper/heights.hpp"
#include "preper/nonarchimedean.hpp"
#include "preper/report.hpp"

#include "doctest.h"

#include <cmath>

using namespace preper;

TEST_CASE("non-finite numbers survive json") {
    CHECK(number_json(INFINITY) == "inf");
    CHECK(std::isinf(number_from_json(number_json(-INFINITY))));
    CHECK(std::isnan(number_from_json(number_json(NAN))));
    CHECK(number_from_json(number_json(0.1)) == 0.1);
    CHECK_THROWS_AS(number_from_json(json("huge")), std::invalid_argument);
}

TEST_CASE("delta bound round-trip") {
    auto d = nonarch_delta(Rational(1), 3).to_delta_bound();
    auto back = delta_bound_from_json(json::parse(to_json(d).dump()));
    CHECK(back.place == d.place);
    CHECK(back.val_num == d.val_num);
    CHECK(back.val_den == d.val_den);
    CHECK(back.method == d.method);
    CHECK(back.neg_log_delta_upper == d.neg_log_delta_upper);
}

TEST_CASE("bound report round-trip reproduces the bound") {
    Rational c(1);
    PlaceSet S({2});
    std::vector<DeltaBound> deltas{DeltaBound{Place::infinite(), std::log(2.0), DeltaMethod::JuliaDistance, true},
                                   nonarch_delta(c, 2).to_delta_bound()};
    auto eq = equidist_constants(c);
    double hhat = canonical_height(Rational(0), c).value;
    auto r = main_bound(hhat, S, deltas, eq.C, eq.kappa, eq.V_size);
    auto back = bound_report_from_json(json::parse(to_json(r).dump()));
    CHECK(back.P == r.P);
    auto again = main_bound(back.hhat, back.S_tilde, back.inputs, back.C, back.kappa, back.V_size);
    CHECK(again.P == r.P);
    CHECK(again.log_P == r.log_P);
}

TEST_CASE("census csv layout") {
    auto rep = enumerate_preperiodic(Rational(1), Rational(0), PlaceSet({2}), 2);
    std::string csv = census_csv(rep);
    CHECK(csv.rfind("n,m,degree,constant_term,s_integral,arch_min_dist,min_val_2,max_val_2\n", 0) == 0);
    long lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == static_cast<long>(rep.orbits.size()) + 1);
    auto j = to_json(rep);
    CHECK(j["orbits"].size() == rep.orbits.size());
    CHECK(j["S"] == "{inf,2}");
}

TEST_CASE("height json carries units") {
    auto j = to_json(canonical_height(Rational(0), Rational(1)));
    CHECK(j["unit"] == "nats");
    CHECK(j["locals"].size() >= 1);
}
