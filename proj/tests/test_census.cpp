#include "preper/archimedean.hpp"
#include "preper/census.hpp"
#include "preper/nonarchimedean.hpp"
#include "preper/roots.hpp"

#include "doctest.h"

#include <cmath>
#include <set>

using namespace preper;

TEST_CASE("certified roots of a quadratic") {
    IntPoly g{BigInt(2), BigInt(1), BigInt(1)};  // z^2 + z + 2
    auto roots = certified_roots(g);
    REQUIRE(roots.size() == 2);
    const long double im = std::sqrt(7.0L) / 2;
    for (const auto& r : roots) {
        CHECK(r.radius < 1e-15L);
        long double d = std::min(std::abs(r.center - std::complex<long double>(-0.5L, im)),
                                 std::abs(r.center - std::complex<long double>(-0.5L, -im)));
        CHECK(d <= r.radius + 1e-18L);
    }
    long double md = min_root_distance(roots, {0, 0});
    CHECK(md <= std::sqrt(2.0L));
    CHECK(md >= std::sqrt(2.0L) - 1e-15L);
}

TEST_CASE("certified roots of a degree-16 iterate") {
    IntPoly g = clear_denominators(iterate_map(Rational(3), 4));
    auto roots = certified_roots(g);
    CHECK(roots.size() == 16);
    for (const auto& r : roots) CHECK(r.radius < 1e-10L);
}

TEST_CASE("newton polygon valuations") {
    IntPoly g{BigInt(-3), BigInt(0), BigInt(1)};  // z^2 - 3
    CHECK(*newton_min_valuation(g, Rational(0), 3) == Rational(1, 2));
    CHECK(*newton_max_valuation(g, Rational(0), 3) == Rational(1, 2));
    IntPoly h{BigInt(-18), BigInt(3), BigInt(1)};  // (z + 6)(z - 3)
    auto v = newton_root_valuations(h, Rational(0), 3);
    CHECK(*newton_min_valuation(h, Rational(0), 3) == 1);
    CHECK(*newton_max_valuation(h, Rational(0), 3) == 1);
    CHECK(*newton_min_valuation(h, Rational(0), 2) == 0);
    CHECK(*newton_max_valuation(h, Rational(0), 2) == 1);
    CHECK_FALSE(newton_max_valuation(h, Rational(3), 5).has_value());
    int total = 0;
    for (auto [val, mult] : v) total += mult;
    CHECK(total == 2);
}

TEST_CASE("S-integrality of small factors") {
    PlaceSet S({2});
    IntPoly a{BigInt(1), BigInt(-1), BigInt(1)};  // z^2 - z + 1, g(0) = 1
    IntPoly b{BigInt(2), BigInt(1), BigInt(1)};   // z^2 + z + 2, g(0) = 2
    IntPoly d{BigInt(6), BigInt(1), BigInt(1)};
    CHECK(is_s_integral_factor(a, Rational(1), Rational(0), S));
    CHECK(is_s_integral_factor(b, Rational(1), Rational(0), S));
    CHECK_FALSE(is_s_integral_factor(d, Rational(1), Rational(0), S));
    CHECK(is_s_integral_factor(d, Rational(1), Rational(0), PlaceSet({2, 3})));
}

TEST_CASE("census for c = 1") {
    auto rep = enumerate_preperiodic(Rational(1), Rational(0), PlaceSet({2}), 5);
    CHECK(rep.orbits.size() == 15);
    CHECK(rep.s_integral_count == 20);
    std::set<std::string> values;
    for (const auto& s : rep.sunit_values) values.insert(to_string(s.value));
    CHECK(values == std::set<std::string>{"1", "2", "4"});
    CHECK(verify_sunit_theorem(rep).all_pass());
    // every (n, m) factors into orbits whose degrees sum to 2^n
    for (const auto& [nm, idx] : rep.pair_factors) {
        int deg = 0;
        for (auto i : idx) deg += rep.orbits[i].degree;
        CHECK(deg == (1 << nm.first));
    }
}

TEST_CASE("serial and parallel census agree") {
    auto a = enumerate_preperiodic_serial(Rational(3), Rational(0), PlaceSet({2, 3}), 4);
    auto b = enumerate_preperiodic(Rational(3), Rational(0), PlaceSet({2, 3}), 4);
    REQUIRE(a.orbits.size() == b.orbits.size());
    for (std::size_t i = 0; i < a.orbits.size(); ++i) {
        CHECK(a.orbits[i].factor == b.orbits[i].factor);
        CHECK(a.orbits[i].s_integral == b.orbits[i].s_integral);
    }
    CHECK(a.s_integral_count == b.s_integral_count);
}

TEST_CASE("census rejects bad sizes") {
    CHECK_THROWS_AS(enumerate_preperiodic(Rational(1), Rational(0), PlaceSet({2}), 0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_preperiodic(Rational(1), Rational(0), PlaceSet({2}), 7), std::invalid_argument);
}

TEST_CASE("delta soundness for a bad-reduction parameter") {
    Rational c(3, 2);
    std::vector<DeltaBound> ds{arch_delta_bound(c, 0.1, 3, 0).best};
    for (std::uint64_t p : {3, 5}) ds.push_back(nonarch_delta(c, p).to_delta_bound());
    CHECK(verify_delta_soundness(c, Rational(0), ds, 4).all_pass());
}

TEST_CASE("distinct roots") {
    for (int c : {1, 3, -4, 5}) CHECK(verify_distinct_roots(Rational(c), 5).all_pass());
}
