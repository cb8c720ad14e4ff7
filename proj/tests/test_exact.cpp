#include "preper/exact.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace preper;

TEST_CASE("parse_rational accepts integers and fractions") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-9/10") == Rational(-9, 10));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("p-adic valuations") {
    CHECK(*padic_val(Rational(458325), 5) == 2);
    CHECK(*padic_val(Rational(675), 3) == 3);
    CHECK(*padic_val(Rational(2079), 3) == 3);
    CHECK(*padic_val(Rational(3, 8), 2) == -3);
    CHECK_FALSE(padic_val(Rational(0), 7).has_value());
}

TEST_CASE("primality and factoring") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    auto f = prime_factors(BigInt("1000000016000000063"));  // (1e9 + 7)(1e9 + 9)
    REQUIRE(f.size() == 2);
    CHECK(f[0] == BigInt(1000000007));
    CHECK(f[1] == BigInt(1000000009));
}

TEST_CASE("places") {
    PlaceSet S({3, 2});
    CHECK(S.size() == 3);
    CHECK(S.to_string() == "{inf,2,3}");
    CHECK(S.contains(Place::infinite()));
    CHECK_THROWS_AS(S.erase(Place::infinite()), std::invalid_argument);
    CHECK_THROWS_AS(PlaceSet({4}), std::invalid_argument);
    CHECK(Place::parse("inf").is_infinite());
    CHECK(Place::parse("7").prime() == 7);
}

TEST_CASE("S-units and stripping") {
    PlaceSet S({2});
    CHECK(is_s_unit(Rational(4), S));
    CHECK(is_s_unit(Rational(-1, 8), S));
    CHECK_FALSE(is_s_unit(Rational(6), S));
    CHECK_FALSE(is_s_unit(Rational(0), S));
    CHECK(strip_primes(BigInt(-48), S) == 3);
}

TEST_CASE("product formula on random rationals") {
    std::mt19937_64 rng(20261015);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int k = 0; k < 1000; ++k) {
        long a = num(rng);
        if (a == 0) a = 1;
        Rational x(a, den(rng));
        x.canonicalize();
        double sum = log_abs(x, Place::infinite());
        std::vector<BigInt> ps = prime_factors(BigInt(x.get_num()));
        for (const auto& p : prime_factors(BigInt(x.get_den()))) ps.push_back(p);
        for (const auto& p : ps) sum += log_abs(x, Place::finite(p.get_ui()));
        CHECK(std::fabs(sum) < 1e-12 * std::max(1.0, height(x)));
    }
}

TEST_CASE("naive height") {
    CHECK(height(Rational(2)) == doctest::Approx(std::log(2.0)));
    CHECK(height(Rational(-3, 7)) == doctest::Approx(std::log(7.0)));
    CHECK(height(Rational(0)) == 0.0);
}
