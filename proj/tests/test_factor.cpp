#include "preper/factor.hpp"

#include "doctest.h"

using namespace preper;

namespace {

std::vector<std::string> factor_strings(const RatPoly& f) {
    std::vector<std::string> out;
    for (const auto& [g, e] : factor_over_rationals(f).factors) out.push_back(to_string(g));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("small fixtures") {
    CHECK(factor_strings(difference_poly(Rational(1), 2, 0)) ==
          std::vector<std::string>{"z^2 + z + 2", "z^2 - z + 1"});
    CHECK(factor_strings(iterate_map(Rational(1), 2)).size() == 1);
}

TEST_CASE("factorizations expand back to the input") {
    for (int c : {1, 3, 5, -4})
        for (unsigned n = 1; n <= 5; ++n)
            for (unsigned m = 0; m < n; ++m) {
                RatPoly F = difference_poly(Rational(c), n, m);
                Factorization fac = factor_over_rationals(F);
                CAPTURE(c);
                CAPTURE(n);
                CAPTURE(m);
                CHECK(fac.expand() == F);
            }
}

TEST_CASE("factors are irreducible modulo a consistency check") {
    // every factor of f^n - z for c = 3 divides exactly one dynatomic polynomial
    for (unsigned n = 1; n <= 4; ++n) {
        for (const auto& [g, e] : factor_over_rationals(difference_poly(Rational(3), n, 0)).factors) {
            int hits = 0;
            for (unsigned d = 1; d <= n; ++d)
                if (n % d == 0 && divides(g, clear_denominators(dynatomic(Rational(3), d)))) ++hits;
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("repeated factors and content") {
    IntPoly x2 = IntPoly::monomial(BigInt(1), 2);
    IntPoly one = IntPoly::constant(BigInt(1));
    IntPoly g = (x2 + one) * (x2 + one) * IntPoly::constant(BigInt(6));
    Factorization fac = factor_over_integers(g);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].second == 2);
    CHECK(fac.unit == 6);
    CHECK(fac.expand() == to_rat(g));
}
