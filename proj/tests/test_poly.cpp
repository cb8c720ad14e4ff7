#include "preper/poly.hpp"

#include "doctest.h"

using namespace preper;

TEST_CASE("iterates and difference polynomials") {
    RatPoly f2 = iterate_map(Rational(1), 2);
    CHECK(to_string(f2) == "z^4 + 2*z^2 + 2");
    CHECK(to_string(difference_poly(Rational(1), 2, 1)) == "z^4 + z^2 + 1");
    CHECK(difference_poly(Rational(1), 3, 0).degree() == 8);
    CHECK_THROWS(difference_poly(Rational(1), 1, 1));
}

TEST_CASE("dynatomic polynomials") {
    CHECK(to_string(dynatomic(Rational(1), 2)) == "z^2 + z + 2");
    CHECK(to_string(generalized_dynatomic(Rational(1), 1, 2)) == "z^2 - z + 2");
    CHECK(to_string(dynatomic(Rational(1), 1)) == "z^2 - z + 1");
    // degree of Phi_n is sum_{d | n} mu(n/d) 2^d
    CHECK(dynatomic(Rational(3), 4).degree() == 12);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
}

TEST_CASE("division and gcd") {
    RatPoly a = difference_poly(Rational(1), 2, 0);
    RatPoly b = dynatomic(Rational(1), 1);
    RatPoly q = exact_div(a, b);
    CHECK(to_string(q) == "z^2 + z + 2");
    CHECK(gcd(a, b) == b);
    CHECK(distinct_root_count(a * a) == 4);
}

TEST_CASE("taylor shift agrees with composition") {
    IntPoly g = clear_denominators(difference_poly(Rational(3), 3, 1));
    IntPoly s = taylor_shift(g, BigInt(-2));
    RatPoly comp = to_rat(g).compose(RatPoly::x() + RatPoly::constant(Rational(-2)));
    CHECK(to_rat(s) == comp);
}
