#include "preper/heights.hpp"

#include "doctest.h"

#include <cmath>

using namespace preper;

namespace {

// Escape-rate oracle: d^{-k} h(f^k(alpha)) with exact rationals.
double naive_limit(const Rational& alpha, const Rational& c, int k) {
    Rational z = alpha;
    for (int i = 0; i < k; ++i) z = z * z + c;
    return height(z) / std::ldexp(1.0, k);
}

std::vector<GridPoint> grid() {
    std::vector<GridPoint> pts;
    const char* cs[] = {"1", "3", "-4", "1/2", "-3/7"};
    const char* as[] = {"0", "1", "-2", "5/3", "1/9", "-7/4", "11", "2/5", "-1/3", "13/8"};
    for (auto c : cs)
        for (auto a : as) pts.push_back({parse_rational(c), parse_rational(a)});
    return pts;
}

}  // namespace

TEST_CASE("preperiodic points have zero height") {
    CHECK(is_preperiodic(Rational(0), Rational(-1)));
    CHECK(is_preperiodic(Rational(0), Rational(-2)));
    CHECK(is_preperiodic(Rational(1, 2), Rational(-3, 4)));
    CHECK_FALSE(is_preperiodic(Rational(0), Rational(1)));
    auto h = canonical_height(Rational(0), Rational(-2));
    CHECK(h.value <= h.error + 1e-12);
}

TEST_CASE("canonical height matches the naive limit") {
    for (const auto& pt : grid()) {
        auto h = canonical_height(pt.alpha, pt.c, 1e-12);
        // naive error after k steps is at most (h(c) + log 2) / 2^k
        double naive = naive_limit(pt.alpha, pt.c, 9);
        CAPTURE(to_string(pt.c));
        CAPTURE(to_string(pt.alpha));
        CHECK(std::fabs(h.value - naive) <= (height(pt.c) + std::log(2.0)) / 512.0 + h.error + 1e-12);
    }
}

TEST_CASE("doubling and bounded difference") {
    for (const auto& pt : grid()) {
        auto h = canonical_height(pt.alpha, pt.c, 1e-12);
        auto h2 = canonical_height(pt.alpha * pt.alpha + pt.c, pt.c, 1e-12);
        CHECK(std::fabs(h2.value - 2 * h.value) <= 3e-12 + 2 * h.error + h2.error);
        CHECK(std::fabs(h.value - height(pt.alpha)) <= height(pt.c) + std::log(2.0) + h.error);
    }
}

TEST_CASE("local heights sum to the global height") {
    auto h = canonical_height(Rational(5, 3), Rational(-3, 7), 1e-12);
    double sum = 0;
    for (const auto& l : h.locals) sum += l.value;
    CHECK(sum == doctest::Approx(h.value).epsilon(1e-14));
    CHECK(h.locals.front().place.is_infinite());
}

TEST_CASE("height of the critical point for c = 1") {
    CHECK(canonical_height(Rational(0), Rational(1)).value >= 0.25 * std::log(2.0) - 1e-9);
}

TEST_CASE("constants for integer c") {
    for (int c : {1, 3, -4, 17}) {
        auto hc = height_constants(Rational(c));
        CHECK(hc.C1 == 4);
        CHECK(hc.C2 == 0);
        CHECK(hc.C0 == 0.25);
    }
    CHECK(bad_primes(Rational(5, 12)) == std::vector<std::uint64_t>{2, 3});
    CHECK(bad_primes(Rational(7)).empty());
}

TEST_CASE("counting rationals") {
    // |{a/b : max(|a|, |b|) <= 3}| = {0, +-1, +-2, +-3, +-1/2, +-1/3, +-2/3, +-3/2}
    CHECK(count_rationals_up_to(3) == 15);
    CHECK(count_rationals_up_to(1) == 3);
}

TEST_CASE("parallel grid agrees with serial") {
    auto pts = grid();
    auto a = canonical_height_grid_serial(pts, 1e-12);
    auto b = canonical_height_grid(pts, 1e-12);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].value == b[i].value);
}
