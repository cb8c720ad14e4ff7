#include "preper/archimedean.hpp"
#include "preper/boundengine.hpp"
#include "preper/census.hpp"
#include "preper/heights.hpp"
#include "preper/nonarchimedean.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace preper;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %d %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
    std::fflush(stdout);
}

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<GridPoint> height_grid() {
    std::vector<GridPoint> pts;
    const char* cs[] = {"1", "3", "-4", "1/2", "-3/7"};
    const char* as[] = {"0", "1", "-2", "5/3", "1/9", "-7/4", "11", "2/5", "-1/3", "13/8"};
    for (auto c : cs)
        for (auto a : as) pts.push_back({parse_rational(c), parse_rational(a)});
    return pts;
}

Outcome integer_headline() {
    auto t0 = Clock::now();
    auto d = int_bound_detail(PlaceSet({2}));
    double secs = elapsed(t0);
    const BigInt target("451287434");
    double pre = std::stod(d.value);
    bool exact = d.bound == target;
    bool near = std::fabs(pre - 451287434.0) <= 1.0;
    std::ostringstream os;
    os << "bound=" << to_string(d.bound) << " pre_ceiling=" << d.value << " u=" << d.u << " expected=451287434";
    return {exact && near && secs < 1.0, os.str()};
}

Outcome constant_fixtures() {
    bool ok = r_p(2) == 3 && r_p(3) == 17 && r_p(5) == 99;
    ok = ok && hyperbolic_constants(1, 4, 0).C3() == 1 && hyperbolic_constants(3, 4, 0).C3() == std::ldexp(1.0, 27);
    for (int c : {1, 3, -4, 5}) {
        auto hc = height_constants(Rational(c));
        ok = ok && hc.C1 == 4 && hc.C2 == 0 && hc.C0 == 0.25;
    }
    std::ostringstream os;
    os << "r=(" << r_p(2) << "," << r_p(3) << "," << r_p(5) << ") C3(3)=" << hyperbolic_constants(3, 4, 0).C3();
    return {ok, os.str()};
}

Outcome padic_fixtures() {
    auto t0 = Clock::now();
    auto d5 = nonarch_delta(Rational(1), 5);
    double s5 = elapsed(t0);
    t0 = Clock::now();
    auto d3 = nonarch_delta(Rational(1), 3);
    double s3 = elapsed(t0);
    bool ok = d5.kind == DiskCase::Attracting && Rational(d5.val_num, d5.val_den) == 2;
    ok = ok && d3.kind == DiskCase::Indifferent && Rational(d3.val_num, d3.val_den) == Rational(3, 2);
    ok = ok && *padic_val(Rational(2079), 3) == 3 && s5 < 1 && s3 < 1;
    std::ostringstream os;
    os << "v5=" << d5.val_num << "/" << d5.val_den << " v3=" << d3.val_num << "/" << d3.val_den;
    return {ok, os.str()};
}

Outcome delta_soundness() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream os;
    for (int cv : {1, 3, 5}) {
        Rational c(cv);
        std::vector<DeltaBound> ds = arch_delta_bound(c, 0.1, 3, 0).bounds;
        for (std::uint64_t p : {2, 3, 5}) ds.push_back(nonarch_delta(c, p).to_delta_bound());
        auto rep = verify_delta_soundness(c, Rational(0), ds, 5, 1e-8);
        if (!rep.all_pass()) {
            ok = false;
            for (const auto& l : rep.checks)
                if (!l.pass) os << "c=" << cv << " " << l.name << ": " << l.detail << "; ";
        }
    }
    double secs = elapsed(t0);
    os << "checked c in {1,3,5}";
    return {ok && secs < 120, os.str()};
}

Outcome height_properties() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000000000L, 1000000000L), den(1, 1000000000L);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
        long a = num(rng);
        if (a == 0) a = 1;
        Rational x(a, den(rng));
        x.canonicalize();
        double sum = log_abs(x, Place::infinite());
        std::set<BigInt> ps;
        for (const auto& p : prime_factors(BigInt(x.get_num()))) ps.insert(p);
        for (const auto& p : prime_factors(BigInt(x.get_den()))) ps.insert(p);
        for (const auto& p : ps) sum += log_abs(x, Place::finite(p.get_ui()));
        worst = std::max(worst, std::fabs(sum));
    }
    bool ok = worst <= 1e-12;
    const double tol = 1e-12;
    double worst_doubling = 0;
    for (const auto& pt : height_grid()) {
        auto h = canonical_height(pt.alpha, pt.c, tol);
        auto h2 = canonical_height(pt.alpha * pt.alpha + pt.c, pt.c, tol);
        worst_doubling = std::max(worst_doubling, std::fabs(h2.value - 2 * h.value));
        ok = ok && std::fabs(h2.value - 2 * h.value) <= 3 * tol;
        ok = ok && std::fabs(h.value - height(pt.alpha)) <= height(pt.c) + std::log(2.0) + h.error;
    }
    double h0 = canonical_height(Rational(0), Rational(1)).value;
    ok = ok && h0 >= 0.25 * std::log(2.0) - 1e-9;
    std::ostringstream os;
    os << "product_formula_err=" << worst << " doubling_err=" << worst_doubling << " hhat_f1(0)=" << h0;
    return {ok, os.str()};
}

Outcome distinct_roots() {
    bool ok = true;
    for (int c : {1, 3, -4, 5}) ok = ok && verify_distinct_roots(Rational(c), 5).all_pass();
    return {ok, "c in {1,3,-4,5}, 0 <= m < n <= 5"};
}

Outcome sunit_suite() {
    bool ok = true;
    std::ostringstream os;
    for (int c : {1, 3})
        for (const auto& S : {PlaceSet({2}), PlaceSet({2, 3})}) {
            auto rep = enumerate_preperiodic(Rational(c), Rational(0), S, 5);
            auto v = verify_sunit_theorem(rep);
            if (!v.all_pass()) {
                ok = false;
                os << "c=" << c << " S=" << S.to_string() << " failed; ";
            }
        }
    auto rep = enumerate_preperiodic(Rational(1), Rational(0), PlaceSet({2}), 5);
    std::set<std::string> values;
    for (const auto& s : rep.sunit_values) values.insert(to_string(s.value));
    ok = ok && values == std::set<std::string>{"1", "2", "4"};
    os << "c=1 S={inf,2} values={";
    for (const auto& v : values) os << v << (v == *values.rbegin() ? "" : ",");
    os << "}";
    return {ok, os.str()};
}

Outcome multiplier_oracle() {
    double worst = 0;
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
        double c = -1.2 + 0.4 * (i + 0.5) / 20;
        auto cyc = find_attracting_cycle({c, 0}, 3);
        if (!cyc || cyc->period != 2) return {false, "no period-2 cycle at c=" + std::to_string(c)};
        worst = std::max(worst, std::abs(cyc->multiplier - std::complex<double>(4 * (c + 1), 0)));
    }
    for (int i = 0; i < 20; ++i) {
        double c = 0.24 * (i + 0.5) / 20;
        auto cyc = find_attracting_cycle({c, 0}, 3);
        if (!cyc || cyc->period != 1) return {false, "no fixed point at c=" + std::to_string(c)};
        worst = std::max(worst, std::abs(cyc->multiplier - std::complex<double>(1 - std::sqrt(1 - 4 * c), 0)));
    }
    ok = worst <= 1e-9;
    return {ok, "max_err=" + std::to_string(worst)};
}

Outcome inequality_facts() {
    bool ok = g_radius(0.7) > 1.0 / 60 && g_radius(0.1) / 0.1 > 1.0 / 3 && g_radius(0.7) / 0.09 > 1.0 / 5;
    for (int i = 1; i <= 100; ++i) {
        double z = -std::exp(-1.0) * i / 100.0;
        double T = lambert_threshold(z);
        ok = ok && std::log(T) / T <= -z;
    }
    return {ok, "g(0.7)=" + std::to_string(g_radius(0.7))};
}

}  // namespace

int main() {
    run(1, "integer headline int_bound({inf,2})", integer_headline);
    run(2, "constant fixtures", constant_fixtures);
    run(3, "exact p-adic fixtures for c = 1", padic_fixtures);
    run(4, "delta soundness suite", delta_soundness);
    run(5, "height properties", height_properties);
    run(6, "distinct-root bound", distinct_roots);
    run(7, "S-unit census suite", sunit_suite);
    run(8, "multiplier oracle", multiplier_oracle);
    run(9, "inequality facts and lambert threshold", inequality_facts);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
