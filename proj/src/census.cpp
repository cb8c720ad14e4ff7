#include "preper/census.hpp"

#include "preper/factor.hpp"
#include "preper/heights.hpp"
#include "preper/parallel.hpp"
#include "preper/roots.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

namespace preper {

namespace {

RatPoly shifted(const IntPoly& g, const Rational& alpha) {
    RatPoly lin = RatPoly::x() + RatPoly::constant(alpha);
    return to_rat(g).compose(lin);
}

// Lower convex hull of (i, v_i), returned as (slope, run) pairs.
std::vector<std::pair<Rational, int>> lower_hull_slopes(const std::vector<std::pair<int, long>>& pts) {
    std::vector<std::pair<int, long>> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // drop b if it lies on or above segment a-q
            long lhs = (b.second - a.second) * static_cast<long>(q.first - a.first);
            long rhs = (q.second - a.second) * static_cast<long>(b.first - a.first);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    std::vector<std::pair<Rational, int>> out;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        int run = hull[i].first - hull[i - 1].first;
        Rational slope(hull[i].second - hull[i - 1].second, run);
        slope.canonicalize();
        out.emplace_back(slope, run);
    }
    return out;
}

std::vector<std::uint64_t> small_prime_factors(const BigInt& n) {
    std::vector<std::uint64_t> out;
    for (const auto& q : prime_factors(n)) {
        if (!q.fits_ulong_p()) throw std::invalid_argument("census: denominator prime too large");
        out.push_back(q.get_ui());
    }
    return out;
}

std::complex<long double> to_cld(const Rational& a) {
    return {static_cast<long double>(a.get_d()), 0.0L};
}

void analyse_orbit(PreperOrbit& o, const Rational& c, const Rational& alpha, const PlaceSet& S) {
    o.degree = o.factor.degree();
    o.s_integral = is_s_integral_factor(o.factor, c, alpha, S);
    auto roots = certified_roots(o.factor);
    // alpha itself is rounded to double: widen by its representation error
    long double a_err = 4 * std::numeric_limits<double>::epsilon() * std::fabs(alpha.get_d());
    o.arch_min_dist = min_root_distance(roots, to_cld(alpha)) - a_err;
    for (auto p : S.finite_primes()) {
        PadicDistance pd;
        pd.p = p;
        pd.min_val = newton_min_valuation(o.factor, alpha, p);
        pd.max_val = newton_max_valuation(o.factor, alpha, p);
        o.padic.push_back(std::move(pd));
    }
}

std::vector<std::pair<int, int>> pair_list(int n_max) {
    std::vector<std::pair<int, int>> pairs;
    for (int n = 1; n <= n_max; ++n)
        for (int m = 0; m < n; ++m) pairs.emplace_back(n, m);
    return pairs;
}

std::vector<IntPoly> factor_pair(const Rational& c, int n, int m) {
    Factorization F = factor_over_rationals(difference_poly(c, static_cast<unsigned>(n), static_cast<unsigned>(m)));
    std::vector<IntPoly> out;
    for (auto& [g, e] : F.factors) out.push_back(g);
    return out;
}

CensusReport assemble(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max,
                      const std::vector<std::pair<int, int>>& pairs, const std::vector<std::vector<IntPoly>>& factored) {
    CensusReport rep;
    rep.c = c;
    rep.alpha = alpha;
    rep.S = S;
    rep.n_max = n_max;
    std::map<std::string, std::size_t> seen;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto& idx = rep.pair_factors[pairs[k]];
        for (const auto& g : factored[k]) {
            std::string key = to_string(g);
            auto it = seen.find(key);
            if (it == seen.end()) {
                PreperOrbit o;
                o.n = pairs[k].first;
                o.m = pairs[k].second;
                o.factor = g;
                it = seen.emplace(key, rep.orbits.size()).first;
                rep.orbits.push_back(std::move(o));
            }
            idx.push_back(it->second);
        }
    }
    return rep;
}

void finish(CensusReport& rep) {
    for (const auto& o : rep.orbits)
        if (o.s_integral) rep.s_integral_count += o.degree;
    rep.sunit_values = sunit_differences(rep.c, rep.alpha, rep.S, rep.n_max);
    rep.theorem15_lhs = static_cast<long>(rep.sunit_values.size());
    double P = static_cast<double>(rep.s_integral_count);
    rep.theorem15_rhs = ((2 * P + 1) * (2 * P + 1) - 1) / 8;
}

void check_n_max(int n_max) {
    if (n_max < 1 || n_max > 6) throw std::invalid_argument("census: n_max must lie in [1, 6]");
}

}  // namespace

std::vector<std::pair<Rational, int>> newton_root_valuations(const IntPoly& g, const Rational& alpha, std::uint64_t p) {
    if (g.degree() < 1) throw std::invalid_argument("newton_root_valuations: g must be nonconstant");
    RatPoly h = shifted(g, alpha);
    std::vector<std::pair<int, long>> pts;
    for (int i = 0; i <= h.degree(); ++i) {
        auto v = padic_val(h.coeff(i), p);
        if (v) pts.emplace_back(i, *v);
    }
    std::vector<std::pair<Rational, int>> out;
    for (auto& [slope, run] : lower_hull_slopes(pts)) out.emplace_back(Rational(-slope), run);
    return out;
}

std::optional<Rational> newton_min_valuation(const IntPoly& g, const Rational& alpha, std::uint64_t p) {
    auto vals = newton_root_valuations(g, alpha, p);
    if (vals.empty()) return std::nullopt;
    Rational best = vals.front().first;
    for (const auto& [v, k] : vals) best = std::min(best, v);
    return best;
}

std::optional<Rational> newton_max_valuation(const IntPoly& g, const Rational& alpha, std::uint64_t p) {
    if (shifted(g, alpha).coeff(0) == 0) return std::nullopt;
    auto vals = newton_root_valuations(g, alpha, p);
    Rational best = vals.front().first;
    for (const auto& [v, k] : vals) best = std::max(best, v);
    return best;
}

bool is_s_integral_factor(const IntPoly& g, const Rational& c, const Rational& alpha, const PlaceSet& S) {
    Rational h0 = to_rat(g)(alpha);
    if (h0 == 0) return false;
    BigInt rest = strip_primes(BigInt(h0.get_num()), S);
    if (is_integer(c) && is_integer(alpha) && g.lead() == 1) return rest == 1;

    std::vector<std::uint64_t> special = small_prime_factors(BigInt(alpha.get_den()));
    for (auto p : small_prime_factors(BigInt(c.get_den()))) special.push_back(p);
    std::sort(special.begin(), special.end());
    special.erase(std::unique(special.begin(), special.end()), special.end());
    for (auto p : special) {
        BigInt pp = p;
        while (rest % pp == 0) rest /= pp;
    }
    if (rest != 1) return false;
    for (auto p : special) {
        if (S.contains_prime(p)) continue;
        auto v = newton_max_valuation(g, alpha, p);
        if (!v || *v > 0) return false;
    }
    return true;
}

CensusReport enumerate_preperiodic_serial(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max) {
    check_n_max(n_max);
    auto pairs = pair_list(n_max);
    std::vector<std::vector<IntPoly>> factored;
    for (auto [n, m] : pairs) factored.push_back(factor_pair(c, n, m));
    CensusReport rep = assemble(c, alpha, S, n_max, pairs, factored);
    for (auto& o : rep.orbits) analyse_orbit(o, c, alpha, S);
    finish(rep);
    return rep;
}

CensusReport enumerate_preperiodic(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max) {
    check_n_max(n_max);
    auto pairs = pair_list(n_max);
    const long np = static_cast<long>(pairs.size());
    std::vector<std::vector<IntPoly>> factored(pairs.size());
    std::vector<std::exception_ptr> errs(pairs.size());
    // largest pairs first for load balance
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long k = np - 1; k >= 0; --k) {
        auto i = static_cast<std::size_t>(k);
        try {
            factored[i] = factor_pair(c, pairs[i].first, pairs[i].second);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);

    CensusReport rep = assemble(c, alpha, S, n_max, pairs, factored);
    const long no = static_cast<long>(rep.orbits.size());
    std::vector<std::exception_ptr> oerrs(rep.orbits.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long k = 0; k < no; ++k) {
        auto i = static_cast<std::size_t>(k);
        try {
            analyse_orbit(rep.orbits[i], c, alpha, S);
        } catch (...) {
            oerrs[i] = std::current_exception();
        }
    }
    for (auto& e : oerrs)
        if (e) std::rethrow_exception(e);
    finish(rep);
    return rep;
}

std::vector<SUnitValue> sunit_differences(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max) {
    if (n_max < 1) return {};
    std::vector<Rational> orbit{alpha};
    for (int k = 1; k <= n_max; ++k) orbit.push_back(orbit.back() * orbit.back() + c);
    std::map<Rational, std::vector<std::pair<int, int>>> found;
    for (int n = 1; n <= n_max; ++n)
        for (int m = 0; m < n; ++m) {
            Rational d = orbit[static_cast<std::size_t>(n)] - orbit[static_cast<std::size_t>(m)];
            if (d != 0 && is_s_unit(d, S)) found[d].emplace_back(n, m);
        }
    std::vector<SUnitValue> out;
    for (auto& [v, w] : found) out.push_back({v, w});
    return out;
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& l) { return l.pass; });
}

VerifyReport verify_sunit_theorem(const CensusReport& census) {
    for (auto p : bad_primes(census.c))
        if (!census.S.contains_prime(p))
            throw std::invalid_argument("verify_sunit_theorem: S must contain the bad prime " + std::to_string(p));
    VerifyReport rep;
    CheckLine containment{"sunit-implies-s-integral", true, ""};
    long witnesses = 0;
    for (const auto& sv : census.sunit_values) {
        for (auto nm : sv.witnesses) {
            ++witnesses;
            auto it = census.pair_factors.find(nm);
            if (it == census.pair_factors.end()) continue;
            for (auto idx : it->second) {
                if (!census.orbits[idx].s_integral) {
                    containment.pass = false;
                    containment.detail += "f^" + std::to_string(nm.first) + " - f^" + std::to_string(nm.second) +
                                          " = " + to_string(sv.value) + " is an S-unit but factor " +
                                          to_string(census.orbits[idx].factor) + " is not S-integral; ";
                }
            }
        }
    }
    if (containment.pass) containment.detail = std::to_string(witnesses) + " S-unit witnesses checked";
    rep.checks.push_back(containment);

    std::ostringstream os;
    os << "|A n O_S*| = " << census.theorem15_lhs << " <= " << census.theorem15_rhs << " (census |P| = "
       << census.s_integral_count << ")";
    rep.checks.push_back({"sunit-count-bound", static_cast<double>(census.theorem15_lhs) <= census.theorem15_rhs, os.str()});
    return rep;
}

VerifyReport verify_sunit_theorem(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max) {
    return verify_sunit_theorem(enumerate_preperiodic(c, alpha, S, n_max));
}

VerifyReport verify_delta_soundness(const Rational& c, const Rational& alpha, const std::vector<DeltaBound>& deltas,
                                    int n_max, double tol) {
    PlaceSet S;
    for (const auto& d : deltas) {
        if (!d.certified) throw std::invalid_argument("verify_delta_soundness: uncertified delta at " + d.place.to_string());
        S.insert(d.place);
    }
    CensusReport census = enumerate_preperiodic(c, alpha, S, n_max);
    VerifyReport rep;
    for (const auto& d : deltas) {
        std::ostringstream os;
        os.precision(12);
        CheckLine line;
        line.name = "delta@" + d.place.to_string() + " " + to_string(d.method);
        if (d.place.is_infinite()) {
            long double measured = std::numeric_limits<long double>::infinity();
            for (const auto& o : census.orbits) measured = std::min(measured, o.arch_min_dist);
            double lower = d.delta_lower();
            line.pass = measured >= static_cast<long double>(lower) - tol;
            os << "min |beta - alpha| >= " << static_cast<double>(measured) << " vs delta >= " << lower;
        } else {
            const std::uint64_t p = d.place.prime();
            Rational t(d.val_num, d.val_den);
            t.canonicalize();
            std::optional<Rational> worst = Rational(-1000000);
            for (const auto& o : census.orbits) {
                auto v = newton_max_valuation(o.factor, alpha, p);
                if (!v) {
                    worst = std::nullopt;
                    break;
                }
                worst = std::max(*worst, *v);
            }
            line.pass = worst && *worst <= t;
            os << "max v_" << p << "(beta - alpha) = " << (worst ? to_string(*worst) : std::string("inf"))
               << " vs delta = " << p << "^-(" << to_string(t) << ")";
        }
        line.detail = os.str();
        rep.checks.push_back(line);
    }
    return rep;
}

VerifyReport verify_distinct_roots(const Rational& c, int n_max) {
    VerifyReport rep;
    for (int n = 1; n <= n_max; ++n)
        for (int m = 0; m < n; ++m) {
            int z = distinct_root_count(difference_poly(c, static_cast<unsigned>(n), static_cast<unsigned>(m)));
            long lower = std::max(1, n - m - 2) * std::max(1L, m >= 1 ? (1L << (m - 1)) : 1L);
            bool ok = z >= lower && z >= n;
            rep.checks.push_back({"distinct-roots(" + std::to_string(n) + "," + std::to_string(m) + ")", ok,
                                  "z = " + std::to_string(z) + ", lower bounds " + std::to_string(lower) + " and " +
                                      std::to_string(n)});
        }
    return rep;
}

}  // namespace preper
