#include "preper/heights.hpp"

#include "preper/parallel.hpp"
#include "preper/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <set>
#include <unordered_map>

namespace preper {

std::string to_string(HeightMethod m) {
    switch (m) {
        case HeightMethod::GoodReduction: return "GoodReduction";
        case HeightMethod::BadReduction: return "BadReduction";
        case HeightMethod::ArchEscapeRate: return "ArchEscapeRate";
    }
    return "?";
}

std::vector<std::uint64_t> bad_primes(const Rational& c) {
    std::vector<std::uint64_t> out;
    for (const auto& p : prime_factors(c.get_den())) {
        if (!p.fits_ulong_p()) throw std::invalid_argument("bad prime exceeds 64 bits");
        out.push_back(p.get_ui());
    }
    return out;
}

LocalHeight local_height_good(const Rational& alpha, const Rational& c, std::uint64_t p) {
    if (c != 0 && *padic_val(c, p) < 0)
        throw std::invalid_argument("local_height_good: bad reduction at p = " + std::to_string(p));
    LocalHeight out{Place::finite(p), 0.0, 0.0, HeightMethod::GoodReduction};
    if (alpha != 0) {
        long v = *padic_val(alpha, p);
        if (v < 0) out.value = static_cast<double>(-v) * std::log(static_cast<double>(p));
    }
    return out;
}

LocalHeight local_height_bad(const Rational& alpha, const Rational& c, std::uint64_t p) {
    if (c == 0 || *padic_val(c, p) >= 0)
        throw std::invalid_argument("local_height_bad: good reduction at p = " + std::to_string(p));
    long vc = *padic_val(c, p);
    // compare 2*v(alpha) with v(c) to avoid half-integers
    double twice_neg = static_cast<double>(-vc);
    if (alpha != 0) {
        long va = *padic_val(alpha, p);
        if (2 * va == vc)
            throw std::domain_error("local_height_bad: |alpha|_p = |c|_p^{1/2} is the excluded boundary case");
        twice_neg = std::max(twice_neg, static_cast<double>(-2 * va));
    }
    return {Place::finite(p), 0.5 * twice_neg * std::log(static_cast<double>(p)), 0.0, HeightMethod::BadReduction};
}

LocalHeight local_height_arch(const Rational& alpha, const Rational& c, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("local_height_arch: tol must be positive");
    constexpr double u = 0x1p-53;
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double cd = c.get_d();
    if (!std::isfinite(cd)) throw std::invalid_argument("local_height_arch: |c| too large for double iteration");
    const double cabs = std::fabs(cd);
    const double ec = cabs * 2 * u;
    const double log_c = c == 0 ? -inf : log_abs(c, Place::infinite());
    const double tail0 = rnd::up(2 * rnd::log2_up() + std::max(0.0, rnd::up(log_c)));

    bool log_mode = false;
    double z = 0, e = 0, Llo = 0, Lhi = 0;
    double log_alpha = alpha == 0 ? -inf : log_abs(alpha, Place::infinite());
    if (log_alpha > 230.0) {
        log_mode = true;
        Llo = rnd::down(rnd::down(log_alpha) - 1e-15 * log_alpha);
        Lhi = rnd::up(rnd::up(log_alpha) + 1e-15 * log_alpha);
    } else {
        z = alpha.get_d();
        e = std::fabs(z) * 2 * u;
    }

    double lo = 0, hi = inf, scale = 1;
    for (int n = 0; n <= 1000; ++n, scale *= 0.5) {
        double a_lo, a_hi;
        if (log_mode) {
            a_lo = std::max(0.0, Llo);
            a_hi = std::max(0.0, Lhi);
        } else {
            double mlo = std::fabs(z) - e, mhi = std::fabs(z) + e;
            a_lo = mlo > 1 ? std::max(0.0, rnd::log_down(mlo)) : 0.0;
            a_hi = mhi > 1 ? rnd::log_up(mhi) : 0.0;
        }
        double tail = rnd::up(tail0 * scale);
        lo = std::max(lo, rnd::down(rnd::down(a_lo * scale) - tail));
        hi = std::min(hi, rnd::up(rnd::up(a_hi * scale) + tail));
        if (hi - lo <= 2 * tol) break;

        if (!log_mode) {
            double mlo = std::fabs(z) - e;
            if (mlo > 1e100 && 2 * std::log(mlo) > log_c + 60) {
                log_mode = true;
                Llo = rnd::log_down(mlo);
                Lhi = rnd::log_up(std::fabs(z) + e);
            } else {
                double az = std::fabs(z);
                double zn = z * z + cd;
                e = rnd::up(2 * az * e + e * e + ec + 2 * u * (z * z + cabs) + 0x1p-1074);
                z = zn;
                if (!std::isfinite(e) || !std::isfinite(z)) break;
                continue;
            }
        }
        // |f(z)| = |z|^2 |1 + c/z^2| with |c/z^2| <= w << 1
        double w = c == 0 ? 0.0 : rnd::up(std::exp(rnd::up(log_c - 2 * Llo)));
        Llo = rnd::down(2 * Llo + rnd::down(std::log1p(-w)));
        Lhi = rnd::up(2 * Lhi + rnd::up(std::log1p(w)));
    }
    lo = std::max(lo, 0.0);
    return {Place::infinite(), 0.5 * (lo + hi), rnd::up(0.5 * (hi - lo)), HeightMethod::ArchEscapeRate};
}

CanonicalHeight canonical_height(const Rational& alpha, const Rational& c, double tol) {
    CanonicalHeight out;
    LocalHeight arch = local_height_arch(alpha, c, tol);
    out.locals.push_back(arch);

    std::set<BigInt> support;
    for (const auto& p : prime_factors(c.get_den())) support.insert(p);
    for (const auto& p : prime_factors(alpha.get_den())) support.insert(p);
    for (const auto& pb : support) {
        std::uint64_t p = pb.get_ui();
        if (*padic_val(c, p) >= 0) {
            out.locals.push_back(local_height_good(alpha, c, p));
            continue;
        }
        long vc = *padic_val(c, p);
        // on the circle |z|_p = |c|_p^{1/2}: lambda(z) = lambda(f(z))/2
        Rational beta = alpha;
        int k = 0;
        std::set<Rational> seen;
        bool cycled = false;
        while (beta != 0 && 2 * *padic_val(beta, p) == vc) {
            if (!seen.insert(beta).second) {
                cycled = true;
                break;
            }
            if (++k > 12) throw std::runtime_error("canonical_height: orbit stays on the boundary circle at p = " + std::to_string(p));
            beta = beta * beta + c;
        }
        LocalHeight lh{Place::finite(p), 0.0, 0.0, HeightMethod::BadReduction};
        if (!cycled) {
            lh = local_height_bad(beta, c, p);
            lh.value = std::ldexp(lh.value, -k);
        }
        out.locals.push_back(lh);
    }
    for (const auto& lh : out.locals) out.value += lh.value;
    out.error = arch.error;
    return out;
}

namespace {

// 2^{-k}(h(f^k(alpha)) - h(c) - log 2) over the exact orbit; nullopt if the orbit repeats.
struct OrbitScan {
    bool preperiodic = false;
    double floor = 0;
};

OrbitScan scan_orbit(const Rational& alpha, const Rational& c) {
    const double B = height(c) + rnd::kLog2 + 1e-9;
    std::set<Rational> seen;
    Rational beta = alpha;
    for (int k = 0; k < 100000; ++k) {
        double h = height(beta);
        if (h > B) {
            double slack = rnd::down(h - height(c) - rnd::log2_up() - 1e-12 * (1 + h));
            return {false, std::max(0.0, rnd::down(std::ldexp(slack, -k)))};
        }
        if (!seen.insert(beta).second) return {true, 0};
        beta = beta * beta + c;
    }
    throw std::runtime_error("scan_orbit: undecided after 100000 steps");
}

}  // namespace

bool is_preperiodic(const Rational& alpha, const Rational& c) { return scan_orbit(alpha, c).preperiodic; }

double direct_height_floor(const Rational& alpha, const Rational& c) {
    OrbitScan scan = scan_orbit(alpha, c);
    if (scan.preperiodic)
        throw CertificationFailure("direct_height_floor: alpha = " + to_string(alpha) + " is preperiodic for c = " +
                                   to_string(c));
    double best = scan.floor;
    for (double tol = 1e-6; tol >= 1e-14; tol *= 0.01) {
        CanonicalHeight h = canonical_height(alpha, c, tol);
        double lower = rnd::down(h.value - h.error);
        // finite parts are exact sums of rational multiples of log p
        lower = rnd::down(lower - 1e-15 * static_cast<double>(h.locals.size()) * (1 + std::fabs(h.value)));
        best = std::max(best, lower);
        if (lower > 0 && h.error < 1e-3 * lower) break;
    }
    if (!(best > 0)) throw CertificationFailure("direct_height_floor: could not certify a positive lower bound");
    return best;
}

HeightConstants height_constants(const Rational& c) {
    HeightConstants hc;
    hc.r = 1;
    int s = 0;
    for (auto p : bad_primes(c))
        if (*padic_val(c, p) % 2 == 0) ++s;
    hc.s = s;
    long five = 1;
    for (int k = 0; k < hc.r + s + 1; ++k) five *= 5;
    hc.N = (five - 1) / 2;
    if (is_integer(c)) {
        hc.C1 = 4;
        hc.log_C1 = std::log(4.0);
        hc.C2 = 0;
        hc.C0 = 0.25;
        return hc;
    }
    hc.log_C1 = rnd::up(static_cast<double>(hc.N + 2) * rnd::log2_up());
    hc.C1 = std::ldexp(1.0, static_cast<int>(std::min<long>(hc.N + 2, 5000)));
    hc.C2 = rnd::up(12 * rnd::log2_up());
    hc.C0 = direct_height_floor(Rational(0), c);
    return hc;
}

BigInt count_rationals_up_to(std::uint64_t X) {
    if (X == 0) return 0;
    // Phi(n) = sum_{k<=n} phi(k) via Phi(n) = n(n+1)/2 - sum_{d>=2} Phi(n/d)
    std::uint64_t L = std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(std::pow(static_cast<double>(X), 2.0 / 3.0)));
    L = std::min(L, X);
    std::vector<std::uint64_t> phi(L + 1);
    for (std::uint64_t i = 0; i <= L; ++i) phi[i] = i;
    for (std::uint64_t i = 2; i <= L; ++i)
        if (phi[i] == i)
            for (std::uint64_t j = i; j <= L; j += i) phi[j] -= phi[j] / i;
    std::vector<std::uint64_t> prefix(L + 1, 0);
    for (std::uint64_t i = 1; i <= L; ++i) prefix[i] = prefix[i - 1] + phi[i];
    std::unordered_map<std::uint64_t, std::uint64_t> memo;
    auto Phi = [&](auto&& self, std::uint64_t n) -> std::uint64_t {
        if (n <= L) return prefix[n];
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        std::uint64_t r = n * (n + 1) / 2;
        for (std::uint64_t d = 2; d <= n;) {
            std::uint64_t q = n / d, d2 = n / q;
            r -= (d2 - d + 1) * self(self, q);
            d = d2 + 1;
        }
        memo[n] = r;
        return r;
    };
    BigInt total(static_cast<unsigned long>(Phi(Phi, X)));
    return 1 + 2 * (2 * total - 1);
}

double generic_c0_neg_log2(long N) {
    static const double nq = count_rationals_up_to(1ULL << 25).get_d();
    double second = nq - std::log2(2 * rnd::kLog2);
    return std::max(static_cast<double>(N + 3), second);
}

std::vector<CanonicalHeight> canonical_height_grid_serial(const std::vector<GridPoint>& pts, double tol) {
    std::vector<CanonicalHeight> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = canonical_height(pts[i].alpha, pts[i].c, tol);
    return out;
}

std::vector<CanonicalHeight> canonical_height_grid(const std::vector<GridPoint>& pts, double tol) {
    std::vector<CanonicalHeight> out(pts.size());
    std::vector<std::exception_ptr> errors(pts.size());
    const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(i);
        try {
            out[k] = canonical_height(pts[k].alpha, pts[k].c, tol);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace preper
