#include "preper/nonarchimedean.hpp"

#include "preper/heights.hpp"
#include "preper/parallel.hpp"
#include "preper/rounding.hpp"

#include <bit>
#include <cmath>
#include <exception>
#include <numeric>
#include <unordered_map>

namespace preper {

std::string to_string(DiskCase k) { return k == DiskCase::Attracting ? "Attracting" : "Indifferent"; }

double NonArchDelta::neg_log() const {
    return rnd::up(static_cast<double>(val_num) / static_cast<double>(val_den) * rnd::log_up(static_cast<double>(p)));
}

DeltaBound NonArchDelta::to_delta_bound() const {
    DeltaBound d;
    d.place = Place::finite(p);
    d.neg_log_delta_upper = neg_log();
    d.method = kind == DiskCase::Attracting ? DeltaMethod::Attracting : DeltaMethod::Indifferent;
    d.certified = true;
    d.val_num = val_num;
    d.val_den = val_den;
    return d;
}

double LocalConstants::A() const { return std::exp(log_A); }
double LocalConstants::B() const { return std::exp(log_B); }

namespace {

void require_good(const Rational& c, std::uint64_t p, const char* who) {
    if (!is_prime_u64(p)) throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
    auto v = padic_val(c, p);
    if (v && *v < 0)
        throw std::invalid_argument(std::string(who) + ": c = " + to_string(c) + " has bad reduction at p = " +
                                    std::to_string(p));
}

void require_wandering_zero(const Rational& c, const char* who) {
    if (is_preperiodic(Rational(0), c))
        throw std::invalid_argument(std::string(who) + ": 0 is preperiodic for c = " + to_string(c));
}

// z^2 + c over Z/p^M
struct ModMap {
    BigInt mod;
    BigInt c;

    ModMap(const Rational& cq, std::uint64_t p, long M) {
        mpz_ui_pow_ui(mod.get_mpz_t(), p, static_cast<unsigned long>(M));
        BigInt inv;
        BigInt den = cq.get_den();
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
        c = BigInt(cq.get_num()) * inv;
        c %= mod;
        if (c < 0) c += mod;
    }

    BigInt step(const BigInt& z) const {
        BigInt w = z * z + c;
        mpz_mod(w.get_mpz_t(), w.get_mpz_t(), mod.get_mpz_t());
        return w;
    }

    BigInt iterate(BigInt z, long k) const {
        for (long i = 0; i < k; ++i) z = step(z);
        return z;
    }

    // (f^k)'(z) = 2^k prod_{i<k} f^i(z)
    BigInt derivative(BigInt z, long k) const {
        BigInt d = 1;
        for (long i = 0; i < k; ++i) {
            d *= 2 * z;
            mpz_mod(d.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
            z = step(z);
        }
        return d;
    }

    BigInt reduce(BigInt x) const {
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
        return x;
    }
};

// Exact valuation of a p-integral quantity given its residues mod p^M;
// a nonzero residue has valuation < M, so it is exact.
template <class F>
long exact_valuation(const Rational& c, std::uint64_t p, F residue, const char* what) {
    for (long M = 32; M <= 16384; M *= 2) {
        ModMap f(c, p, M);
        BigInt r = residue(f);
        if (r != 0) return padic_val_int(r, p);
    }
    throw InternalCheckFailure(std::string(what) + " vanishes to p-adic precision 16384 at p = " + std::to_string(p));
}

}  // namespace

ResidueOrbit residue_orbit(const Rational& c, std::uint64_t p) {
    require_good(c, p, "residue_orbit");
    using u128 = unsigned __int128;
    BigInt cn = BigInt(c.get_num()) % p, cd = BigInt(c.get_den()) % p, inv;
    if (cn < 0) cn += p;
    BigInt pm = p;
    mpz_invert(inv.get_mpz_t(), cd.get_mpz_t(), pm.get_mpz_t());
    const std::uint64_t cbar = BigInt(cn * inv % pm).get_ui();
    std::unordered_map<std::uint64_t, int> first;
    std::uint64_t z = 0;
    for (int k = 0;; ++k) {
        auto [it, fresh] = first.emplace(z, k);
        if (!fresh) {
            ResidueOrbit o;
            o.p = p;
            o.q = p;
            o.m = it->second;
            o.n = k - it->second;
            return o;
        }
        z = static_cast<std::uint64_t>((static_cast<u128>(z) * z + cbar) % p);
    }
}

DiskCase classify_disk(const ResidueOrbit& orbit) {
    return (orbit.m == 0 || orbit.p == 2) ? DiskCase::Attracting : DiskCase::Indifferent;
}

NonArchDelta attracting_delta(const Rational& c, std::uint64_t p) {
    require_wandering_zero(c, "attracting_delta");
    ResidueOrbit o = residue_orbit(c, p);
    if (classify_disk(o) != DiskCase::Attracting)
        throw std::invalid_argument("attracting_delta: residue disk at p = " + std::to_string(p) + " is indifferent");
    const long n = o.n, m = o.m;
    const long v2 = p == 2 ? 1 : 0;

    long ell = 1;
    if (p == 2) {
        long vy = exact_valuation(c, p, [&](const ModMap& f) {
            BigInt x = f.iterate(0, m);
            return f.reduce(f.iterate(x, n) - x);
        }, "f^n(x) - x");
        // smallest ell with 2^ell > n v(2)/v(y) + 1
        while ((1L << ell) * vy <= n * v2 + vy) ++ell;
    }

    long vdelta = exact_valuation(c, p, [&](const ModMap& f) {
        BigInt a = f.iterate(0, ell * n + m);
        return f.reduce(f.iterate(a, ell * n) - a);
    }, "f^{2ln+m}(0) - f^{ln+m}(0)");

    long vderiv = n * v2;
    for (long i = 0; i < n; ++i) {
        vderiv += exact_valuation(c, p, [&](const ModMap& f) { return f.iterate(0, ell * n + m + i); },
                                  "orbit point near the attracting cycle");
    }
    if (!(vdelta > vderiv))
        throw InternalCheckFailure("attracting_delta: v(delta) = " + std::to_string(vdelta) +
                                   " does not exceed v((f^n)'(b)) = " + std::to_string(vderiv) + " at p = " +
                                   std::to_string(p) + ", c = " + to_string(c));
    NonArchDelta d;
    d.p = p;
    d.val_num = vdelta;
    d.val_den = 1;
    d.kind = DiskCase::Attracting;
    d.ell = static_cast<int>(ell);
    d.j = 1;
    return d;
}

NonArchDelta indifferent_delta(const Rational& c, std::uint64_t p) {
    require_wandering_zero(c, "indifferent_delta");
    ResidueOrbit o = residue_orbit(c, p);
    if (classify_disk(o) != DiskCase::Indifferent)
        throw std::invalid_argument("indifferent_delta: residue disk at p = " + std::to_string(p) + " is not indifferent");
    const long n = o.n, m = o.m;

    ModMap f1(c, p, 1);
    BigInt x1 = f1.iterate(0, m);
    const long j = f1.reduce(f1.derivative(x1, n) - 1) == 0 ? 1 : static_cast<long>(p) - 1;

    // ell <= floor(log(sqrt 5 + 1/2)/log phi) = 2 over Q
    const double phi = (1 + std::sqrt(5.0)) / 2;
    const int ell_max = static_cast<int>(std::floor(std::log(std::sqrt(5.0) + 0.5) / std::log(phi)));
    std::string log;
    for (int ell = 1; ell <= ell_max; ++ell) {
        long N = j * n;
        for (int i = 0; i < ell; ++i) N *= static_cast<long>(p);
        long vsq = exact_valuation(c, p, [&](const ModMap& f) {
            BigInt x = f.iterate(0, m);
            return f.reduce(f.iterate(x, N) - x);
        }, "f^{jnp^l}(x) - x");
        ModMap fp(c, p, 4);
        BigInt xd = fp.iterate(0, m);
        bool deriv_ok = fp.reduce(fp.derivative(xd, N) - 1) % p == 0;
        if (vsq >= 2 && deriv_ok) {
            NonArchDelta d;
            d.p = p;
            long g = std::gcd(vsq, 2L);
            d.val_num = vsq / g;
            d.val_den = 2 / g;
            d.kind = DiskCase::Indifferent;
            d.ell = ell;
            d.j = static_cast<int>(j);
            return d;
        }
        log += " ell=" + std::to_string(ell) + ": v(delta^2)=" + std::to_string(vsq) +
               (deriv_ok ? "" : ", derivative check failed") + ";";
    }
    throw InternalCheckFailure("indifferent_delta: no ell <= " + std::to_string(ell_max) + " verified at p = " +
                               std::to_string(p) + ", c = " + to_string(c) + ":" + log);
}

NonArchDelta nonarch_delta(const Rational& c, std::uint64_t p) {
    return classify_disk(residue_orbit(c, p)) == DiskCase::Attracting ? attracting_delta(c, p)
                                                                       : indifferent_delta(c, p);
}

std::vector<NonArchDelta> nonarch_deltas_serial(const Rational& c, const std::vector<std::uint64_t>& primes) {
    std::vector<NonArchDelta> out;
    out.reserve(primes.size());
    for (auto p : primes) out.push_back(nonarch_delta(c, p));
    return out;
}

std::vector<NonArchDelta> nonarch_deltas(const Rational& c, const std::vector<std::uint64_t>& primes) {
    std::vector<NonArchDelta> out(primes.size());
    std::vector<std::exception_ptr> errs(primes.size());
    const long count = static_cast<long>(primes.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = nonarch_delta(c, primes[static_cast<std::size_t>(i)]);
        } catch (...) {
            errs[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

long r_p(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("r_p: " + std::to_string(p) + " is not prime");
    if (p > 1000000) throw std::invalid_argument("r_p: p too large");
    const long P = static_cast<long>(p);
    const unsigned long x = static_cast<unsigned long>(P * (p == 2 ? 1 : 0) + 1);
    const long fl = static_cast<long>(std::bit_width(x)) - 1;  // floor(log2 x)
    return std::max(P * (fl + 1) - 1, P * P * (P - 1) - 1);
}

LocalConstants r_p_constant(std::uint64_t p, const Rational& c) {
    require_good(c, p, "r_p_constant");
    HeightConstants hc = height_constants(c);
    LocalConstants lc;
    lc.p = p;
    lc.r = r_p(p);
    const double rlog2 = rnd::up(static_cast<double>(lc.r) * rnd::log2_up());
    lc.log_A = rnd::up(rnd::log_up(rnd::up(hc.C2 + rnd::log2_up())) + rlog2);
    lc.log_B = rnd::up(hc.log_C1 + rlog2);
    return lc;
}

HolderData holder_finite(const Rational& c, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("holder_finite: " + std::to_string(p) + " is not prime");
    auto v = padic_val(c, p);
    if (!v || *v >= 0) return {0.0, 1.0};
    const double lc = rnd::up(static_cast<double>(-*v) * rnd::log_up(static_cast<double>(p)));
    HolderData h;
    h.C = rnd::up(1 + 6 * lc);
    h.kappa = rnd::down(rnd::log2_down() / rnd::up(2 * rnd::log2_up() + 4 * lc));
    return h;
}

}  // namespace preper
