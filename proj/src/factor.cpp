#include "preper/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>

namespace preper {

namespace {

// ---------- arithmetic in F_p[z], p < 2^31 ----------

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

void mtrim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int mdeg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

u64 minv(u64 a, u64 p) {
    // Fermat
    u64 r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

ModPoly msub(ModPoly a, const ModPoly& b, u64 p) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    mtrim(a);
    return a;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    mtrim(r);
    return r;
}

// a mod b and quotient
void mdivmod(const ModPoly& a, const ModPoly& b, u64 p, ModPoly* q, ModPoly* r) {
    ModPoly rem = a;
    int db = mdeg(b);
    u64 inv = minv(b.back(), p);
    ModPoly quo;
    if (mdeg(rem) >= db) quo.assign(static_cast<std::size_t>(mdeg(rem) - db + 1), 0);
    for (int k = mdeg(rem); k >= db; --k) {
        u64 t = rem[static_cast<std::size_t>(k)] * inv % p;
        if (!t) continue;
        quo[static_cast<std::size_t>(k - db)] = t;
        for (int i = 0; i <= db; ++i) {
            auto idx = static_cast<std::size_t>(k - db + i);
            rem[idx] = (rem[idx] + p - t * b[static_cast<std::size_t>(i)] % p) % p;
        }
    }
    mtrim(rem);
    mtrim(quo);
    if (q) *q = std::move(quo);
    if (r) *r = std::move(rem);
}

ModPoly mmod(const ModPoly& a, const ModPoly& b, u64 p) {
    ModPoly r;
    mdivmod(a, b, p, nullptr, &r);
    return r;
}

ModPoly mmonic(ModPoly a, u64 p) {
    if (a.empty()) return a;
    u64 inv = minv(a.back(), p);
    for (auto& v : a) v = v * inv % p;
    return a;
}

ModPoly mgcd(ModPoly a, ModPoly b, u64 p) {
    while (!b.empty()) {
        ModPoly r = mmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return mmonic(a, p);
}

// s*a + t*b = 1 for coprime a, b
void mxgcd(const ModPoly& a, const ModPoly& b, u64 p, ModPoly& s, ModPoly& t) {
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        ModPoly q, r;
        mdivmod(r0, r1, p, &q, &r);
        ModPoly s2 = msub(s0, mmul(q, s1, p), p);
        ModPoly t2 = msub(t0, mmul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (mdeg(r0) != 0) throw std::logic_error("mxgcd: inputs not coprime");
    u64 inv = minv(r0[0], p);
    for (auto& v : s0) v = v * inv % p;
    for (auto& v : t0) v = v * inv % p;
    s = s0;
    t = t0;
}

ModPoly mpowmod(ModPoly base, const BigInt& e, const ModPoly& f, u64 p) {
    ModPoly r{1};
    base = mmod(base, f, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mmod(mmul(r, r, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mmod(mmul(r, base, p), f, p);
    }
    return r;
}

ModPoly reduce(const IntPoly& f, u64 p) {
    ModPoly r;
    r.reserve(f.coeffs().size());
    BigInt pp(static_cast<unsigned long>(p));
    for (const auto& a : f.coeffs()) {
        BigInt m;
        mpz_fdiv_r(m.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t());
        r.push_back(m.get_ui());
    }
    mtrim(r);
    return r;
}

ModPoly mderiv(const ModPoly& a, u64 p) {
    if (a.size() <= 1) return {};
    ModPoly r(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = a[k] * (k % p) % p;
    mtrim(r);
    return r;
}

void equal_degree_split(const ModPoly& g, int k, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    int d = mdeg(g);
    if (d == k) {
        out.push_back(g);
        return;
    }
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(k));
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> dist(0, p - 1);
    for (;;) {
        ModPoly a(static_cast<std::size_t>(d));
        for (auto& v : a) v = dist(rng);
        mtrim(a);
        if (mdeg(a) < 1) continue;
        ModPoly h = mgcd(a, g, p);
        if (mdeg(h) <= 0) {
            ModPoly b = mpowmod(a, e, g, p);
            if (b.empty()) b.push_back(0);
            b[0] = (b[0] + p - 1) % p;
            mtrim(b);
            h = mgcd(b, g, p);
        }
        if (mdeg(h) > 0 && mdeg(h) < d) {
            ModPoly q;
            mdivmod(g, h, p, &q, nullptr);
            equal_degree_split(h, k, p, rng, out);
            equal_degree_split(mmonic(q, p), k, p, rng, out);
            return;
        }
    }
}

// Monic irreducible factors of a monic squarefree f over F_p.
std::vector<ModPoly> factor_mod_p(ModPoly f, u64 p) {
    std::vector<ModPoly> out;
    std::mt19937_64 rng(0x5eedULL + p);
    ModPoly xp{0, 1};
    ModPoly h = xp;
    BigInt pe(static_cast<unsigned long>(p));
    for (int i = 1; 2 * i <= mdeg(f); ++i) {
        h = mpowmod(h, pe, f, p);
        ModPoly g = mgcd(msub(h, xp, p), f, p);
        if (mdeg(g) > 0) {
            equal_degree_split(g, i, p, rng, out);
            ModPoly q;
            mdivmod(f, g, p, &q, nullptr);
            f = mmonic(q, p);
            h = mmod(h, f, p);
        }
    }
    if (mdeg(f) > 0) out.push_back(f);
    return out;
}

// ---------- arithmetic in (Z/M)[z] ----------

using ZPoly = std::vector<BigInt>;

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zreduce(ZPoly a, const BigInt& M) {
    for (auto& v : a) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
    ztrim(a);
    return a;
}

ZPoly zadd(ZPoly a, const ZPoly& b, const BigInt& M) {
    if (b.size() > a.size()) a.resize(b.size(), BigInt(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return zreduce(std::move(a), M);
}

ZPoly zsub(ZPoly a, const ZPoly& b, const BigInt& M) {
    if (b.size() > a.size()) a.resize(b.size(), BigInt(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return zreduce(std::move(a), M);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const BigInt& M) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return zreduce(std::move(r), M);
}

// division by a monic polynomial
void zdivmod_monic(const ZPoly& a, const ZPoly& b, const BigInt& M, ZPoly& q, ZPoly& r) {
    r = a;
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(r.size()) - 1;
    q.assign(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, BigInt(0));
    for (int k = da; k >= db; --k) {
        BigInt t;
        mpz_fdiv_r(t.get_mpz_t(), r[static_cast<std::size_t>(k)].get_mpz_t(), M.get_mpz_t());
        if (t == 0) continue;
        q[static_cast<std::size_t>(k - db)] = t;
        for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k - db + i)] -= t * b[static_cast<std::size_t>(i)];
    }
    r.resize(static_cast<std::size_t>(std::max(db, 0)));
    r = zreduce(std::move(r), M);
    q = zreduce(std::move(q), M);
}

ZPoly lift_of(const ModPoly& a) {
    ZPoly r;
    r.reserve(a.size());
    for (auto v : a) r.emplace_back(static_cast<unsigned long>(v));
    return r;
}

// Quadratic Hensel lifting of f = g*h from mod p to mod >= target.
void hensel_pair(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly s, ZPoly t, u64 p, const BigInt& target,
                 BigInt& modulus) {
    BigInt m(static_cast<unsigned long>(p));
    while (m < target) {
        BigInt M = m * m;
        ZPoly e = zsub(f, zmul(g, h, M), M);
        ZPoly q, r;
        zdivmod_monic(zmul(s, e, M), h, M, q, r);
        ZPoly g2 = zadd(zadd(g, zmul(t, e, M), M), zmul(q, g, M), M);
        ZPoly h2 = zadd(h, r, M);
        ZPoly b = zsub(zadd(zmul(s, g2, M), zmul(t, h2, M), M), ZPoly{BigInt(1)}, M);
        ZPoly cq, d;
        zdivmod_monic(zmul(s, b, M), h2, M, cq, d);
        s = zsub(s, d, M);
        t = zsub(zsub(t, zmul(t, b, M), M), zmul(cq, g2, M), M);
        g = std::move(g2);
        h = std::move(h2);
        m = M;
    }
    modulus = m;
}

ModPoly mprod(const std::vector<ModPoly>& fs, std::size_t lo, std::size_t hi, u64 p) {
    ModPoly r{1};
    for (std::size_t i = lo; i < hi; ++i) r = mmul(r, fs[i], p);
    return r;
}

// f monic mod target; lifts the modular factorization fs[lo, hi).
void hensel_tree(const ZPoly& f, const std::vector<ModPoly>& fs, std::size_t lo, std::size_t hi, u64 p,
                 const BigInt& target, std::vector<ZPoly>& out) {
    if (hi - lo == 1) {
        out.push_back(zreduce(f, target));
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    ModPoly gm = mprod(fs, lo, mid, p), hm = mprod(fs, mid, hi, p);
    ModPoly s, t;
    mxgcd(gm, hm, p, s, t);
    ZPoly g = lift_of(gm), h = lift_of(hm);
    BigInt modulus;
    hensel_pair(f, g, h, lift_of(s), lift_of(t), p, target, modulus);
    g = zreduce(g, target);
    h = zreduce(h, target);
    hensel_tree(g, fs, lo, mid, p, target, out);
    hensel_tree(h, fs, mid, hi, p, target, out);
}

IntPoly symmetric(const ZPoly& a, const BigInt& M) {
    BigInt half = M / 2;
    std::vector<BigInt> v;
    v.reserve(a.size());
    for (const auto& x : a) {
        BigInt y;
        mpz_fdiv_r(y.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
        if (y > half) y -= M;
        v.push_back(y);
    }
    return IntPoly(std::move(v));
}

// Factor a primitive squarefree polynomial with positive leading coefficient.
std::vector<IntPoly> factor_squarefree(const IntPoly& f) {
    if (f.degree() <= 1) return {f};
    const BigInt& lc = f.lead();

    // choose the good prime giving the fewest modular factors
    u64 best_p = 0;
    std::vector<ModPoly> best;
    int tried = 0;
    for (u64 p = 3; tried < 6 && p < 100000; p += 2) {
        if (!is_prime_u64(p)) continue;
        if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
        ModPoly fp = reduce(f, p);
        if (mdeg(fp) != f.degree()) continue;
        if (mdeg(mgcd(fp, mderiv(fp, p), p)) != 0) continue;
        ++tried;
        auto fs = factor_mod_p(mmonic(fp, p), p);
        if (best_p == 0 || fs.size() < best.size()) {
            best_p = p;
            best = std::move(fs);
        }
        if (best.size() == 1) return {f};
    }
    if (best_p == 0) throw std::logic_error("factor: no suitable prime found");
    u64 p = best_p;

    // coefficient bound for any factor times lc: 2^(n+1) * |lc| * ||f||_1
    BigInt norm1 = 0;
    for (const auto& a : f.coeffs()) norm1 += abs(a);
    BigInt bound = abs(lc) * norm1;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(f.degree() + 2));

    BigInt target(static_cast<unsigned long>(p));
    while (target <= bound) target *= static_cast<unsigned long>(p);

    BigInt lc_inv;
    mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t());
    ZPoly fm;
    for (const auto& a : f.coeffs()) fm.push_back(a * lc_inv);
    fm = zreduce(fm, target);

    std::vector<ZPoly> lifted;
    hensel_tree(fm, best, 0, best.size(), p, target, lifted);

    // subset recombination
    std::vector<IntPoly> result;
    std::vector<std::size_t> alive(lifted.size());
    std::iota(alive.begin(), alive.end(), 0);
    IntPoly rest = f;
    std::size_t s = 1;
    while (2 * s <= alive.size()) {
        bool found = false;
        std::vector<std::size_t> pick(s);
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            ZPoly prod{rest.lead()};
            for (auto i : pick) prod = zmul(prod, lifted[alive[i]], target);
            IntPoly cand = primitive_part(symmetric(prod, target));
            IntPoly quo;
            if (cand.degree() > 0 && divides(cand, rest, &quo)) {
                result.push_back(cand);
                rest = primitive_part(quo);
                std::vector<std::size_t> keep;
                for (std::size_t i = 0, k = 0; i < alive.size(); ++i) {
                    if (k < pick.size() && pick[k] == i) {
                        ++k;
                        continue;
                    }
                    keep.push_back(alive[i]);
                }
                alive = std::move(keep);
                found = true;
                break;
            }
            // next combination
            std::size_t i = s;
            while (i > 0 && pick[i - 1] == alive.size() - s + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (rest.degree() > 0) result.push_back(rest);
    return result;
}

}  // namespace

RatPoly Factorization::expand() const {
    RatPoly r = RatPoly::constant(unit);
    for (const auto& [g, e] : factors)
        for (int k = 0; k < e; ++k) r = r * to_rat(g);
    return r;
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& F) {
    std::vector<std::pair<IntPoly, int>> out;
    if (F.degree() <= 0) return out;
    // Yun's algorithm over Q
    RatPoly f = to_rat(primitive_part(F));
    RatPoly fp = f.derivative();
    RatPoly a = gcd(f, fp);
    RatPoly b = exact_div(f, a);
    RatPoly c = exact_div(fp, a);
    RatPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        RatPoly g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(clear_denominators(g), i);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

Factorization factor_over_integers(const IntPoly& F) {
    if (F.is_zero()) throw std::invalid_argument("factor_over_integers: zero polynomial");
    Factorization out;
    for (auto& [part, mult] : squarefree_decomposition(F)) {
        IntPoly g = part;
        // pull out the factor z^k first; keeps later primes away from g(0) = 0 corner cases
        std::size_t k = 0;
        while (g.coeff(k) == 0) ++k;
        if (k > 0) {
            out.factors.emplace_back(IntPoly::x(), mult);
            std::vector<BigInt> v(g.coeffs().begin() + static_cast<long>(k), g.coeffs().end());
            g = IntPoly(std::move(v));
        }
        for (auto& h : factor_squarefree(g))
            if (h.degree() > 0) out.factors.emplace_back(h, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    BigInt lead = 1;
    for (const auto& [g, e] : out.factors)
        for (int k = 0; k < e; ++k) lead *= g.lead();
    out.unit = Rational(F.lead(), lead);
    out.unit.canonicalize();
    return out;
}

Factorization factor_over_rationals(const RatPoly& F) {
    Rational scale;
    IntPoly G = clear_denominators(F, &scale);
    Factorization out = factor_over_integers(G);
    out.unit *= scale;
    return out;
}

}  // namespace preper
