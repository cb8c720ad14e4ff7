#include "preper/boundengine.hpp"

#include "preper/archimedean.hpp"
#include "preper/heights.hpp"
#include "preper/nonarchimedean.hpp"
#include "preper/rounding.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace preper {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_exp_up(double x) { return x > 709.0 ? kInf : rnd::exp_up(x); }

double threshold_exponent(double u) { return rnd::up(1 + rnd::sqrt_up(rnd::up(2 * u)) + u); }

}  // namespace

double quant_equid_rhs(const EquidistInput& in) {
    if (!(in.C >= 1) || !(in.kappa > 0 && in.kappa <= 1) || in.V_size < 1)
        throw std::invalid_argument("quant_equid_rhs: need C >= 1, 0 < kappa <= 1, |V| >= 1");
    if (in.dirichlet < 0 || in.lipschitz < 0 || in.h_rho_F < 0)
        throw std::invalid_argument("quant_equid_rhs: negative energy, Lipschitz constant or height");
    const double V1 = static_cast<double>(in.V_size + 1);
    if (!(in.F_size >= 1) || in.F_size < 6 * in.C * in.kappa / V1)
        throw std::invalid_argument("quant_equid_rhs: |F| below 6 C kappa / (|V| + 1)");
    double first = 0;
    if (in.dirichlet > 0) {
        double inner = rnd::up(in.h_rho_F + rnd::up(2 * V1 / in.kappa) * rnd::up(rnd::log_up(in.F_size) / in.F_size));
        first = rnd::up(rnd::sqrt_up(inner) * rnd::sqrt_up(in.dirichlet));
    }
    double second = 0;
    if (in.lipschitz > 0) {
        double base = rnd::up(V1 / rnd::down(2 * in.C * in.kappa * in.F_size));
        second = rnd::up(in.lipschitz * rnd::up(std::pow(base, 1 / in.kappa)));
    }
    return rnd::up(first + second);
}

TruncationConstants truncation_constants(double delta, bool arch) {
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("truncation_constants: delta must lie in (0, 1)");
    double nl = rnd::up(-rnd::log_down(delta));
    if (arch) return {rnd::up(1 / delta), rnd::up(4 * rnd::pi_up() * nl)};
    return {1.0, nl};
}

double lambert_threshold(double z) {
    const double inv_e = std::exp(-1.0);
    if (!(z < 0) || z < -inv_e * (1 + 1e-15)) throw std::invalid_argument("lambert_threshold: z must lie in [-1/e, 0)");
    double u = std::max(0.0, rnd::up(-rnd::log_down(-z) - 1));
    return safe_exp_up(threshold_exponent(u));
}

BoundReport main_bound(double hhat_alpha, const PlaceSet& S_tilde, const std::vector<DeltaBound>& deltas, double C,
                       double kappa, long V_size) {
    if (!(hhat_alpha > 0)) throw std::invalid_argument("main_bound: hhat(alpha) must be certified positive");
    if (!(C >= 1) || !(kappa > 0 && kappa <= 1)) throw std::invalid_argument("main_bound: need C >= 1 >= kappa > 0");
    if (V_size < 1) throw std::invalid_argument("main_bound: |V| >= 1");

    std::map<Place, DeltaBound> by_place;
    for (const auto& d : deltas) {
        if (!d.certified) throw std::invalid_argument("main_bound: uncertified delta at " + d.place.to_string());
        if (!S_tilde.contains(d.place)) continue;
        auto [it, fresh] = by_place.emplace(d.place, d);
        if (!fresh && d.neg_log_delta_upper < it->second.neg_log_delta_upper) it->second = d;
    }
    BoundReport r;
    r.S_tilde = S_tilde;
    r.C = C;
    r.kappa = kappa;
    r.hhat = hhat_alpha;
    r.V_size = V_size;

    double sum_sqrt = 0, inv_arch = 0;
    long finite = 0;
    for (const Place& v : S_tilde) {
        auto it = by_place.find(v);
        if (it == by_place.end()) throw std::invalid_argument("main_bound: no delta for place " + v.to_string());
        const double nl = std::max(0.0, it->second.neg_log_delta_upper);
        sum_sqrt = rnd::up(sum_sqrt + rnd::sqrt_up(nl));
        if (v.is_infinite())
            inv_arch = rnd::up(inv_arch + safe_exp_up(nl));
        else
            ++finite;
        r.inputs.push_back(it->second);
    }

    const double V1 = static_cast<double>(V_size + 1);
    r.terms[0] = rnd::up(6 * C * kappa / V1);

    const double inv_e = rnd::exp_down(-1.0);
    double z = sum_sqrt > 0 ? rnd::down(kappa * hhat_alpha / rnd::up(32 * rnd::pi_up() * V1 * sum_sqrt * sum_sqrt)) : kInf;
    r.u = z >= inv_e ? 0.0 : std::max(0.0, rnd::up(-rnd::log_down(z) - 1));
    r.log_terms[1] = threshold_exponent(r.u);
    r.terms[1] = safe_exp_up(r.log_terms[1]);

    double inner = rnd::up(2 / hhat_alpha * rnd::up(inv_arch + static_cast<double>(finite)));
    r.log_terms[2] = rnd::up(rnd::log_up(V1 / rnd::down(2 * C * kappa)) + kappa * rnd::log_up(inner));
    r.terms[2] = inner == kInf ? kInf : rnd::up(rnd::up(V1 / rnd::down(2 * C * kappa)) * rnd::up(std::pow(inner, kappa)));
    r.log_terms[0] = rnd::log_up(r.terms[0]);

    r.P = *std::max_element(r.terms.begin(), r.terms.end());
    r.log_P = *std::max_element(r.log_terms.begin(), r.log_terms.end());
    return r;
}

EquidistConstants equidist_constants(const Rational& c) {
    EquidistConstants e;
    HolderData h = holder_arch(c);
    double C = h.C, kappa = h.kappa;
    auto bad = bad_primes(c);
    for (auto p : bad) {
        HolderData hp = holder_finite(c, p);
        C = rnd::up(C + hp.C);
        kappa = std::min(kappa, hp.kappa);
    }
    e.C = std::max(1.0, C);
    e.kappa = std::min(1.0, kappa);
    e.V_size = 1 + static_cast<long>(bad.size());
    return e;
}

BoundReport uniform_bound(const Rational& c, const PlaceSet& S, double epsilon, int t) {
    if (is_preperiodic(Rational(0), c))
        throw std::invalid_argument("uniform_bound: 0 is preperiodic for c = " + to_string(c));
    const auto bad = bad_primes(c);
    PlaceSet St = S;
    for (auto p : bad) St.erase(Place::finite(p));
    const long V_size = 1 + static_cast<long>(bad.size());
    const double V = static_cast<double>(V_size);

    HeightConstants hc = height_constants(c);
    BoundReport r;
    double C0 = hc.C0;
    if (is_integer(c)) {
        double floor0 = direct_height_floor(Rational(0), c);
        if (floor0 < C0) {
            r.notes.push_back("pinned C0 = 1/4 exceeds the certified floor " + std::to_string(floor0) +
                              " for this c; the floor is used");
            C0 = floor0;
        }
    }
    if (!(C0 > 0)) throw CertificationFailure("uniform_bound: no positive lower bound for hhat(0)");

    ArchDeltaReport arch = arch_delta_bound(c, epsilon, t, C0);

    double A_inf, log_B_inf;
    if (is_integer(c)) {
        A_inf = rnd::log2_up();
        log_B_inf = -kInf;
        r.notes.push_back("integer c: A_inf = log 2, B_inf = 0");
    } else {
        AB ab2 = a_b_infty_2(t, 0, hc.C2);  // A_inf2 does not involve C1
        A_inf = std::max(a_infty_1_sound(epsilon), ab2.A);
        const double T = std::ldexp(1.0, t);
        log_B_inf = rnd::logsumexp_up(rnd::log_up(t * T * T),
                                      rnd::up(hc.log_C1 + rnd::log_up((4 * T - 1) * (T + 2) * (T - 1))));
    }

    r.inputs.push_back(arch.best);
    double log_A = rnd::log_up(A_inf), log_B = log_B_inf;
    for (auto p : St.finite_primes()) {
        LocalConstants lc = r_p_constant(p, c);
        log_A = rnd::logsumexp_up(log_A, lc.log_A);
        log_B = rnd::logsumexp_up(log_B, lc.log_B);
        r.inputs.push_back(nonarch_delta(c, p).to_delta_bound());
    }
    r.notes.push_back("A and B are summed over the finite places of S~ = S minus bad primes");

    const double log2d = rnd::log2_down();
    const double A_kappa = rnd::up(1 + rnd::up(rnd::log_up(6.0) + 4 * hc.C2) / log2d);
    const double log_B_kappa = rnd::up(rnd::log_up(4.0) + hc.log_C1 - rnd::log_down(log2d));
    const double lC0 = rnd::log_down(C0);
    const double lAk = rnd::log_up(A_kappa);
    double inner = rnd::up(lAk + log_A - 2 * lC0);
    inner = rnd::logsumexp_up(inner, rnd::up(rnd::logsumexp_up(lAk + log_B, log_A + log_B_kappa) - lC0));
    inner = rnd::logsumexp_up(inner, rnd::up(log_B_kappa + log_B));
    const double nS = static_cast<double>(St.size());
    r.u = std::max(0.0, rnd::up(rnd::log_up(32 * rnd::pi_up() * (V + 1) * nS) + inner - 1));

    r.terms[0] = rnd::up(29 * rnd::log2_up());
    r.log_terms[0] = rnd::log_up(r.terms[0]);
    r.log_terms[1] = threshold_exponent(r.u);
    r.terms[1] = safe_exp_up(r.log_terms[1]);
    const double B_inf = log_B_inf == -kInf ? 0.0 : std::exp(log_B_inf);
    r.log_terms[2] = rnd::up(rnd::log_up((7 + 4 * V) / (12 * log2d)) +
                             rnd::up(rnd::log2_up() / (4 * C0)) * rnd::log_up(2 * nS / C0) +
                             rnd::up(rnd::log2_up() / 4 * rnd::up(A_inf / C0 + B_inf)));
    r.terms[2] = safe_exp_up(r.log_terms[2]);
    r.log_P = *std::max_element(r.log_terms.begin(), r.log_terms.end());
    r.P = *std::max_element(r.terms.begin(), r.terms.end());

    r.log_A = log_A;
    r.log_B = log_B;
    r.A = safe_exp_up(log_A);
    r.B = log_B == -kInf ? 0.0 : safe_exp_up(log_B);
    r.hhat = C0;
    r.V_size = V_size;
    r.S_tilde = St;
    EquidistConstants ec = equidist_constants(c);
    r.C = ec.C;
    r.kappa = ec.kappa;
    return r;
}

namespace {

struct Mpfr {
    mpfr_t x;
    Mpfr() { mpfr_init2(x, 256); }
    ~Mpfr() { mpfr_clear(x); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

}  // namespace

IntBoundDetail int_bound_detail(const PlaceSet& S) {
    auto primes = S.finite_primes();
    if (primes.empty())
        throw std::invalid_argument("int_bound: S = {inf} has no finite prime; use uniform_bound instead");
    for (auto p : primes)
        if (r_p(p) > 100000) throw std::invalid_argument("int_bound: prime " + std::to_string(p) + " too large");

    Mpfr sum, t, u, lg2, lg6, pi, e;
    mpfr_set_zero(sum.x, 1);
    for (auto p : primes) {
        mpfr_set_ui_2exp(t.x, 1, r_p(p), MPFR_RNDU);
        mpfr_add(sum.x, sum.x, t.x, MPFR_RNDU);
    }
    mpfr_const_log2(lg2.x, MPFR_RNDD);
    mpfr_set_ui(lg6.x, 6, MPFR_RNDU);
    mpfr_log(lg6.x, lg6.x, MPFR_RNDU);
    // 16 (5 + (20 + 5 log 6)/log 2) sum 2^{r_p}
    mpfr_mul_ui(t.x, lg6.x, 5, MPFR_RNDU);
    mpfr_add_ui(t.x, t.x, 20, MPFR_RNDU);
    mpfr_div(t.x, t.x, lg2.x, MPFR_RNDU);
    mpfr_add_ui(t.x, t.x, 5, MPFR_RNDU);
    mpfr_mul_ui(t.x, t.x, 16, MPFR_RNDU);
    mpfr_mul(t.x, t.x, sum.x, MPFR_RNDU);
    mpfr_log(u.x, t.x, MPFR_RNDU);
    // + log(64 pi |S|) - 1
    mpfr_const_pi(pi.x, MPFR_RNDU);
    mpfr_mul_ui(pi.x, pi.x, 64 * S.size(), MPFR_RNDU);
    mpfr_log(pi.x, pi.x, MPFR_RNDU);
    mpfr_add(u.x, u.x, pi.x, MPFR_RNDU);
    mpfr_sub_ui(u.x, u.x, 1, MPFR_RNDU);
    // 1 + sqrt(2u) + u
    mpfr_mul_ui(e.x, u.x, 2, MPFR_RNDU);
    mpfr_sqrt(e.x, e.x, MPFR_RNDU);
    mpfr_add(e.x, e.x, u.x, MPFR_RNDU);
    mpfr_add_ui(e.x, e.x, 1, MPFR_RNDU);

    IntBoundDetail d;
    d.u = mpfr_get_d(u.x, MPFR_RNDU);
    d.log_value = mpfr_get_d(e.x, MPFR_RNDU);
    mpfr_exp(t.x, e.x, MPFR_RNDU);
    mpfr_get_z(d.bound.get_mpz_t(), t.x, MPFR_RNDU);
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.12Rg", t.x);
    d.value = buf;
    return d;
}

BigInt int_bound(const PlaceSet& S) { return int_bound_detail(S).bound; }

}  // namespace preper
