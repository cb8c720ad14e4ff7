#include "preper/roots.hpp"

#include <Eigen/Eigenvalues>
#include <mpfr.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace preper {

namespace {

using cld = std::complex<long double>;

struct Eval {
    cld value;
    long double bound;  // sum |a_k| |z|^k
};

Eval horner(const std::vector<long double>& a, cld z) {
    cld v = 0;
    long double b = 0, az = std::abs(z);
    for (std::size_t k = a.size(); k-- > 0;) {
        v = v * z + a[k];
        b = b * az + std::fabs(a[k]);
    }
    return {v, b};
}

cld horner_deriv(const std::vector<long double>& a, cld z) {
    cld v = 0;
    for (std::size_t k = a.size(); k-- > 1;) v = v * z + static_cast<long double>(k) * a[k];
    return v;
}

long double to_ld(const BigInt& x) {
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_set_z(t, x.get_mpz_t(), MPFR_RNDN);
    long double v = mpfr_get_ld(t, MPFR_RNDN);
    mpfr_clear(t);
    return v;
}


// p(z) and p'(z) at 256 bits for a long double point z; the only error left
// is the 2^-250 relative evaluation error, added back as a bound.
struct HiEval {
    cld value;
    cld deriv;
    long double bound;
};

HiEval hi_eval(const IntPoly& g, cld z) {
    const int d = g.degree();
    mpfr_t x, y, vr, vi, dr, di, t1, t2, c;
    for (mpfr_ptr v : {x, y, vr, vi, dr, di, t1, t2, c}) mpfr_init2(v, 256);
    mpfr_set_ld(x, z.real(), MPFR_RNDN);
    mpfr_set_ld(y, z.imag(), MPFR_RNDN);
    mpfr_set_zero(vr, 1);
    mpfr_set_zero(vi, 1);
    mpfr_set_zero(dr, 1);
    mpfr_set_zero(di, 1);
    long double bound = 0, az = std::abs(z);
    auto mul_z = [&](mpfr_ptr re, mpfr_ptr im) {
        // (re + i im)(x + i y)
        mpfr_mul(t1, re, x, MPFR_RNDN);
        mpfr_mul(t2, im, y, MPFR_RNDN);
        mpfr_sub(t1, t1, t2, MPFR_RNDN);
        mpfr_mul(t2, re, y, MPFR_RNDN);
        mpfr_mul(im, im, x, MPFR_RNDN);
        mpfr_add(im, im, t2, MPFR_RNDN);
        mpfr_set(re, t1, MPFR_RNDN);
    };
    for (int k = d; k >= 0; --k) {
        // derivative first: d' = d' z + v
        mul_z(dr, di);
        mpfr_add(dr, dr, vr, MPFR_RNDN);
        mpfr_add(di, di, vi, MPFR_RNDN);
        mul_z(vr, vi);
        mpfr_set_z(c, g.coeff(k).get_mpz_t(), MPFR_RNDN);
        mpfr_add(vr, vr, c, MPFR_RNDN);
        bound = bound * az + std::fabs(mpfr_get_ld(c, MPFR_RNDN));
    }
    HiEval e{cld(mpfr_get_ld(vr, MPFR_RNDN), mpfr_get_ld(vi, MPFR_RNDN)),
             cld(mpfr_get_ld(dr, MPFR_RNDN), mpfr_get_ld(di, MPFR_RNDN)), bound};
    for (mpfr_ptr v : {x, y, vr, vi, dr, di, t1, t2, c}) mpfr_clear(v);
    return e;
}

}  // namespace

std::vector<RootDisk> certified_roots(const IntPoly& g) {
    const int d = g.degree();
    if (d < 1) throw std::invalid_argument("certified_roots: degree must be positive");
    std::vector<long double> a(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) a[static_cast<std::size_t>(k)] = to_ld(g.coeff(k));
    const long double lc = a.back();

    std::vector<cld> z(static_cast<std::size_t>(d));
    if (d == 1) {
        z[0] = -a[0] / a[1];
    } else {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
        for (int i = 1; i < d; ++i) M(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) M(i, d - 1) = -static_cast<double>(a[static_cast<std::size_t>(i)] / lc);
        Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
        if (es.info() != Eigen::Success) throw std::runtime_error("certified_roots: eigenvalue iteration failed");
        for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] = cld(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
        for (auto& zi : z) {
            for (int it = 0; it < 4; ++it) {
                cld dp = horner_deriv(a, zi);
                if (std::abs(dp) == 0) break;
                cld step = horner(a, zi).value / dp;
                if (!std::isfinite(std::abs(step))) break;
                zi -= step;
            }
            for (int it = 0; it < 6; ++it) {
                HiEval e = hi_eval(g, zi);
                if (std::abs(e.deriv) == 0) break;
                cld step = e.value / e.deriv;
                if (!std::isfinite(std::abs(step))) break;
                zi -= step;
                if (std::abs(step) <= 1e-19L * (1 + std::abs(zi))) break;
            }
        }
    }
    const long double eps = std::numeric_limits<long double>::epsilon();
    const long double rel = 8 * static_cast<long double>(d + 2) * eps;
    std::vector<RootDisk> out(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < z.size(); ++i) {
        HiEval e = hi_eval(g, z[i]);
        long double num = (std::abs(e.value) + std::ldexp(e.bound, -240)) * (1 + rel);
        long double den = std::fabs(lc);
        for (std::size_t j = 0; j < z.size(); ++j)
            if (j != i) den *= std::abs(z[i] - z[j]);
        den *= 1 - rel;
        long double r = den > 0 ? static_cast<long double>(d) * num / den : std::numeric_limits<long double>::infinity();
        out[i] = {z[i], r * (1 + rel)};
    }
    return out;
}

long double min_root_distance(const std::vector<RootDisk>& roots, std::complex<long double> alpha) {
    long double best = std::numeric_limits<long double>::infinity();
    for (const auto& r : roots) best = std::min(best, std::abs(r.center - alpha) - r.radius);
    return best;
}

}  // namespace preper
