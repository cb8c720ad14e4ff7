#include "preper/archimedean.hpp"

#include "preper/heights.hpp"
#include "preper/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace preper {

std::string to_string(DeltaMethod m) {
    switch (m) {
        case DeltaMethod::JuliaDistance: return "JuliaDistance";
        case DeltaMethod::Kosek: return "Kosek";
        case DeltaMethod::Hyperbolic: return "Hyperbolic";
        case DeltaMethod::Attracting: return "Attracting";
        case DeltaMethod::Indifferent: return "Indifferent";
    }
    return "?";
}

DeltaMethod parse_delta_method(const std::string& s) {
    for (auto m : {DeltaMethod::JuliaDistance, DeltaMethod::Kosek, DeltaMethod::Hyperbolic, DeltaMethod::Attracting,
                   DeltaMethod::Indifferent})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown delta method: " + s);
}

double DeltaBound::delta_lower() const { return rnd::exp_down(-neg_log_delta_upper); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double abs_up(const Rational& c) { return rnd::up(std::fabs(c.get_d())); }
double abs_down(const Rational& c) { return std::fabs(c.get_d()); }  // get_d truncates toward zero

double log_plus_up(const Rational& c) {
    if (abs(c) <= 1) return 0.0;
    return rnd::up(log_abs(c, Place::infinite()));
}

double log6_up() { return rnd::log_up(6.0); }

double neg_log_up(double delta) {
    if (delta >= 1) return 0.0;
    return std::max(0.0, rnd::up(-rnd::log_down(delta)));
}

}  // namespace

double escape_radius(double abs_c) { return rnd::up(0.5 + rnd::sqrt_up(rnd::up(0.25 + abs_c))); }
double escape_radius(const Rational& c) { return escape_radius(abs_up(c)); }

DeltaBound julia_distance_lower(const Rational& c) {
    bool big = abs(c) > 2;
    bool ge1 = c >= 1;
    if (!big && !ge1)
        throw std::invalid_argument("julia_distance_lower: c = " + to_string(c) + " is outside |c| > 2 and c >= 1");
    double best = 0;
    if (big) {
        double gap = rnd::down(abs_down(c) - escape_radius(c));
        if (gap > 0) best = rnd::sqrt_down(gap);
    }
    if (ge1) best = std::max(best, 0.5);
    if (!(best > 0)) throw std::invalid_argument("julia_distance_lower: |c| - R_c not resolvable in double precision");
    DeltaBound d;
    d.place = Place::infinite();
    d.neg_log_delta_upper = neg_log_up(std::min(best, 1.0));
    d.method = DeltaMethod::JuliaDistance;
    d.certified = true;
    return d;
}

HolderData holder_arch(const Rational& c) {
    double lp = log_plus_up(c);
    HolderData h;
    h.C = rnd::up(4 * log6_up() + 2 * lp);
    h.kappa = rnd::down(2 * rnd::log2_down() / rnd::up(2 * log6_up() + lp));
    return h;
}

DeltaBound kosek_delta(const Rational& c, double lambda0) {
    if (!(lambda0 > 0)) throw std::invalid_argument("kosek_delta: lambda0 must be positive");
    double D = rnd::up(2 * log6_up() + log_plus_up(c));
    DeltaBound d;
    d.place = Place::infinite();
    d.method = DeltaMethod::Kosek;
    d.certified = true;
    if (lambda0 >= D) return d;
    double expo = rnd::up(D / (2 * rnd::log2_down()));
    d.neg_log_delta_upper = rnd::up(expo * rnd::log_up(rnd::up(D / lambda0)));
    return d;
}

namespace {

// -(1/2) log(X - R_X), the Julia-distance branch at |c| = X
double julia_branch(double X) {
    double gap = rnd::down(X - escape_radius(X));
    if (!(gap > 0)) return kInf;
    return std::max(0.0, rnd::up(-0.5 * rnd::log_down(gap)));
}

double kosek_branch(double eps, double inner_log) {
    double pre = rnd::up(rnd::up(rnd::log_up(12.0) + eps) / rnd::log2_down());
    return rnd::up(pre * rnd::log_up(rnd::up(rnd::up(inner_log + 2 * eps) / eps)));
}

}  // namespace

double a_infty_1(double eps) {
    if (!(eps > 0)) throw std::invalid_argument("a_infty_1: epsilon must be positive");
    if (eps > 1.5 * rnd::kLog2) return julia_branch(rnd::exp_down(2 * (eps - rnd::kLog2)));
    return kosek_branch(eps, rnd::log_up(48.0));
}

double a_infty_1_sound(double eps) {
    if (!(eps > 0)) throw std::invalid_argument("a_infty_1_sound: epsilon must be positive");
    // sup over lambda >= eps of min(Kosek(lambda), Julia(lambda)), on a grid where
    // each cell is bounded using the monotone pieces of both expressions
    const double l144 = rnd::log_up(144.0);
    const double threshold = 1.5 * rnd::kLog2;
    double sup = 0;
    double a = eps;
    for (int i = 0; i < 200000; ++i) {
        double b = a + std::max(1e-4, 1e-3 * a);
        double pre = rnd::up(rnd::up(rnd::log_up(12.0) + b) / rnd::log2_down());
        double kos = rnd::up(pre * rnd::log_up(rnd::up(rnd::up(l144 + 2 * a) / a)));
        double jul = a > threshold ? julia_branch(rnd::exp_down(2 * (a - rnd::log2_up()))) : kInf;
        sup = std::max(sup, std::min(kos, jul));
        if (jul == 0) break;
        a = b;
    }
    return sup;
}

std::optional<CycleData> find_attracting_cycle(std::complex<double> c, int t_max) {
    if (t_max < 1) throw std::invalid_argument("find_attracting_cycle: t_max >= 1");
    const double R = escape_radius(std::abs(c));
    std::vector<std::complex<double>> hist;
    std::complex<double> z = 0;
    int found_t = 0;
    for (int k = 0; k < 200000 && !found_t; ++k) {
        z = z * z + c;
        if (std::abs(z) > R) return std::nullopt;
        hist.push_back(z);
        if (hist.size() > static_cast<std::size_t>(t_max) + 1) hist.erase(hist.begin());
        if (k < 64) continue;
        for (int t = 1; t <= t_max && t < static_cast<int>(hist.size()); ++t) {
            if (std::abs(hist.back() - hist[hist.size() - 1 - static_cast<std::size_t>(t)]) < 1e-11 * (1 + std::abs(z))) {
                found_t = t;
                break;
            }
        }
    }
    if (!found_t) return std::nullopt;

    auto orbit = [&](std::complex<double> w, std::complex<double>& deriv) {
        deriv = 1;
        for (int i = 0; i < found_t; ++i) {
            deriv *= 2.0 * w;
            w = w * w + c;
        }
        return w;
    };
    std::complex<double> w = z, deriv;
    for (int it = 0; it < 60; ++it) {
        std::complex<double> F = orbit(w, deriv) - w;
        std::complex<double> step = F / (deriv - 1.0);
        w -= step;
        if (std::abs(step) < 1e-17 * (1 + std::abs(w))) break;
    }
    std::complex<double> image = orbit(w, deriv);
    CycleData cd;
    cd.period = found_t;
    cd.cycle_point = w;
    cd.multiplier = deriv;
    cd.residual = std::abs(image - w);
    if (!(std::abs(cd.multiplier) < 1 - 1e-6) || cd.residual > 1e-10) return std::nullopt;
    // reject a proper divisor period
    for (int d = 1; d < found_t; ++d) {
        if (found_t % d) continue;
        std::complex<double> v = w;
        for (int i = 0; i < d; ++i) v = v * v + c;
        if (std::abs(v - w) < 1e-9) return std::nullopt;
    }
    return cd;
}

double HyperbolicConstants::C3() const { return t == 1 ? 1.0 : std::ldexp(1.0, (1 << (t + 2)) - 5); }

HyperbolicConstants hyperbolic_constants(int t, double C1, double C2) {
    if (t < 1 || t > 20) throw std::invalid_argument("hyperbolic_constants: t must lie in [1, 20]");
    HyperbolicConstants h;
    h.t = t;
    const double T = std::ldexp(1.0, t);  // 2^t
    h.log_C3 = t == 1 ? 0.0 : rnd::up((std::ldexp(1.0, t + 2) - 5) * rnd::log2_up());
    h.C4 = rnd::up(t * T * T + rnd::up(C1 * (4 * T - 1) * (T + 2) * (T - 1)));

    // log lcm(1..2^t) = sum over prime powers p^k <= 2^t of log p
    double log_lcm = 0;
    const auto N = static_cast<long>(T);
    for (long p = 2; p <= N; ++p) {
        bool prime = true;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        for (long pk = p; pk <= N; pk *= p) log_lcm += std::log(static_cast<double>(p));
    }
    const double log8 = rnd::log_up(8.0);
    double inner = (T + 2) * (T - 1) * (C2 + 4 * log8) + (T + 1) * (T + 1) * rnd::log2_up() +
                   std::log((T + 1) * (T + 2));
    double fact = std::lgamma(2 * T);  // log((2^{t+1} - 1)!)
    double C5 = (4 * T - 1) * inner + 2 * ((t + 1) * rnd::log2_up() + fact) + rnd::log2_up() + 2 * T * log_lcm +
                2 * std::max(log8, (T - 1) * std::log(3.0));
    h.C5 = rnd::up(C5 * (1 + 1e-12));
    return h;
}

double g_radius(double x) {
    if (!(x > 0 && x < 1)) throw std::invalid_argument("g_radius: x must lie in (0, 1)");
    double s = std::sqrt(1 - x * x);
    double num = x * (x * x - 1 + s) * (x - 1 + s) * (1 - x);
    double den = x + 1 - s;
    return num / (den * den * den);
}

double in_mandel_neg_log_radius(double lambda_abs, int t) {
    if (!(lambda_abs > 0 && lambda_abs < 1)) throw std::invalid_argument("in_mandel_radius: |lambda| must lie in (0, 1)");
    HyperbolicConstants h = hyperbolic_constants(t, 0, 0);
    double g = g_radius(lambda_abs) * (1 - 1e-12);
    return rnd::up(h.log_C3 - rnd::log_down(g));
}

double in_mandel_radius(double lambda_abs, int t) { return rnd::exp_down(-in_mandel_neg_log_radius(lambda_abs, t)); }

AB a_b_infty_2(int t, double C1, double C2) {
    HyperbolicConstants h = hyperbolic_constants(t, C1, C2);
    return {rnd::up(h.C5 + rnd::log_up(20.0) + h.log_C3), h.C4};
}

ArchDeltaReport arch_delta_bound(const Rational& c, double epsilon, int t, double hhat0) {
    if (!(epsilon > 0)) throw std::invalid_argument("arch_delta_bound: epsilon must be positive");
    ArchDeltaReport rep;
    LocalHeight l0 = local_height_arch(Rational(0), c, 1e-12);
    rep.lambda0_lower = std::max(0.0, rnd::down(l0.value - l0.error));
    rep.eps_branch = rep.lambda0_lower >= epsilon;

    bool julia = false;
    try {
        rep.bounds.push_back(julia_distance_lower(c));
        julia = true;
    } catch (const std::invalid_argument&) {
    }
    if (rep.lambda0_lower > 0) rep.bounds.push_back(kosek_delta(c, rep.lambda0_lower));
    if (rep.lambda0_lower == 0) {
        rep.cycle = find_attracting_cycle({c.get_d(), 0.0}, t);
        if (rep.cycle && std::abs(rep.cycle->multiplier) > 0) {
            double lam = std::abs(rep.cycle->multiplier);
            double eta = 1e-9 + 1e3 * rep.cycle->residual;
            double lo = std::max(lam - eta, 1e-300), hi = std::min(lam + eta, 1 - 1e-300);
            DeltaBound d;
            d.place = Place::infinite();
            d.method = DeltaMethod::Hyperbolic;
            d.certified = true;
            d.neg_log_delta_upper =
                std::max(in_mandel_neg_log_radius(lo, rep.cycle->period), in_mandel_neg_log_radius(hi, rep.cycle->period));
            rep.bounds.push_back(d);
        }
    }
    if (!julia && !rep.eps_branch && !rep.cycle)
        throw HypothesisUnverified("c = " + to_string(c) +
                                   ": neither lambda_inf(0) >= epsilon nor an attracting cycle of period <= " +
                                   std::to_string(t) + " could be certified (excluded region near the Mandelbrot boundary)");

    rep.best = *std::min_element(rep.bounds.begin(), rep.bounds.end(), [](const DeltaBound& a, const DeltaBound& b) {
        return a.neg_log_delta_upper < b.neg_log_delta_upper;
    });
    HeightConstants hc = height_constants(c);
    AB ab = a_b_infty_2(t, hc.C1, hc.C2);
    rep.uniform_upper = std::max(a_infty_1_sound(epsilon), rnd::up(ab.A + rnd::up(ab.B * hhat0)));
    return rep;
}

}  // namespace preper
