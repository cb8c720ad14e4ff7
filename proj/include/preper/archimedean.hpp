#pragma once

#include "preper/delta.hpp"
#include "preper/exact.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace preper {

struct HolderData {
    double C = 0;
    double kappa = 1;
};

struct CycleData {
    int period = 0;
    std::complex<double> multiplier;
    std::complex<double> cycle_point;
    double residual = 0;
};

struct HyperbolicConstants {
    int t = 1;
    double log_C3 = 0;  // C3 = 2^{2^{t+2}-5} overflows for t >= 8
    double C4 = 0;
    double C5 = 0;

    double C3() const;
};

// R_c = 1/2 + sqrt(1/4 + |c|), rounded up.
double escape_radius(const Rational& c);
double escape_radius(double abs_c);

// delta >= sqrt(|c| - R_c) for |c| > 2, delta >= 1/2 for c >= 1.
DeltaBound julia_distance_lower(const Rational& c);

HolderData holder_arch(const Rational& c);

// delta >= (lambda0/D)^{D/(2 log 2)}, D = 2 log 6 + log+|c|.
DeltaBound kosek_delta(const Rational& c, double lambda0);

// The displayed formula, with log 48 in the small-epsilon branch.
double a_infty_1(double epsilon);
// sup over lambda >= epsilon of min(Kosek, Julia) with the Kosek constant
// re-derived as 2 log 6 + log 4 = log 144. Used in bound assembly.
double a_infty_1_sound(double epsilon);

std::optional<CycleData> find_attracting_cycle(std::complex<double> c, int t_max);

HyperbolicConstants hyperbolic_constants(int t, double C1, double C2);

// g(x) from the hyperbolic-component disk estimate.
double g_radius(double x);
// g(|lambda|)/C3; returned as -log of the radius to survive huge C3.
double in_mandel_radius(double lambda_abs, int t);
double in_mandel_neg_log_radius(double lambda_abs, int t);

struct AB {
    double A = 0;
    double B = 0;
};
AB a_b_infty_2(int t, double C1, double C2);

struct ArchDeltaReport {
    std::vector<DeltaBound> bounds;  // every route that certified
    DeltaBound best;
    double lambda0_lower = 0;  // certified lower bound for lambda_inf(0)
    bool eps_branch = false;
    std::optional<CycleData> cycle;
    double uniform_upper = 0;  // max{A_inf1(eps), A_inf2 + B_inf2 * hhat0}
};

// Throws HypothesisUnverified when no route certifies.
ArchDeltaReport arch_delta_bound(const Rational& c, double epsilon, int t, double hhat0);

}  // namespace preper
