#pragma once

#include "preper/delta.hpp"
#include "preper/exact.hpp"

#include <array>
#include <string>
#include <vector>

namespace preper {

struct EquidistInput {
    double C = 1;
    double kappa = 1;
    long V_size = 1;
    double F_size = 0;
    double dirichlet = 0;
    double lipschitz = 0;
    double h_rho_F = 0;
};

// Error term of quantitative equidistribution for a test function with the
// given Dirichlet energy and Lipschitz constant. Requires |F| >= 6 C kappa/(|V|+1).
double quant_equid_rhs(const EquidistInput& in);

struct TruncationConstants {
    double lipschitz = 0;
    double dirichlet = 0;
};
TruncationConstants truncation_constants(double delta, bool arch);

// T = e^{1 + sqrt(2u) + u}, u = -log(-z) - 1, so that log T / T <= -z.
double lambert_threshold(double z);

struct BoundReport {
    double P = 0;
    double log_P = 0;
    double u = 0;
    std::array<double, 3> terms{};      // may be +inf; see log_terms
    std::array<double, 3> log_terms{};
    double A = 0;
    double B = 0;
    double log_A = 0;
    double log_B = 0;
    double C = 0;
    double kappa = 0;
    double hhat = 0;   // hhat(alpha) for main_bound, the floor C0 for uniform_bound
    long V_size = 1;
    PlaceSet S_tilde;
    std::vector<DeltaBound> inputs;
    std::vector<std::string> notes;
};

// Three-term maximum bounding the number of S-integral preperiodic points.
BoundReport main_bound(double hhat_alpha, const PlaceSet& S_tilde, const std::vector<DeltaBound>& deltas, double C,
                       double kappa, long V_size);

// Hoelder data combined over V = {inf} u {bad primes}: C = max(1, sum C_v), kappa = min kappa_v.
struct EquidistConstants {
    double C = 1;
    double kappa = 1;
    long V_size = 1;
};
EquidistConstants equidist_constants(const Rational& c);

// Bound uniform in c: needs the archimedean hypothesis (escape by epsilon or an
// attracting cycle of period <= t); throws HypothesisUnverified otherwise.
BoundReport uniform_bound(const Rational& c, const PlaceSet& S, double epsilon, int t);

struct IntBoundDetail {
    BigInt bound;
    double u = 0;
    double log_value = 0;  // 1 + sqrt(2u) + u
    std::string value;     // e^{log_value} to 12 significant digits, before the ceiling
};
IntBoundDetail int_bound_detail(const PlaceSet& S);
// Integer c with 0 wandering: ceiling of e^{1+sqrt(2u)+u}. S needs a finite prime.
BigInt int_bound(const PlaceSet& S);

}  // namespace preper
