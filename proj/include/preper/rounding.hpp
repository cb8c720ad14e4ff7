#pragma once

#include <cmath>
#include <limits>

// Outward rounding for bound assembly: every libm result is within 1 ulp,
// so stepping 2 ulps away keeps upper bounds above and lower bounds below.
namespace preper::rnd {

inline double up(double x) {
    if (std::isnan(x) || x == std::numeric_limits<double>::infinity()) return x;
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::nextafter(std::nextafter(x, inf), inf);
}

inline double down(double x) {
    if (std::isnan(x) || x == -std::numeric_limits<double>::infinity()) return x;
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::nextafter(std::nextafter(x, -inf), -inf);
}

inline double log_up(double x) { return up(std::log(x)); }
inline double log_down(double x) { return down(std::log(x)); }
inline double exp_up(double x) { return up(std::exp(x)); }
inline double exp_down(double x) { return down(std::exp(x)); }
inline double sqrt_up(double x) { return up(std::sqrt(x)); }
inline double sqrt_down(double x) { return down(std::sqrt(x)); }

inline constexpr double kLog2 = 0.69314718055994530942;
inline constexpr double kPi = 3.14159265358979323846;

// pi with one ulp of outward slack.
inline double pi_up() { return std::nextafter(kPi, 4.0); }
inline double log2_up() { return std::nextafter(kLog2, 1.0); }
inline double log2_down() { return std::nextafter(kLog2, 0.0); }

// log(1 + e^{b-a}) style helper: log(e^a + e^b) rounded up.
inline double logsumexp_up(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double hi = a > b ? a : b, lo = a > b ? b : a;
    return up(hi + up(std::log1p(up(std::exp(lo - hi)))));
}

}  // namespace preper::rnd
