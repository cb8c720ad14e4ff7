#pragma once

#include "preper/exact.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace preper {

enum class HeightMethod { GoodReduction, BadReduction, ArchEscapeRate };
std::string to_string(HeightMethod m);

struct LocalHeight {
    Place place = Place::infinite();
    double value = 0;
    double error = 0;  // 0 at finite places
    HeightMethod method = HeightMethod::GoodReduction;
};

struct CanonicalHeight {
    double value = 0;
    double error = 0;
    std::vector<LocalHeight> locals;
};

struct HeightConstants {
    long N = 0;
    int r = 1;
    int s = 0;
    double C1 = 0;      // may be +inf when 2^{N+2} overflows; log_C1 is always finite
    double log_C1 = 0;
    double C2 = 0;
    double C0 = 0;
};

// Raised when a height cannot be certified positive (e.g. preperiodic input).
class CertificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Primes p with v_p(c) < 0.
std::vector<std::uint64_t> bad_primes(const Rational& c);

LocalHeight local_height_good(const Rational& alpha, const Rational& c, std::uint64_t p);
LocalHeight local_height_bad(const Rational& alpha, const Rational& c, std::uint64_t p);
LocalHeight local_height_arch(const Rational& alpha, const Rational& c, double tol);

CanonicalHeight canonical_height(const Rational& alpha, const Rational& c, double tol = 1e-12);

// Exact orbit test: repeats before the orbit height exceeds h(c) + log 2.
bool is_preperiodic(const Rational& alpha, const Rational& c);

HeightConstants height_constants(const Rational& c);
double direct_height_floor(const Rational& alpha, const Rational& c);

// Display-only: -log2 of the generic lower bound for C0.
double generic_c0_neg_log2(long N);
// Number of rationals of height at most log(X).
BigInt count_rationals_up_to(std::uint64_t X);

// Serial and OpenMP evaluation of canonical heights over a grid of (c, alpha).
struct GridPoint {
    Rational c;
    Rational alpha;
};
std::vector<CanonicalHeight> canonical_height_grid_serial(const std::vector<GridPoint>& pts, double tol);
std::vector<CanonicalHeight> canonical_height_grid(const std::vector<GridPoint>& pts, double tol);

}  // namespace preper
