#pragma once

#include "preper/archimedean.hpp"
#include "preper/delta.hpp"
#include "preper/exact.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace preper {

enum class DiskCase { Attracting, Indifferent };
std::string to_string(DiskCase k);

// Orbit of 0 under z^2 + c mod p: f^{n+m}(0) = f^m(0), m and n minimal.
struct ResidueOrbit {
    std::uint64_t p = 2;
    int m = 0;
    int n = 1;
    std::uint64_t q = 2;
};

// delta = p^{-val_num/val_den}, from exact valuations along the orbit of 0.
struct NonArchDelta {
    std::uint64_t p = 2;
    long val_num = 0;
    long val_den = 1;
    DiskCase kind = DiskCase::Attracting;
    int ell = 1;
    int j = 1;

    double neg_log() const;  // rounded up
    DeltaBound to_delta_bound() const;
};

struct LocalConstants {
    std::uint64_t p = 2;
    long r = 0;
    double log_A = 0;  // A_p = (C2 + log 2) 2^r
    double log_B = 0;  // B_p = C1 2^r

    double A() const;
    double B() const;
};

ResidueOrbit residue_orbit(const Rational& c, std::uint64_t p);
DiskCase classify_disk(const ResidueOrbit& orbit);

NonArchDelta attracting_delta(const Rational& c, std::uint64_t p);
NonArchDelta indifferent_delta(const Rational& c, std::uint64_t p);
NonArchDelta nonarch_delta(const Rational& c, std::uint64_t p);
std::vector<NonArchDelta> nonarch_deltas(const Rational& c, const std::vector<std::uint64_t>& primes);
std::vector<NonArchDelta> nonarch_deltas_serial(const Rational& c, const std::vector<std::uint64_t>& primes);

long r_p(std::uint64_t p);
LocalConstants r_p_constant(std::uint64_t p, const Rational& c);

// Hoelder data at a finite place: kappa = 1, C = 0 at good reduction.
HolderData holder_finite(const Rational& c, std::uint64_t p);

}  // namespace preper
