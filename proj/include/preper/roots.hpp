#pragma once

#include "preper/poly.hpp"

#include <complex>
#include <vector>

namespace preper {

// Every complex root lies in the union of the disks D(center, radius).
struct RootDisk {
    std::complex<long double> center;
    long double radius = 0;
};

// Companion-matrix eigenvalues, Newton-polished in long double, with
// Weierstrass inclusion radii d |g(z_i)| / |lc prod_{j != i}(z_i - z_j)|
// inflated by a bound on the evaluation error.
std::vector<RootDisk> certified_roots(const IntPoly& g);

// Lower bound on min |beta - alpha| over the roots beta of g.
long double min_root_distance(const std::vector<RootDisk>& roots, std::complex<long double> alpha);

}  // namespace preper
