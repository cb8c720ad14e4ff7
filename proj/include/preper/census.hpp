#pragma once

#include "preper/delta.hpp"
#include "preper/exact.hpp"
#include "preper/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace preper {

struct PadicDistance {
    std::uint64_t p = 2;
    // min/max of v_p(beta - alpha) over the roots; nullopt when alpha is a root
    std::optional<Rational> min_val;
    std::optional<Rational> max_val;
};

struct PreperOrbit {
    int n = 1;
    int m = 0;
    IntPoly factor;  // irreducible, primitive, positive leading coefficient
    int degree = 0;
    bool s_integral = false;
    long double arch_min_dist = 0;  // certified lower bound on min |beta - alpha|
    std::vector<PadicDistance> padic;
};

struct SUnitValue {
    Rational value;
    std::vector<std::pair<int, int>> witnesses;  // (n, m)
};

struct CensusReport {
    Rational c;
    Rational alpha;
    PlaceSet S;
    int n_max = 0;
    std::vector<PreperOrbit> orbits;
    // indices into orbits of the irreducible factors of f^n - f^m
    std::map<std::pair<int, int>, std::vector<std::size_t>> pair_factors;
    long s_integral_count = 0;  // roots, counted with degree
    std::vector<SUnitValue> sunit_values;
    long theorem15_lhs = 0;
    double theorem15_rhs = 0;
};

// Newton polygon of g(z + alpha) at p: valuations v_p(beta - alpha) of the roots.
// The max is nullopt (+inf) when alpha is a root of g; the min skips such roots.
std::optional<Rational> newton_min_valuation(const IntPoly& g, const Rational& alpha, std::uint64_t p);
std::optional<Rational> newton_max_valuation(const IntPoly& g, const Rational& alpha, std::uint64_t p);
// (valuation, multiplicity) for every slope of the polygon
std::vector<std::pair<Rational, int>> newton_root_valuations(const IntPoly& g, const Rational& alpha, std::uint64_t p);

// Every root beta of g satisfies |beta - alpha|_w >= 1 at all finite w outside S.
bool is_s_integral_factor(const IntPoly& g, const Rational& c, const Rational& alpha, const PlaceSet& S);

// Irreducible factors of f^n - f^m for all m < n <= n_max, each kept at its
// first (n, m) in lexicographic order.
CensusReport enumerate_preperiodic(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max);
CensusReport enumerate_preperiodic_serial(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max);

std::vector<SUnitValue> sunit_differences(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckLine> checks;
    bool all_pass() const;
};

// S-unit differences force S-integral factors, and |A n O_S*| <= ((2|P| + 1)^2 - 1)/8.
VerifyReport verify_sunit_theorem(const CensusReport& census);
VerifyReport verify_sunit_theorem(const Rational& c, const Rational& alpha, const PlaceSet& S, int n_max);

// Each delta must lower-bound the distance from alpha to every root of
// f^n - f^m with n <= n_max; archimedean comparisons allow tol.
VerifyReport verify_delta_soundness(const Rational& c, const Rational& alpha, const std::vector<DeltaBound>& deltas,
                                    int n_max, double tol = 1e-8);

// Distinct roots of f^n - f^m versus max{1, n-m-2} max{1, 2^{m-1}} and n.
VerifyReport verify_distinct_roots(const Rational& c, int n_max);

}  // namespace preper
