#pragma once

#include "preper/poly.hpp"

#include <utility>
#include <vector>

namespace preper {

struct Factorization {
    Rational unit;
    // Primitive irreducible factors with positive leading coefficient.
    std::vector<std::pair<IntPoly, int>> factors;

    RatPoly expand() const;
};

// Complete factorization over Q: squarefree split, modular distinct/equal
// degree factorization, quadratic Hensel lifting, subset recombination.
// Deterministic: the equal-degree splitter uses a fixed-seed generator.
Factorization factor_over_integers(const IntPoly& F);
Factorization factor_over_rationals(const RatPoly& F);

// Squarefree decomposition: pairs (primitive part, multiplicity).
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& F);

}  // namespace preper
