#pragma once

#include "preper/exact.hpp"

#include <stdexcept>
#include <string>

namespace preper {

enum class DeltaMethod { JuliaDistance, Kosek, Hyperbolic, Attracting, Indifferent };
std::string to_string(DeltaMethod m);
DeltaMethod parse_delta_method(const std::string& s);

// Certified lower bound on the distance from alpha to the nearest
// preperiodic point at one place: delta >= exp(-neg_log_delta_upper).
struct DeltaBound {
    Place place = Place::infinite();
    double neg_log_delta_upper = 0;
    DeltaMethod method = DeltaMethod::JuliaDistance;
    bool certified = false;
    // finite places only: delta = p^{-val_num/val_den} exactly
    long val_num = 0;
    long val_den = 1;

    double delta_lower() const;
};

// The archimedean hypothesis (escape by epsilon, or an attracting cycle of
// period <= t) could not be machine-checked.
class HypothesisUnverified : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A proven postcondition failed to hold; indicates a bug.
class InternalCheckFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace preper
