#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace preper {

using BigInt = mpz_class;
// mpq_class keeps num/den reduced with den > 0 after canonicalize().
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);

bool is_integer(const Rational& x);

// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

// Distinct prime factors of |n|, ascending. n = 0 is rejected.
std::vector<BigInt> prime_factors(const BigInt& n);

// Natural log of |n| for n != 0, accurate to a few ulps regardless of size.
double log_abs_int(const BigInt& n);

class Place {
public:
    static Place infinite() { return Place{0}; }
    static Place finite(std::uint64_t p);

    bool is_infinite() const { return p_ == 0; }
    std::uint64_t prime() const;

    std::string to_string() const;
    static Place parse(std::string_view text);

    auto operator<=>(const Place&) const = default;

private:
    explicit Place(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;  // 0 encodes the infinite place
};

// Set of places of Q; always contains the infinite place.
class PlaceSet {
public:
    PlaceSet() { places_.insert(Place::infinite()); }
    explicit PlaceSet(const std::vector<std::uint64_t>& primes);

    void insert(Place v) { places_.insert(v); }
    void erase(Place v);
    bool contains(Place v) const { return places_.count(v) != 0; }
    bool contains_prime(std::uint64_t p) const { return contains(Place::finite(p)); }

    std::size_t size() const { return places_.size(); }
    std::vector<std::uint64_t> finite_primes() const;

    auto begin() const { return places_.begin(); }
    auto end() const { return places_.end(); }

    std::string to_string() const;

    bool operator==(const PlaceSet&) const = default;

private:
    std::set<Place> places_;
};

// v_p(x); std::nullopt stands for +infinity (x = 0).
std::optional<long> padic_val(const Rational& x, std::uint64_t p);
long padic_val_int(const BigInt& x, std::uint64_t p);  // x != 0

// log|x|_v; -infinity for x = 0.
double log_abs(const Rational& x, const Place& v);

// h(p/q) = log max(|p|, |q|).
double height(const Rational& x);

bool is_s_unit(const Rational& x, const PlaceSet& S);

// Removes every factor of the primes in S from |n|.
BigInt strip_primes(const BigInt& n, const PlaceSet& S);

}  // namespace preper
