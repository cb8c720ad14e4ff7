#pragma once

#include "preper/exact.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace preper {

// Dense univariate polynomial, coefficients ascending by degree.
// The zero polynomial has no coefficients and degree -1.
template <class T>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
    static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
    static Poly monomial(const T& a, std::size_t k) {
        std::vector<T> v(k + 1, T(0));
        v[k] = a;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    const T& lead() const { return c_.back(); }

    T operator()(const T& z) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> v(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * T(static_cast<long>(k));
        return Poly(std::move(v));
    }

    // this(g(z))
    Poly compose(const Poly& g) const {
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly& operator*=(const T& a) {
        for (auto& v : c_) v *= a;
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator-(Poly a) { return a *= T(-1); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(v));
    }
    bool operator==(const Poly& o) const { return c_ == o.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using RatPoly = Poly<Rational>;
using IntPoly = Poly<BigInt>;

std::string to_string(const RatPoly& f);
std::string to_string(const IntPoly& f);

RatPoly to_rat(const IntPoly& f);

// Scales f by the lcm of denominators and returns the primitive integer part
// (positive leading coefficient) with f = scale * result.
IntPoly clear_denominators(const RatPoly& f, Rational* scale = nullptr);
BigInt content(const IntPoly& f);
IntPoly primitive_part(const IntPoly& f);  // sign-normalized: lead > 0

// Division with remainder over Q.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
// Exact division; throws std::logic_error on a nonzero remainder.
RatPoly exact_div(const RatPoly& a, const RatPoly& b);
// Exact division over Z; returns false if b does not divide a in Z[z].
bool divides(const IntPoly& b, const IntPoly& a, IntPoly* quotient = nullptr);

RatPoly monic(const RatPoly& f);
RatPoly gcd(const RatPoly& a, const RatPoly& b);  // monic, gcd(0,0) = 0

// f(z + a)
IntPoly taylor_shift(const IntPoly& f, const BigInt& a);

RatPoly iterate_map(const Rational& c, unsigned n);
RatPoly difference_poly(const Rational& c, unsigned n, unsigned m);
int distinct_root_count(const RatPoly& F);

int mobius(unsigned n);
RatPoly dynatomic(const Rational& c, unsigned n);
RatPoly generalized_dynatomic(const Rational& c, unsigned m, unsigned n);

}  // namespace preper
