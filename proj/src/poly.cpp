#include "preper/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace preper {

namespace {

template <class T>
std::string render(const Poly<T>& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = f.degree(); k >= 0; --k) {
        T a = f.coeff(static_cast<std::size_t>(k));
        if (a == 0) continue;
        bool neg = a < 0;
        T mag = neg ? T(-a) : a;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        bool unit = mag == 1;
        if (!unit || k == 0) os << mag.get_str();
        if (k >= 1) os << (unit ? "" : "*") << "z";
        if (k >= 2) os << "^" << k;
        first = false;
    }
    return os.str();
}

}  // namespace

std::string to_string(const RatPoly& f) { return render(f); }
std::string to_string(const IntPoly& f) { return render(f); }

RatPoly to_rat(const IntPoly& f) {
    std::vector<Rational> v;
    v.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) v.emplace_back(a);
    return RatPoly(std::move(v));
}

BigInt content(const IntPoly& f) {
    BigInt g = 0;
    for (const auto& a : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& f) {
    if (f.is_zero()) return f;
    BigInt g = content(f);
    if (f.lead() < 0) g = -g;
    std::vector<BigInt> v;
    v.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) v.emplace_back(a / g);
    return IntPoly(std::move(v));
}

IntPoly clear_denominators(const RatPoly& f, Rational* scale) {
    BigInt l = 1;
    for (const auto& a : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    std::vector<BigInt> v;
    v.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) v.emplace_back(a.get_num() * (l / a.get_den()));
    IntPoly raw(std::move(v));
    IntPoly prim = primitive_part(raw);
    if (scale) {
        // f = raw / l and raw = g * prim
        if (f.is_zero()) {
            *scale = 0;
        } else {
            Rational s(raw.lead(), prim.lead());
            s.canonicalize();
            *scale = s / Rational(l);
        }
    }
    return prim;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {RatPoly{}, a};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    Rational inv = 1 / b.lead();
    for (int k = a.degree(); k >= db; --k) {
        Rational t = r[static_cast<std::size_t>(k)] * inv;
        if (t == 0) continue;
        q[static_cast<std::size_t>(k - db)] = t;
        for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k - db + i)] -= t * b.coeff(static_cast<std::size_t>(i));
    }
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder " + to_string(r));
    return q;
}

bool divides(const IntPoly& b, const IntPoly& a, IntPoly* quotient) {
    if (b.is_zero()) return a.is_zero();
    if (a.is_zero()) {
        if (quotient) *quotient = IntPoly{};
        return true;
    }
    if (a.degree() < b.degree()) return false;
    // cheap necessary condition on trailing coefficients
    if (a.coeff(0) != 0 && b.coeff(0) != 0 && !mpz_divisible_p(a.coeff(0).get_mpz_t(), b.coeff(0).get_mpz_t()))
        return false;
    std::vector<BigInt> r = a.coeffs();
    int db = b.degree();
    std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db + 1), BigInt(0));
    const BigInt& lb = b.lead();
    for (int k = a.degree(); k >= db; --k) {
        BigInt& top = r[static_cast<std::size_t>(k)];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
        BigInt t = top / lb;
        q[static_cast<std::size_t>(k - db)] = t;
        for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k - db + i)] -= t * b.coeff(static_cast<std::size_t>(i));
    }
    for (const auto& v : r)
        if (v != 0) return false;
    if (quotient) *quotient = IntPoly(std::move(q));
    return true;
}

RatPoly monic(const RatPoly& f) {
    if (f.is_zero()) return f;
    return f * Rational(1 / f.lead());
}

RatPoly gcd(const RatPoly& a_in, const RatPoly& b_in) {
    RatPoly a = a_in, b = b_in;
    while (!b.is_zero()) {
        RatPoly r = divmod(a, b).second;
        a = std::move(b);
        // keep coefficient growth in check by working with primitive parts
        b = r.is_zero() ? r : to_rat(clear_denominators(r));
    }
    return monic(a);
}

IntPoly taylor_shift(const IntPoly& f, const BigInt& a) {
    std::vector<BigInt> v = f.coeffs();
    int n = f.degree();
    for (int i = 0; i < n; ++i)
        for (int k = n - 1; k >= i; --k) v[static_cast<std::size_t>(k)] += a * v[static_cast<std::size_t>(k + 1)];
    return IntPoly(std::move(v));
}

RatPoly iterate_map(const Rational& c, unsigned n) {
    RatPoly f = RatPoly::x();
    RatPoly cpoly = RatPoly::constant(c);
    for (unsigned k = 0; k < n; ++k) f = f * f + cpoly;
    return f;
}

RatPoly difference_poly(const Rational& c, unsigned n, unsigned m) {
    if (n <= m) throw std::invalid_argument("difference_poly requires n > m >= 0");
    return iterate_map(c, n) - iterate_map(c, m);
}

int distinct_root_count(const RatPoly& F) {
    if (F.is_zero()) throw std::invalid_argument("distinct_root_count: zero polynomial");
    RatPoly g = gcd(F, F.derivative());
    return F.degree() - g.degree();
}

int mobius(unsigned n) {
    if (n == 0) throw std::invalid_argument("mobius(0)");
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

RatPoly dynatomic(const Rational& c, unsigned n) {
    if (n == 0) throw std::invalid_argument("dynatomic requires n >= 1");
    RatPoly num = RatPoly::constant(Rational(1)), den = RatPoly::constant(Rational(1));
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d) continue;
        int mu = mobius(n / d);
        if (mu == 0) continue;
        RatPoly term = iterate_map(c, d) - RatPoly::x();
        if (mu > 0)
            num = num * term;
        else
            den = den * term;
    }
    return exact_div(num, den);
}

RatPoly generalized_dynatomic(const Rational& c, unsigned m, unsigned n) {
    if (m == 0) return dynatomic(c, n);
    RatPoly phi = dynatomic(c, n);
    return exact_div(phi.compose(iterate_map(c, m)), phi.compose(iterate_map(c, m - 1)));
}

}  // namespace preper
