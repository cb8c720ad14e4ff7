#include "preper/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace preper {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
            s.end());
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](unsigned char ch) { return std::isdigit(ch); });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    if (num[0] == '+') num.erase(0, 1);
    BigInt n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }
std::string to_string(const BigInt& x) { return x.get_str(); }

bool is_integer(const Rational& x) { return x.get_den() == 1; }

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

BigInt pollard_brent(const BigInt& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long seed = 1;; ++seed) {
        BigInt y = 2, x, q = 1, g = 1, ys;
        unsigned long r = 1, m = 64;
        auto step = [&](const BigInt& v) {
            BigInt w = v * v + seed;
            return BigInt(w % n);
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = step(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    BigInt diff = x - y;
                    q = q * abs(diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                BigInt diff = abs(BigInt(x - ys));
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(BigInt n, std::vector<BigInt>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        out.push_back(n);
        return;
    }
    BigInt d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<BigInt> prime_factors(const BigInt& n_in) {
    if (n_in == 0) throw std::invalid_argument("prime_factors: zero has no factorization");
    BigInt n = abs(n_in);
    std::vector<BigInt> out;
    for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    std::vector<BigInt> rest;
    factor_into(n, rest);
    out.insert(out.end(), rest.begin(), rest.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double log_abs_int(const BigInt& n) {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    long e = 0;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

Place Place::finite(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
    return Place{p};
}

std::uint64_t Place::prime() const {
    if (is_infinite()) throw std::logic_error("the infinite place has no prime");
    return p_;
}

std::string Place::to_string() const { return is_infinite() ? "inf" : std::to_string(p_); }

Place Place::parse(std::string_view text) {
    if (text == "inf" || text == "oo" || text == "infinity") return infinite();
    std::string s(text);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw std::invalid_argument("malformed place: '" + s + "'");
    return finite(std::stoull(s));
}

PlaceSet::PlaceSet(const std::vector<std::uint64_t>& primes) : PlaceSet() {
    for (auto p : primes) places_.insert(Place::finite(p));
}

void PlaceSet::erase(Place v) {
    if (v.is_infinite()) throw std::invalid_argument("the infinite place cannot be removed from S");
    places_.erase(v);
}

std::vector<std::uint64_t> PlaceSet::finite_primes() const {
    std::vector<std::uint64_t> out;
    for (const auto& v : places_)
        if (!v.is_infinite()) out.push_back(v.prime());
    return out;
}

std::string PlaceSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& v : places_) {
        if (!first) s += ",";
        s += v.to_string();
        first = false;
    }
    return s + "}";
}

long padic_val_int(const BigInt& x, std::uint64_t p) {
    if (x == 0) throw std::invalid_argument("padic_val_int: zero");
    BigInt t = x;
    BigInt pp(static_cast<unsigned long>(p));
    return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

std::optional<long> padic_val(const Rational& x, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("padic_val: not a prime: " + std::to_string(p));
    if (x == 0) return std::nullopt;
    return padic_val_int(x.get_num(), p) - padic_val_int(x.get_den(), p);
}

double log_abs(const Rational& x, const Place& v) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    if (v.is_infinite()) return log_abs_int(x.get_num()) - log_abs_int(x.get_den());
    long k = *padic_val(x, v.prime());
    return -static_cast<double>(k) * std::log(static_cast<double>(v.prime()));
}

double height(const Rational& x) {
    BigInt n = abs(x.get_num());
    const BigInt& d = x.get_den();
    return n > d ? log_abs_int(n) : log_abs_int(d);
}

BigInt strip_primes(const BigInt& n, const PlaceSet& S) {
    BigInt t = abs(n);
    if (t == 0) return t;
    for (auto p : S.finite_primes()) {
        BigInt pp(static_cast<unsigned long>(p));
        mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t());
    }
    return t;
}

bool is_s_unit(const Rational& x, const PlaceSet& S) {
    if (x == 0) return false;
    return strip_primes(x.get_num(), S) == 1 && strip_primes(x.get_den(), S) == 1;
}

}  // namespace preper
