#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace blowup {

// Exact rational number over GMP integers.
// Canonical form: gcd(num, den) = 1, den >= 1, zero is 0/1.
class Frac {
public:
    Frac() : num_(0), den_(1) {}
    Frac(long n) : num_(n), den_(1) {}
    Frac(const mpz_class& n) : num_(n), den_(1) {}
    Frac(long n, long d) : Frac(mpz_class(n), mpz_class(d)) {}
    Frac(mpz_class n, mpz_class d);

    const mpz_class& num() const { return num_; }
    const mpz_class& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return sgn(num_); }

    // Largest integer <= *this.
    mpz_class floor() const;

    Frac operator-() const;
    Frac& operator+=(const Frac& o);
    Frac& operator-=(const Frac& o);
    Frac& operator*=(const Frac& o);
    Frac& operator/=(const Frac& o);

    friend Frac operator+(Frac a, const Frac& b) { return a += b; }
    friend Frac operator-(Frac a, const Frac& b) { return a -= b; }
    friend Frac operator*(Frac a, const Frac& b) { return a *= b; }
    friend Frac operator/(Frac a, const Frac& b) { return a /= b; }

    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Frac& a, const Frac& b);

    // "a" for integers, "a/b" otherwise.
    std::string str() const;
    // Accepts "a" or "a/b" with optional sign.
    static Frac parse(std::string_view s);

private:
    mpz_class num_;
    mpz_class den_;
};

mpz_class lcm(const mpz_class& a, const mpz_class& b);
mpz_class gcd(const mpz_class& a, const mpz_class& b);

// Principal rational q-th root helpers: returns true and sets `out` when the
// exact root exists in Q, false otherwise.  For even n the input must be
// non-negative and the principal (non-negative) root is returned.
bool nth_root_exact(const mpz_class& v, unsigned long n, mpz_class& out);
bool nth_root_exact(const Frac& v, unsigned long n, Frac& out);

// v^e for rational e; requires the principal root to be rational, else throws
// std::domain_error.  v must be positive unless e is an integer.
Frac pow_frac(const Frac& v, const Frac& e);

}  // namespace blowup
