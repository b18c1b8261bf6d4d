#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "blowup/frac.hpp"

namespace blowup {

// Guard against runaway exponent denominators in iterated substitutions.
inline constexpr long kExponentDenominatorGuard = 10000;

void check_exponent_guard(const Frac& e);

// Finite Puiseux series over the exact rationals: a sorted map from exponent
// to nonzero coefficient.  The empty map is 0.
//
// Coefficients live in Q rather than an algebraically closed field: every
// computation here (multiplicities, Farey parameters, adjacency, the blowup
// calculus) depends only on exponents and exact coefficient equality, and
// genericity is realised by sampling distinct rational values.
class PuiseuxGerm {
public:
    PuiseuxGerm() = default;
    static PuiseuxGerm monomial(const Frac& coeff, const Frac& exponent);
    static PuiseuxGerm constant(const Frac& c) { return monomial(c, Frac(0)); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Frac, Frac>& terms() const { return terms_; }
    Frac coeff_at(const Frac& e) const;

    // Least exponent; nullopt encodes +infinity (the zero germ).
    std::optional<Frac> valuation() const;
    Frac max_exponent() const;

    // LCM of the exponent denominators; 1 for the zero germ.
    mpz_class multiplicity() const;

    // Keeps exactly the terms with exponent < r.
    PuiseuxGerm truncate(const Frac& r) const;

    PuiseuxGerm operator-() const;
    PuiseuxGerm& operator+=(const PuiseuxGerm& o);
    PuiseuxGerm& operator-=(const PuiseuxGerm& o);
    friend PuiseuxGerm operator+(PuiseuxGerm a, const PuiseuxGerm& b) { return a += b; }
    friend PuiseuxGerm operator-(PuiseuxGerm a, const PuiseuxGerm& b) { return a -= b; }
    friend PuiseuxGerm operator*(const PuiseuxGerm& a, const PuiseuxGerm& b);
    PuiseuxGerm scaled(const Frac& c) const;
    // Multiplies every exponent by s (s != 0).
    PuiseuxGerm exponents_scaled(const Frac& s) const;

    friend bool operator==(const PuiseuxGerm& a, const PuiseuxGerm& b) {
        return a.terms_ == b.terms_;
    }
    friend std::strong_ordering operator<=>(const PuiseuxGerm& a, const PuiseuxGerm& b);

    void set_term(const Frac& e, const Frac& c);

    // Text grammar: terms `c*x^(p/q)` joined by +/-, e.g. "x^(5/7) + x + x^(4/3)".
    std::string str() const;
    static PuiseuxGerm parse(std::string_view s);

private:
    std::map<Frac, Frac> terms_;
};

// A germ with an explicit truncation order: all stored exponents are < order
// and terms at or beyond are unknown, written "+ O(x^order)".
struct PuiseuxJet {
    PuiseuxGerm germ;
    Frac order;

    PuiseuxJet() : order(0) {}
    PuiseuxJet(PuiseuxGerm g, Frac o);

    bool is_zero() const { return germ.is_zero(); }
    // Known lower bound for the valuation: the germ's valuation, or the
    // order when nothing is visible yet.
    Frac val_lb() const;
    // Exact valuation; throws if the jet is zero up to its order.
    Frac valuation() const;

    std::string str() const;
    static PuiseuxJet parse(std::string_view s);

    friend bool operator==(const PuiseuxJet& a, const PuiseuxJet& b) {
        return a.germ == b.germ && a.order == b.order;
    }
};

PuiseuxJet jet_add(const PuiseuxJet& a, const PuiseuxJet& b);
PuiseuxJet jet_sub(const PuiseuxJet& a, const PuiseuxJet& b);
PuiseuxJet jet_mul(const PuiseuxJet& a, const PuiseuxJet& b);
PuiseuxJet jet_scale(const PuiseuxJet& a, const Frac& c);
PuiseuxJet jet_truncate(const PuiseuxJet& a, const Frac& order);

// Binomial series (1 + h)^q for a jet u = 1 + h with val(h) > 0; the unique
// q-th power with constant coefficient 1.  Throws if the constant term is not 1.
PuiseuxJet pow_rational(const PuiseuxJet& u, const Frac& q);

// f o g for val(g) > 0.  Monomials c*x^(a/b) map to c * lambda^(a/b) *
// x^(r*a/b) * (1+h)^(a/b) where g = lambda*x^r*(1+h); only principal rational
// roots of lambda are supported (throws std::domain_error otherwise).
PuiseuxJet substitute(const PuiseuxJet& f, const PuiseuxJet& g);

// Compositional inverse of g = lambda*x^n*(1+h), n >= 1, as a jet in x^(1/n):
// substitute(result, g) = x + O(order).  The principal n-th root of lambda
// must be rational.
PuiseuxJet invert_series(const PuiseuxJet& g);

// Reciprocal jet 1/f for a jet with known valuation.
PuiseuxJet jet_reciprocal(const PuiseuxJet& f);

}  // namespace blowup
