#pragma once

#include <variant>

#include "blowup/puiseux.hpp"

namespace blowup {

// Type I point: a finite Puiseux germ or the point at infinity.
struct PointI {
    bool infinite = false;
    PuiseuxGerm germ;

    static PointI infinity() { return PointI{true, {}}; }
    static PointI finite(PuiseuxGerm g) { return PointI{false, std::move(g)}; }

    std::string str() const;
    static PointI parse(std::string_view s);

    friend bool operator==(const PointI& a, const PointI& b) {
        return a.infinite == b.infinite && (a.infinite || a.germ == b.germ);
    }
};

// Type II point zeta(germ, |x|^radius_exp), stored canonically: the germ is
// its own truncation below radius_exp.  A value denotes the whole Galois
// orbit of the point; no roots of unity are materialised.
class PointII {
public:
    PointII() = default;
    // Canonicalizes: truncates the germ below r.
    PointII(const PuiseuxGerm& germ, Frac r);

    const PuiseuxGerm& germ() const { return germ_; }
    const Frac& radius_exp() const { return radius_exp_; }

    static PointII gauss() { return PointII({}, Frac(0)); }

    std::string str() const;  // zeta(<germ>, <p/q>)
    static PointII parse(std::string_view s);

    friend bool operator==(const PointII& a, const PointII& b) {
        return a.radius_exp_ == b.radius_exp_ && a.germ_ == b.germ_;
    }

private:
    PuiseuxGerm germ_;
    Frac radius_exp_;
};

// Deterministic total order: radius exponent first, then germ text.
bool point_less(const PointII& a, const PointII& b);

// Multiplicity m, generic multiplicity b (= g), log discrepancy a.
// m | b, a = b * radius_exp is an integer, gcd(a, b/m) = 1.
struct Invariants {
    mpz_class m;
    mpz_class b;
    mpz_class a;
};

Invariants invariants(const PointII& p);
bool is_free(const PointII& p);       // m == b
bool is_integral(const PointII& p);   // b == 1

// A direction (tangent vector) at a Type II point: toward infinity, toward
// the center germ, or the generic direction picked out by a nonzero residue.
struct Direction {
    enum class Kind { ToInfinity, ToCenter, Generic };
    Kind kind = Kind::ToCenter;
    Frac residue;  // nonzero iff Generic

    static Direction to_infinity() { return {Kind::ToInfinity, Frac(0)}; }
    static Direction to_center() { return {Kind::ToCenter, Frac(0)}; }
    static Direction generic(Frac c);

    std::string str() const;
    static Direction parse(std::string_view s);

    friend bool operator==(const Direction& a, const Direction& b) {
        return a.kind == b.kind && a.residue == b.residue;
    }
};

// The order toward infinity: zeta <= xi iff the disk of zeta is contained in
// the disk of xi.  Representatives must share germ prefixes (true for all
// points built from a common germ tower, as resolve guarantees).
bool leq(const PointII& z, const PointII& x);
bool leq(const PointI& p, const PointII& x);

// Least upper bound of two points (finite Type I allowed).
PointII join(const PointII& a, const PointII& b);
PointII join(const PointI& a, const PointII& b);
PointII join(const PointI& a, const PointI& b);

// Hyperbolic distance in log_|x| units.
Frac hyp_dist(const PointII& a, const PointII& b);

// The direction at z containing target (target != z).
Direction direction_of(const PointII& z, const PointII& target);
Direction direction_of(const PointII& z, const PointI& target);

// Multiplicity of a direction: 1 toward infinity, m(z) toward the center,
// b(z) in generic directions.
mpz_class direction_mult(const PointII& z, const Direction& d);

// Membership in the multiplicity-n subtree T_n.
bool in_tree(const PointII& p, const mpz_class& n);
bool in_tree(const PointI& p, const mpz_class& n);

}  // namespace blowup
