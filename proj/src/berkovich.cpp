#include "blowup/berkovich.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace blowup {

std::string PointI::str() const { return infinite ? "inf" : germ.str(); }

PointI PointI::parse(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (s.substr(b, e - b) == "inf") return infinity();
    return finite(PuiseuxGerm::parse(s));
}

PointII::PointII(const PuiseuxGerm& germ, Frac r) : germ_(germ.truncate(r)), radius_exp_(std::move(r)) {}

std::string PointII::str() const {
    return "zeta(" + germ_.str() + ", " + radius_exp_.str() + ")";
}

PointII PointII::parse(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    s = s.substr(b, e - b);
    if (s.substr(0, 5) != "zeta(" || s.back() != ')')
        throw std::invalid_argument("PointII: expected zeta(<germ>, <p/q>) in '" + std::string(s) +
                                    "'");
    std::string_view inner = s.substr(5, s.size() - 6);
    // Split at the top-level comma (exponents may be parenthesized).
    int depth = 0;
    size_t split = std::string_view::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(') ++depth;
        else if (inner[i] == ')') --depth;
        else if (inner[i] == ',' && depth == 0) split = i;
    }
    if (split == std::string_view::npos)
        throw std::invalid_argument("PointII: missing radius exponent in '" + std::string(s) + "'");
    PuiseuxGerm g = PuiseuxGerm::parse(inner.substr(0, split));
    Frac r = Frac::parse([&] {
        std::string_view t = inner.substr(split + 1);
        size_t tb = 0, te = t.size();
        while (tb < te && std::isspace(static_cast<unsigned char>(t[tb]))) ++tb;
        while (te > tb && std::isspace(static_cast<unsigned char>(t[te - 1]))) --te;
        return t.substr(tb, te - tb);
    }());
    return PointII(g, r);
}

bool point_less(const PointII& a, const PointII& b) {
    if (a.radius_exp() != b.radius_exp()) return a.radius_exp() < b.radius_exp();
    return (a.germ() <=> b.germ()) < 0;
}

Invariants invariants(const PointII& p) {
    Invariants inv;
    inv.m = p.germ().multiplicity();
    inv.b = lcm(inv.m, p.radius_exp().den());
    Frac a = Frac(inv.b) * p.radius_exp();
    if (!a.is_integer()) throw std::logic_error("invariants: a not integral");
    inv.a = a.num();
    return inv;
}

bool is_free(const PointII& p) {
    Invariants inv = invariants(p);
    return inv.m == inv.b;
}

bool is_integral(const PointII& p) { return invariants(p).b == 1; }

Direction Direction::generic(Frac c) {
    if (c.is_zero()) throw std::invalid_argument("Direction: generic residue must be nonzero");
    return {Kind::Generic, std::move(c)};
}

std::string Direction::str() const {
    switch (kind) {
        case Kind::ToInfinity: return "inf";
        case Kind::ToCenter: return "center";
        case Kind::Generic: return residue.str();
    }
    return {};
}

Direction Direction::parse(std::string_view s) {
    if (s == "inf") return to_infinity();
    if (s == "center") return to_center();
    return generic(Frac::parse(s));
}

namespace {

// Valuation of the difference of two germs; nullopt = +infinity (equal).
std::optional<Frac> diff_val(const PuiseuxGerm& a, const PuiseuxGerm& b) {
    return (a - b).valuation();
}

}  // namespace

bool leq(const PointII& z, const PointII& x) {
    if (z.radius_exp() < x.radius_exp()) return false;
    auto v = diff_val(z.germ(), x.germ());
    return !v || *v >= x.radius_exp();
}

bool leq(const PointI& p, const PointII& x) {
    if (p.infinite) return false;
    auto v = diff_val(p.germ, x.germ());
    return !v || *v >= x.radius_exp();
}

PointII join(const PointII& a, const PointII& b) {
    Frac r = std::min(a.radius_exp(), b.radius_exp());
    if (auto v = diff_val(a.germ(), b.germ()); v && *v < r) r = *v;
    return PointII(a.germ(), r);
}

PointII join(const PointI& a, const PointII& b) {
    if (a.infinite) throw std::invalid_argument("join: infinity is not allowed");
    Frac r = b.radius_exp();
    if (auto v = diff_val(a.germ, b.germ()); v && *v < r) r = *v;
    return PointII(a.germ, r);
}

PointII join(const PointI& a, const PointI& b) {
    if (a.infinite || b.infinite) throw std::invalid_argument("join: infinity is not allowed");
    auto v = diff_val(a.germ, b.germ);
    if (!v) throw std::invalid_argument("join: identical Type I points have no Type II join");
    return PointII(a.germ, *v);
}

Frac hyp_dist(const PointII& a, const PointII& b) {
    PointII j = join(a, b);
    return (a.radius_exp() - j.radius_exp()) + (b.radius_exp() - j.radius_exp());
}

Direction direction_of(const PointII& z, const PointII& target) {
    if (target == z) throw std::invalid_argument("direction_of: target equals base point");
    if (!leq(target, z)) return Direction::to_infinity();
    Frac c = target.germ().coeff_at(z.radius_exp());
    return c.is_zero() ? Direction::to_center() : Direction::generic(c);
}

Direction direction_of(const PointII& z, const PointI& target) {
    if (target.infinite) return Direction::to_infinity();
    if (!leq(target, z)) return Direction::to_infinity();
    Frac c = target.germ.coeff_at(z.radius_exp());
    return c.is_zero() ? Direction::to_center() : Direction::generic(c);
}

mpz_class direction_mult(const PointII& z, const Direction& d) {
    Invariants inv = invariants(z);
    switch (d.kind) {
        case Direction::Kind::ToInfinity: return 1;
        case Direction::Kind::ToCenter: return inv.m;
        case Direction::Kind::Generic: return inv.b;
    }
    return 1;
}

bool in_tree(const PointII& p, const mpz_class& n) {
    return n % p.germ().multiplicity() == 0;
}

bool in_tree(const PointI& p, const mpz_class& n) {
    if (p.infinite) return true;
    return n % p.germ.multiplicity() == 0;
}

}  // namespace blowup
