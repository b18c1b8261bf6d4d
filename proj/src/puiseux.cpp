#include "blowup/puiseux.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace blowup {

void check_exponent_guard(const Frac& e) {
    if (e.den() > kExponentDenominatorGuard)
        throw std::domain_error("exponent denominator " + e.den().get_str() +
                                " exceeds guard of " + std::to_string(kExponentDenominatorGuard));
}

PuiseuxGerm PuiseuxGerm::monomial(const Frac& coeff, const Frac& exponent) {
    PuiseuxGerm g;
    if (!coeff.is_zero()) {
        check_exponent_guard(exponent);
        g.terms_.emplace(exponent, coeff);
    }
    return g;
}

Frac PuiseuxGerm::coeff_at(const Frac& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Frac(0) : it->second;
}

std::optional<Frac> PuiseuxGerm::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

Frac PuiseuxGerm::max_exponent() const {
    if (terms_.empty()) throw std::domain_error("max_exponent of zero germ");
    return terms_.rbegin()->first;
}

mpz_class PuiseuxGerm::multiplicity() const {
    mpz_class m = 1;
    for (const auto& [e, c] : terms_) m = lcm(m, e.den());
    return m;
}

PuiseuxGerm PuiseuxGerm::truncate(const Frac& r) const {
    PuiseuxGerm out;
    for (const auto& [e, c] : terms_) {
        if (!(e < r)) break;
        out.terms_.emplace(e, c);
    }
    return out;
}

PuiseuxGerm PuiseuxGerm::operator-() const {
    PuiseuxGerm out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

void PuiseuxGerm::set_term(const Frac& e, const Frac& c) {
    if (c.is_zero())
        terms_.erase(e);
    else {
        check_exponent_guard(e);
        terms_[e] = c;
    }
}

PuiseuxGerm& PuiseuxGerm::operator+=(const PuiseuxGerm& o) {
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

PuiseuxGerm& PuiseuxGerm::operator-=(const PuiseuxGerm& o) { return *this += -o; }

PuiseuxGerm operator*(const PuiseuxGerm& a, const PuiseuxGerm& b) {
    PuiseuxGerm out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Frac e = ea + eb;
            check_exponent_guard(e);
            auto it = out.terms_.find(e);
            if (it == out.terms_.end()) {
                Frac c = ca * cb;
                if (!c.is_zero()) out.terms_.emplace(e, c);
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    return out;
}

PuiseuxGerm PuiseuxGerm::scaled(const Frac& c) const {
    PuiseuxGerm out;
    if (c.is_zero()) return out;
    for (const auto& [e, co] : terms_) out.terms_.emplace(e, co * c);
    return out;
}

PuiseuxGerm PuiseuxGerm::exponents_scaled(const Frac& s) const {
    if (s.is_zero()) throw std::domain_error("exponents_scaled: zero scale");
    PuiseuxGerm out;
    for (const auto& [e, c] : terms_) {
        Frac es = e * s;
        check_exponent_guard(es);
        out.terms_.emplace(es, c);
    }
    return out;
}

std::strong_ordering operator<=>(const PuiseuxGerm& a, const PuiseuxGerm& b) {
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (auto c = ia->first <=> ib->first; c != 0) return c;
        if (auto c = ia->second <=> ib->second; c != 0) return c;
    }
    if (ia != a.terms_.end()) return std::strong_ordering::greater;
    if (ib != b.terms_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

// ---- text form ----------------------------------------------------------

namespace {

std::string exponent_str(const Frac& e) {
    if (e.is_integer() && e.sign() >= 0) return e.str();
    return "(" + e.str() + ")";
}

std::string power_str(const Frac& e) {
    if (e == Frac(1)) return "x";
    return "x^" + exponent_str(e);
}

std::string term_str(const Frac& coeff, const Frac& e) {
    if (e.is_zero()) return coeff.str();
    if (coeff == Frac(1)) return power_str(e);
    return coeff.str() + "*" + power_str(e);
}

struct Cursor {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + " of '" +
                                    std::string(s) + "': " + what);
    }
    mpz_class integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return mpz_class(std::string(s.substr(start, pos - start)));
    }
    // "p", "p/q", or a parenthesized version of either.
    Frac rational() {
        if (accept('(')) {
            Frac f = rational();
            expect(')');
            return f;
        }
        mpz_class n = integer();
        if (accept('/')) return Frac(n, integer());
        return Frac(n);
    }
};

// term := coeff ['*' power] | power; returns (coeff, exponent)
std::pair<Frac, Frac> parse_term(Cursor& cur) {
    if (cur.peek() == 'x') {
        ++cur.pos;
        if (cur.accept('^')) return {Frac(1), cur.rational()};
        return {Frac(1), Frac(1)};
    }
    Frac coeff = cur.rational();
    if (cur.accept('*')) {
        if (cur.peek() != 'x') cur.fail("expected 'x' after '*'");
        ++cur.pos;
        if (cur.accept('^')) return {coeff, cur.rational()};
        return {coeff, Frac(1)};
    }
    return {coeff, Frac(0)};
}

// Parses a germ, stopping at end of input or an 'O(' marker (not consumed).
PuiseuxGerm parse_germ_until_O(Cursor& cur, bool* saw_O) {
    PuiseuxGerm out;
    if (saw_O) *saw_O = false;
    bool neg = cur.accept('-');
    if (!neg && cur.eof()) cur.fail("empty germ");
    for (;;) {
        if (cur.peek() == 'O') {
            if (!saw_O) cur.fail("unexpected 'O'");
            *saw_O = true;
            return out;
        }
        auto [coeff, e] = parse_term(cur);
        if (neg) coeff = -coeff;
        if (!coeff.is_zero()) out.set_term(e, out.coeff_at(e) + coeff);
        if (cur.eof()) return out;
        if (cur.accept('+'))
            neg = false;
        else if (cur.accept('-'))
            neg = true;
        else
            return out;
    }
}

}  // namespace

std::string PuiseuxGerm::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            if (c.sign() < 0) out << "-";
            out << term_str(c.sign() < 0 ? -c : c, e);
            first = false;
        } else {
            out << (c.sign() < 0 ? " - " : " + ");
            out << term_str(c.sign() < 0 ? -c : c, e);
        }
    }
    return out.str();
}

PuiseuxGerm PuiseuxGerm::parse(std::string_view s) {
    Cursor cur{s};
    PuiseuxGerm g = parse_germ_until_O(cur, nullptr);
    if (!cur.eof()) cur.fail("trailing input");
    return g;
}

PuiseuxJet::PuiseuxJet(PuiseuxGerm g, Frac o) : germ(g.truncate(o)), order(std::move(o)) {}

Frac PuiseuxJet::val_lb() const {
    auto v = germ.valuation();
    return v ? *v : order;
}

Frac PuiseuxJet::valuation() const {
    auto v = germ.valuation();
    if (!v) throw std::domain_error("jet is zero up to its order; valuation unknown");
    return *v;
}

std::string PuiseuxJet::str() const {
    std::string o = order == Frac(1) ? "x" : "x^" + exponent_str(order);
    return germ.str() + " + O(" + o + ")";
}

PuiseuxJet PuiseuxJet::parse(std::string_view s) {
    Cursor cur{s};
    bool saw_O = false;
    PuiseuxGerm g;
    if (cur.peek() == 'O')
        saw_O = true;
    else
        g = parse_germ_until_O(cur, &saw_O);
    if (!saw_O) cur.fail("jet requires an O(...) order term");
    cur.expect('O');
    cur.expect('(');
    if (cur.peek() != 'x') cur.fail("expected 'x' in O(...)");
    ++cur.pos;
    Frac order(1);
    if (cur.accept('^')) order = cur.rational();
    cur.expect(')');
    if (!cur.eof()) cur.fail("trailing input");
    return PuiseuxJet(std::move(g), order);
}

PuiseuxJet jet_add(const PuiseuxJet& a, const PuiseuxJet& b) {
    Frac order = std::min(a.order, b.order);
    return PuiseuxJet(a.germ + b.germ, order);
}

PuiseuxJet jet_sub(const PuiseuxJet& a, const PuiseuxJet& b) {
    Frac order = std::min(a.order, b.order);
    return PuiseuxJet(a.germ - b.germ, order);
}

PuiseuxJet jet_mul(const PuiseuxJet& a, const PuiseuxJet& b) {
    Frac order = std::min(a.order + b.val_lb(), b.order + a.val_lb());
    return PuiseuxJet(a.germ * b.germ, order);
}

PuiseuxJet jet_scale(const PuiseuxJet& a, const Frac& c) { return PuiseuxJet(a.germ.scaled(c), a.order); }

PuiseuxJet jet_truncate(const PuiseuxJet& a, const Frac& order) {
    return PuiseuxJet(a.germ, std::min(a.order, order));
}

// Multiply by the exact monomial c*x^e.
static PuiseuxJet jet_shift_scale(const PuiseuxJet& a, const Frac& c, const Frac& e) {
    PuiseuxGerm g = a.germ.scaled(c);
    PuiseuxGerm shifted;
    for (const auto& [ex, co] : g.terms()) shifted.set_term(ex + e, co);
    return PuiseuxJet(shifted, a.order + e);
}

PuiseuxJet pow_rational(const PuiseuxJet& u, const Frac& q) {
    if (u.germ.coeff_at(Frac(0)) != Frac(1))
        throw std::domain_error("pow_rational: constant term must be 1");
    PuiseuxGerm h = u.germ;
    h.set_term(Frac(0), Frac(0));
    if (auto v = h.valuation(); v && !(*v > Frac(0)))
        throw std::domain_error("pow_rational: unit must be 1 + h with val(h) > 0");
    PuiseuxJet hj(h, u.order);
    PuiseuxGerm acc = PuiseuxGerm::constant(Frac(1));
    PuiseuxJet power(PuiseuxGerm::constant(Frac(1)), u.order);  // h^k, jet
    Frac binom(1);
    if (!h.is_zero()) {
        Frac vh = *h.valuation();
        long k = 1;
        for (Frac reach = vh; reach < u.order; reach += vh, ++k) {
            binom *= (q - Frac(k - 1)) / Frac(k);
            power = jet_mul(power, hj);
            if (binom.is_zero()) break;  // integer exponent exhausted
            acc += power.germ.scaled(binom);
        }
    }
    return PuiseuxJet(acc, u.order);
}

PuiseuxJet substitute(const PuiseuxJet& f, const PuiseuxJet& g) {
    if (g.germ.is_zero()) {
        // Nothing visible in g: only a constant term of f survives exactly.
        PuiseuxGerm nonconst = f.germ;
        nonconst.set_term(Frac(0), Frac(0));
        if (!nonconst.is_zero())
            throw std::domain_error("substitute: inner jet has no visible leading term");
        Frac c = f.germ.coeff_at(Frac(0));
        return PuiseuxJet(PuiseuxGerm::constant(c), g.order);
    }
    Frac r = g.germ.valuation().value();
    if (!(r > Frac(0))) throw std::domain_error("substitute: inner series needs positive valuation");
    Frac lambda = g.germ.coeff_at(r);
    PuiseuxJet unit = jet_shift_scale(g, Frac(1) / lambda, -r);  // 1 + h, order o_g - r

    Frac order = r * f.order;
    PuiseuxGerm acc;
    for (const auto& [e, c] : f.germ.terms()) {
        Frac scale = c * pow_frac(lambda, e);
        PuiseuxJet piece = e.is_zero() ? PuiseuxJet(PuiseuxGerm::constant(Frac(1)), unit.order)
                                       : pow_rational(unit, e);
        piece = jet_shift_scale(piece, scale, r * e);
        acc += piece.germ;
        order = std::min(order, piece.order);
    }
    return PuiseuxJet(acc, order);
}

PuiseuxJet jet_reciprocal(const PuiseuxJet& f) {
    Frac v = f.valuation();  // throws when unknown
    Frac lead = f.germ.coeff_at(v);
    PuiseuxJet unit = jet_shift_scale(f, Frac(1) / lead, -v);
    return jet_shift_scale(pow_rational(unit, Frac(-1)), Frac(1) / lead, -v);
}

PuiseuxJet invert_series(const PuiseuxJet& g) {
    if (g.germ.is_zero()) throw std::domain_error("invert_series: zero jet");
    Frac vg = g.germ.valuation().value();
    if (!vg.is_integer() || vg.sign() <= 0 || !vg.num().fits_ulong_p())
        throw std::domain_error("invert_series: valuation must be a positive integer");
    unsigned long n = vg.num().get_ui();
    Frac lambda = g.germ.coeff_at(vg);
    if (lambda.sign() <= 0)
        throw std::domain_error("invert_series: leading coefficient must be positive");
    Frac mu;
    {
        Frac inv_lambda = Frac(1) / lambda;
        if (!nth_root_exact(inv_lambda, n, mu))
            throw std::domain_error("invert_series: principal " + std::to_string(n) +
                                    "th root of " + lambda.str() + " is irrational");
    }
    Frac inv_n(1, static_cast<long>(n));
    // Inverse is valid to O(x^t) with t = (order(g) + 1 - n)/n.
    Frac target = (g.order + Frac(1) - vg) * inv_n;
    PuiseuxJet unit = jet_shift_scale(g, Frac(1) / lambda, -vg);  // 1 + h
    PuiseuxGerm h = unit.germ;
    h.set_term(Frac(0), Frac(0));
    PuiseuxJet hj(h, unit.order);

    PuiseuxJet y(PuiseuxGerm::monomial(mu, inv_n), target + inv_n);
    if (hj.is_zero()) return jet_truncate(y, target);
    for (int i = 0; i < 256; ++i) {
        PuiseuxJet hy = substitute(hj, y);
        PuiseuxJet next = pow_rational(jet_add(PuiseuxJet(PuiseuxGerm::constant(Frac(1)), target),
                                               jet_truncate(hy, target)),
                                       -inv_n);
        next = jet_shift_scale(next, mu, inv_n);
        next = jet_truncate(next, std::min(target, next.order));
        if (next.germ == y.germ && next.order == y.order) return next;
        y = next;
    }
    throw std::domain_error("invert_series: no convergence (order too high?)");
}

}  // namespace blowup
