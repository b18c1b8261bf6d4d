#include "blowup/skew.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "blowup/newton.hpp"

namespace blowup {

namespace {

// Effectively-exact jets for monomial data.
const Frac kHugeOrder(1000000000L);

Frac abs_frac(const Frac& f) { return f.sign() < 0 ? -f : f; }

}  // namespace

// ---- Newton polygon helpers ---------------------------------------------

std::vector<RootVal> newton_root_valuations(const std::vector<PuiseuxGerm>& coeffs) {
    long n = static_cast<long>(coeffs.size()) - 1;
    while (n >= 0 && coeffs[static_cast<size_t>(n)].is_zero()) --n;
    if (n < 0) throw std::invalid_argument("newton_root_valuations: zero polynomial");
    std::vector<RootVal> out;
    long i0 = 0;
    while (coeffs[static_cast<size_t>(i0)].is_zero()) ++i0;
    if (i0 > 0) out.push_back({std::nullopt, i0});
    std::vector<std::pair<long, Frac>> pts;
    for (long i = i0; i <= n; ++i)
        if (!coeffs[static_cast<size_t>(i)].is_zero())
            pts.emplace_back(i, *coeffs[static_cast<size_t>(i)].valuation());
    // Lower convex hull of (i, val(coeffs[i])).
    std::vector<std::pair<long, Frac>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            Frac lhs = (b.second - a.second) * Frac(p.first - a.first);
            Frac rhs = (p.second - a.second) * Frac(b.first - a.first);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        long di = hull[k + 1].first - hull[k].first;
        Frac val = (hull[k].second - hull[k + 1].second) / Frac(di);
        out.push_back({val, di});
    }
    return out;
}

std::optional<Frac> tropical_valuation(const std::vector<PuiseuxGerm>& coeffs, const Frac& t) {
    std::optional<Frac> best;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        Frac v = *coeffs[i].valuation() + t * Frac(static_cast<long>(i));
        if (!best || v < *best) best = v;
    }
    return best;
}

std::vector<std::pair<long, Frac>> reduction_support(const std::vector<PuiseuxGerm>& coeffs,
                                                     const Frac& t, const Frac& v) {
    std::vector<std::pair<long, Frac>> out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        Frac c = coeffs[i].coeff_at(v - t * Frac(static_cast<long>(i)));
        if (!c.is_zero()) out.emplace_back(static_cast<long>(i), c);
    }
    return out;
}

// ---- Phi1 / YPoly ---------------------------------------------------------

Phi1::Phi1() : unit(PuiseuxGerm::constant(Frac(1)), kHugeOrder) {}

bool Phi1::is_monomial() const { return unit.germ == PuiseuxGerm::constant(Frac(1)); }

PuiseuxJet Phi1::as_jet() const {
    PuiseuxGerm g;
    for (const auto& [e, c] : unit.germ.terms()) g.set_term(e + Frac(n), c * lambda);
    return PuiseuxJet(g, unit.order + Frac(n));
}

std::string Phi1::str() const {
    std::string s;
    if (!(lambda == Frac(1))) s += lambda.str() + "*";
    s += n == 1 ? "x" : "x^" + std::to_string(n);
    if (!is_monomial()) s += "*(" + unit.str() + ")";
    return s;
}

YPoly YPoly::constant(PuiseuxGerm g) {
    YPoly p;
    p.coeffs.push_back(std::move(g));
    p.trim();
    return p;
}

YPoly YPoly::y() {
    YPoly p;
    p.coeffs = {PuiseuxGerm{}, PuiseuxGerm::constant(Frac(1))};
    return p;
}

long YPoly::deg() const {
    for (long i = static_cast<long>(coeffs.size()) - 1; i >= 0; --i)
        if (!coeffs[static_cast<size_t>(i)].is_zero()) return i;
    return -1;
}

const PuiseuxGerm& YPoly::coeff(size_t d) const {
    static const PuiseuxGerm zero;
    return d < coeffs.size() ? coeffs[d] : zero;
}

void YPoly::set_coeff(size_t d, PuiseuxGerm g) {
    if (coeffs.size() <= d) coeffs.resize(d + 1);
    coeffs[d] = std::move(g);
    trim();
}

void YPoly::trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

PuiseuxGerm YPoly::eval(const PuiseuxGerm& y) const {
    PuiseuxGerm acc;
    for (long i = static_cast<long>(coeffs.size()) - 1; i >= 0; --i)
        acc = acc * y + coeffs[static_cast<size_t>(i)];
    return acc;
}

YPoly YPoly::expanded_at(const PuiseuxGerm& center) const {
    // P(center + z), exactly, via binomial coefficients.
    YPoly out;
    long n = deg();
    if (n < 0) return out;
    out.coeffs.resize(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        PuiseuxGerm acc;
        PuiseuxGerm cpow = PuiseuxGerm::constant(Frac(1));
        Frac binom(1);
        for (long j = i; j <= n; ++j) {
            if (j > i) {
                cpow = cpow * center;
                binom = binom * Frac(j) / Frac(j - i);
            }
            acc += coeffs[static_cast<size_t>(j)].scaled(binom) * cpow;
        }
        out.coeffs[static_cast<size_t>(i)] = std::move(acc);
    }
    out.trim();
    return out;
}

YPoly YPoly::operator+(const YPoly& o) const {
    YPoly out;
    out.coeffs.resize(std::max(coeffs.size(), o.coeffs.size()));
    for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = coeff(i) + o.coeff(i);
    out.trim();
    return out;
}

YPoly YPoly::operator-(const YPoly& o) const {
    YPoly out;
    out.coeffs.resize(std::max(coeffs.size(), o.coeffs.size()));
    for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = coeff(i) - o.coeff(i);
    out.trim();
    return out;
}

YPoly YPoly::operator*(const YPoly& o) const {
    YPoly out;
    if (is_zero() || o.is_zero()) return out;
    out.coeffs.resize(coeffs.size() + o.coeffs.size() - 1);
    for (size_t i = 0; i < coeffs.size(); ++i)
        for (size_t j = 0; j < o.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * o.coeffs[j];
    out.trim();
    return out;
}

YPoly YPoly::scaled(const PuiseuxGerm& g) const {
    YPoly out;
    out.coeffs.resize(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] = coeffs[i] * g;
    out.trim();
    return out;
}

namespace {

std::string germ_factor_str(const PuiseuxGerm& g) {
    if (g.terms().size() == 1) return g.str();
    return "(" + g.str() + ")";
}

}  // namespace

std::string YPoly::str() const {
    long n = deg();
    if (n < 0) return "0";
    std::ostringstream out;
    bool first = true;
    for (long d = n; d >= 0; --d) {
        const PuiseuxGerm& c = coeff(static_cast<size_t>(d));
        if (c.is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        if (d == 0) {
            out << germ_factor_str(c);
        } else {
            std::string ys = d == 1 ? "y" : "y^" + std::to_string(d);
            if (c == PuiseuxGerm::constant(Frac(1)))
                out << ys;
            else
                out << germ_factor_str(c) << "*" << ys;
        }
    }
    return out.str();
}

// ---- SkewProduct ----------------------------------------------------------

long SkewProduct::rdeg() const { return std::max(P.deg(), Q.deg()); }

Frac SkewProduct::scale() const { return Frac(1, phi1.n); }

mpz_class SkewProduct::multiplicity() const {
    mpz_class m = 1;
    for (const auto& c : P.coeffs) m = lcm(m, c.multiplicity());
    for (const auto& c : Q.coeffs) m = lcm(m, c.multiplicity());
    return m;
}

SkewProduct SkewProduct::identity() {
    SkewProduct s;
    s.P = YPoly::y();
    s.Q = YPoly::constant(PuiseuxGerm::constant(Frac(1)));
    return s;
}

std::string SkewProduct::str() const {
    std::string s = "(" + phi1.str() + ", " + P.str();
    if (!(Q.deg() == 0 && Q.coeff(0) == PuiseuxGerm::constant(Frac(1)))) s += "/" + Q.str();
    return s + ")";
}

// ---- parsing --------------------------------------------------------------

namespace {

struct PCur {
    std::string_view s;
    size_t pos = 0;

    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        ws();
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
        throw std::invalid_argument("skew parse error at position " + std::to_string(pos) +
                                    " of '" + std::string(s) + "': " + what);
    }
    mpz_class integer() {
        ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return mpz_class(std::string(s.substr(start, pos - start)));
    }
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

struct RatPoly {
    YPoly num;
    YPoly den;
};

RatPoly rp_const(PuiseuxGerm g) {
    return {YPoly::constant(std::move(g)), YPoly::constant(PuiseuxGerm::constant(Frac(1)))};
}

RatPoly rp_add(const RatPoly& a, const RatPoly& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}
RatPoly rp_mul(const RatPoly& a, const RatPoly& b) { return {a.num * b.num, a.den * b.den}; }
RatPoly rp_div(const RatPoly& a, const RatPoly& b) {
    if (b.num.is_zero()) throw std::invalid_argument("skew parse: division by zero polynomial");
    return {a.num * b.den, a.den * b.num};
}

RatPoly parse_expr(PCur& cur);

RatPoly parse_factor(PCur& cur) {
    if (cur.accept('-')) {
        RatPoly f = parse_factor(cur);
        f.num = YPoly::zero() - f.num;
        return f;
    }
    char c = cur.peek();
    if (c == '(') {
        cur.expect('(');
        RatPoly e = parse_expr(cur);
        cur.expect(')');
        return e;
    }
    if (c == 'x') {
        ++cur.pos;
        Frac e(1);
        // Fractional exponents must be parenthesized; a bare integer leaves
        // '/' available as division.
        if (cur.accept('^')) e = cur.peek() == '(' ? cur.rational() : Frac(cur.integer());
        return rp_const(PuiseuxGerm::monomial(Frac(1), e));
    }
    if (c == 'y') {
        ++cur.pos;
        long d = 1;
        if (cur.accept('^')) {
            mpz_class k = cur.integer();
            if (k < 0 || !k.fits_slong_p())
                cur.fail("y exponent must be a small non-negative integer");
            d = k.get_si();
        }
        RatPoly out = rp_const(PuiseuxGerm::constant(Frac(1)));
        out.num.coeffs.assign(static_cast<size_t>(d) + 1, PuiseuxGerm{});
        out.num.coeffs[static_cast<size_t>(d)] = PuiseuxGerm::constant(Frac(1));
        return out;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
        return rp_const(PuiseuxGerm::constant(cur.rational()));
    cur.fail("expected a factor");
}

RatPoly parse_term(PCur& cur) {
    RatPoly acc = parse_factor(cur);
    for (;;) {
        if (cur.accept('*'))
            acc = rp_mul(acc, parse_factor(cur));
        else if (cur.accept('/'))
            acc = rp_div(acc, parse_factor(cur));
        else
            return acc;
    }
}

RatPoly parse_expr(PCur& cur) {
    RatPoly acc = parse_term(cur);
    for (;;) {
        if (cur.accept('+'))
            acc = rp_add(acc, parse_term(cur));
        else if (cur.accept('-'))
            acc = rp_sub(acc, parse_term(cur));
        else
            return acc;
    }
}

Phi1 parse_phi1(std::string_view text) {
    PCur cur{text};
    Phi1 f;
    if (cur.peek() != 'x') {
        f.lambda = cur.rational();
        cur.expect('*');
    }
    if (cur.peek() != 'x') cur.fail("expected 'x' in the first component");
    ++cur.pos;
    f.n = 1;
    if (cur.accept('^')) {
        mpz_class k = cur.integer();
        if (k < 1 || !k.fits_slong_p()) cur.fail("x exponent must be a positive integer");
        f.n = k.get_si();
    }
    if (cur.accept('*')) {
        cur.expect('(');
        int depth = 1;
        size_t start = cur.pos;
        while (cur.pos < cur.s.size() && depth > 0) {
            if (cur.s[cur.pos] == '(') ++depth;
            if (cur.s[cur.pos] == ')') --depth;
            ++cur.pos;
        }
        if (depth != 0) cur.fail("unbalanced unit parentheses");
        f.unit = PuiseuxJet::parse(cur.s.substr(start, cur.pos - 1 - start));
    }
    cur.ws();
    if (cur.pos != cur.s.size()) cur.fail("trailing input after the first component");
    if (f.lambda.sign() <= 0) cur.fail("lambda must be positive");
    if (f.unit.germ.coeff_at(Frac(0)) != Frac(1)) cur.fail("unit must have constant term 1");
    return f;
}

}  // namespace

SkewProduct SkewProduct::parse(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    s = s.substr(b, e - b);
    if (s.empty() || s.front() != '(' || s.back() != ')')
        throw std::invalid_argument("SkewProduct: expected (<phi1>, <phi2>)");
    std::string_view inner = s.substr(1, s.size() - 2);
    int depth = 0;
    size_t split = std::string_view::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '(') ++depth;
        else if (inner[i] == ')') --depth;
        else if (inner[i] == ',' && depth == 0) {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos)
        throw std::invalid_argument("SkewProduct: missing second component");
    SkewProduct out;
    out.phi1 = parse_phi1(inner.substr(0, split));
    PCur cur{inner.substr(split + 1)};
    RatPoly rp = parse_expr(cur);
    cur.ws();
    if (cur.pos != cur.s.size()) cur.fail("trailing input after the second component");
    out.P = rp.num;
    out.Q = rp.den;
    if (out.Q.is_zero()) throw std::invalid_argument("SkewProduct: zero denominator");
    if (out.rdeg() < 1) throw std::invalid_argument("SkewProduct: relative degree must be >= 1");
    return out;
}

// ---- mapping of points ----------------------------------------------------

namespace {

PuiseuxJet ratio_jet(const PuiseuxGerm& num, const PuiseuxGerm& den, const Frac& order) {
    Frac pad = order + abs_frac(*num.valuation()) + abs_frac(*den.valuation()) * Frac(2) + Frac(1);
    return jet_mul(PuiseuxJet(num, pad), jet_reciprocal(PuiseuxJet(den, pad)));
}

PuiseuxJet phi1_inverse(const Phi1& f) { return invert_series(f.as_jet()); }

}  // namespace

ImageI map_pointI(const SkewProduct& phi, const PointI& p, const Frac& order) {
    PuiseuxGerm num, den;
    if (p.infinite) {
        long dp = phi.P.deg(), dq = phi.Q.deg();
        if (dp > dq) return {true, {}};
        if (dp < dq) return {false, PuiseuxJet({}, order)};
        num = phi.P.coeff(static_cast<size_t>(dp));
        den = phi.Q.coeff(static_cast<size_t>(dq));
    } else {
        num = phi.P.eval(p.germ);
        den = phi.Q.eval(p.germ);
        if (den.is_zero()) {
            if (num.is_zero()) throw PoleError("phi2 is 0/0 at y = " + p.germ.str());
            throw PoleError("pole of phi2 at y = " + p.germ.str());
        }
        if (num.is_zero()) return {false, PuiseuxJet({}, order)};
    }
    PuiseuxJet value = ratio_jet(num, den, order * Frac(phi.phi1.n));
    PuiseuxJet image = substitute(value, phi1_inverse(phi.phi1));
    return {false, jet_truncate(image, order)};
}

PointII map_pointII(const SkewProduct& phi, const PointII& z) { return map_pointII(phi, z, 0); }

namespace {

// P and Q proportional over the germs: phi2 does not depend on y at all.
bool y_constant(const YPoly& P, const YPoly& Q) {
    long d = std::max(P.deg(), Q.deg());
    for (long i = 0; i <= d; ++i)
        for (long j = i + 1; j <= d; ++j)
            if (!(P.coeff(static_cast<size_t>(i)) * Q.coeff(static_cast<size_t>(j)) ==
                  P.coeff(static_cast<size_t>(j)) * Q.coeff(static_cast<size_t>(i))))
                return false;
    return true;
}

}  // namespace

PointII map_pointII(const SkewProduct& phi, const PointII& z, int sample_override,
                    const Frac& order_cap) {
    if (y_constant(phi.P, phi.Q))
        throw std::invalid_argument("map_pointII: phi2 is constant in y (not gcd-free)");
    long n_samples = sample_override > 0 ? sample_override : 2 * phi.rdeg() + 2;
    // Working order: the radius plus the coefficient exponent span scaled by
    // the relative degree; doubled on retry.
    Frac span(1);
    for (const YPoly* poly : {&phi.P, &phi.Q})
        for (const auto& c : poly->coeffs) {
            if (c.is_zero()) continue;
            span = std::max(span, abs_frac(c.max_exponent()) + abs_frac(*c.valuation()));
        }
    Frac base_order = abs_frac(z.radius_exp()) + span * Frac(phi.rdeg()) + Frac(2);
    mpz_class bound = mpz_class(phi.phi1.n) * lcm(invariants(z).m, phi.multiplicity());

    std::string root_failure;
    size_t most_images = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Frac order = base_order * Frac(1 << attempt);
        if (order_cap.sign() > 0 && order > order_cap) {
            if (attempt == 0)
                order = order_cap;
            else
                break;  // cap exhausted
        }
        std::vector<PuiseuxJet> images;
        long c = 1;
        while (images.size() < static_cast<size_t>(n_samples + attempt) &&
               c < 8 * n_samples + 16) {
            PuiseuxGerm sample = z.germ();
            sample.set_term(z.radius_exp(), sample.coeff_at(z.radius_exp()) + Frac(c));
            ++c;
            try {
                ImageI img = map_pointI(phi, PointI::finite(sample), order);
                if (!img.infinite) images.push_back(img.jet);
            } catch (const PoleError&) {
                // The sample sits on a pole; the next residue will do.
            } catch (const std::domain_error& e) {
                // Irrational root on this sample's branch.
                root_failure = e.what();
            }
        }
        most_images = std::max(most_images, images.size());
        // Pairwise joins of the sampled images vote for the image point.
        std::vector<std::pair<PointII, int>> votes;
        for (size_t i = 0; i < images.size(); ++i)
            for (size_t j = i + 1; j < images.size(); ++j) {
                PuiseuxGerm diff = images[i].germ - images[j].germ;
                if (diff.is_zero()) continue;  // same direction at this precision
                Frac v = *diff.valuation();
                if (!(v < images[i].order) || !(v < images[j].order)) continue;
                PointII cand(images[i].germ, v);
                bool found = false;
                for (auto& [pt, count] : votes)
                    if (pt == cand) {
                        ++count;
                        found = true;
                    }
                if (!found) votes.emplace_back(cand, 1);
            }
        const PointII* best = nullptr;
        int best_count = 0;
        bool tie = false;
        for (const auto& [pt, count] : votes) {
            if (count > best_count) {
                best = &pt;
                best_count = count;
                tie = false;
            } else if (count == best_count) {
                tie = true;
            }
        }
        if (!best || tie) continue;
        // Postcondition: m(image) divides n * lcm(m(zeta), m(phi)).
        if (bound % invariants(*best).m != 0) continue;
        return *best;
    }
    if (most_images < 2 && !root_failure.empty())
        throw std::domain_error("map_pointII: sampled branches are not rationally representable: " +
                                root_failure);
    throw InstabilityError("map_pointII: no stable majority join for " + z.str() +
                           " (raise the jet order or sample count)");
}

PointII map_ray(const SkewProduct& phi, const Frac& t) {
    const Frac lambda = phi.phi1.lambda;
    const long n = phi.phi1.n;
    auto tropQ = tropical_valuation(phi.Q.coeffs, t);
    if (!tropQ) throw std::invalid_argument("map_ray: zero denominator");

    PuiseuxGerm image_germ;
    std::optional<Frac> frontier;
    for (int iter = 0; iter < 300; ++iter) {
        // G = phi1^*(image germ): exact for monomial phi1, trusted up to the
        // unit jet order otherwise.
        PuiseuxGerm big;
        std::optional<Frac> trust;
        for (const auto& [e, c] : image_germ.terms()) {
            Frac scale = c * pow_frac(lambda, e);
            if (phi.phi1.is_monomial()) {
                big.set_term(e * Frac(n), scale);
            } else {
                PuiseuxJet u = pow_rational(phi.phi1.unit, e);
                for (const auto& [ue, uc] : u.germ.terms()) {
                    Frac ex = e * Frac(n) + ue;
                    big.set_term(ex, big.coeff_at(ex) + uc * scale);
                }
                Frac lim = e * Frac(n) + u.order;
                if (!trust || lim < *trust) trust = lim;
            }
        }
        YPoly num = phi.P - phi.Q.scaled(big);
        if (num.is_zero()) throw std::invalid_argument("map_ray: phi2 is constant along the ray");
        Frac vnum = *tropical_valuation(num.coeffs, t);
        if (trust && !(vnum < *trust))
            throw InstabilityError("map_ray: unit jet order too low at t = " + t.str());
        auto sn = reduction_support(num.coeffs, t, vnum);
        auto sq = reduction_support(phi.Q.coeffs, t, *tropQ);
        bool constant = sn.size() == sq.size();
        Frac ratio;
        if (constant) {
            ratio = sn.front().second / sq.front().second;
            for (size_t k = 0; k < sn.size(); ++k)
                if (sn[k].first != sq[k].first || !(sn[k].second == ratio * sq[k].second))
                    constant = false;
        }
        if (!constant) return PointII(image_germ, (vnum - *tropQ) / Frac(n));
        // The reduction is the constant `ratio`: absorb it into the image
        // germ and refine.
        Frac e = (vnum - *tropQ) / Frac(n);
        if (frontier && !(e > *frontier))
            throw std::logic_error("map_ray: refinement did not advance");
        frontier = e;
        Frac delta = ratio / pow_frac(lambda, e);
        image_germ.set_term(e, delta);
    }
    throw InstabilityError("map_ray: no stable reduction after 300 refinements");
}

Reduction reduction(const SkewProduct& phi) {
    // Clear the common power of x, then set x = 0.
    std::optional<Frac> minval;
    for (const YPoly* poly : {&phi.P, &phi.Q})
        for (const auto& c : poly->coeffs)
            if (!c.is_zero() && (!minval || *c.valuation() < *minval)) minval = *c.valuation();
    if (!minval) throw std::invalid_argument("reduction: zero map");

    auto residue = [&](const YPoly& p) {
        std::vector<Frac> out(p.coeffs.size(), Frac(0));
        for (size_t i = 0; i < p.coeffs.size(); ++i) out[i] = p.coeffs[i].coeff_at(*minval);
        while (!out.empty() && out.back().is_zero()) out.pop_back();
        return out;
    };
    std::vector<Frac> num = residue(phi.P);
    std::vector<Frac> den = residue(phi.Q);

    auto degree = [](const std::vector<Frac>& p) { return static_cast<long>(p.size()) - 1; };
    auto rem = [&](std::vector<Frac> a, const std::vector<Frac>& b) {
        while (!a.empty() && degree(a) >= degree(b)) {
            Frac f = a.back() / b.back();
            long shift = degree(a) - degree(b);
            for (long i = 0; i <= degree(b); ++i)
                a[static_cast<size_t>(i + shift)] -= f * b[static_cast<size_t>(i)];
            while (!a.empty() && a.back().is_zero()) a.pop_back();
        }
        return a;
    };
    if (!num.empty() && !den.empty()) {
        // Monic gcd over Q[y], then exact division of both sides.
        std::vector<Frac> a = num, b = den;
        while (!b.empty()) {
            auto r = rem(a, b);
            a = b;
            b = r;
        }
        if (degree(a) >= 1) {
            Frac lead = a.back();
            for (auto& c : a) c /= lead;
            auto divide = [&](std::vector<Frac> p) {
                std::vector<Frac> q(p.size() - a.size() + 1, Frac(0));
                while (!p.empty() && degree(p) >= degree(a)) {
                    Frac f = p.back() / a.back();
                    long shift = degree(p) - degree(a);
                    q[static_cast<size_t>(shift)] = f;
                    for (long i = 0; i <= degree(a); ++i)
                        p[static_cast<size_t>(i + shift)] -= f * a[static_cast<size_t>(i)];
                    while (!p.empty() && p.back().is_zero()) p.pop_back();
                }
                return q;
            };
            num = divide(num);
            den = divide(den);
        }
    }
    Reduction out;
    out.num = num;
    out.den = den;
    out.degree = std::max(degree(num), degree(den));
    if (num.empty() || den.empty() || out.degree < 0) out.degree = 0;
    out.good = out.degree == phi.rdeg();
    return out;
}

std::string Reduction::str() const {
    auto poly = [](const std::vector<Frac>& p) {
        if (p.empty()) return std::string("0");
        std::string s;
        for (long d = static_cast<long>(p.size()) - 1; d >= 0; --d) {
            const Frac& c = p[static_cast<size_t>(d)];
            if (c.is_zero()) continue;
            if (!s.empty()) s += " + ";
            if (d == 0)
                s += c.str();
            else
                s += (c == Frac(1) ? "" : c.str() + "*") +
                     (d == 1 ? std::string("y") : "y^" + std::to_string(d));
        }
        return s.empty() ? std::string("0") : s;
    };
    std::string s = poly(num);
    if (!(den.size() == 1 && den[0] == Frac(1))) s += " / (" + poly(den) + ")";
    return s;
}

std::vector<PointII> orbit(const SkewProduct& phi, const PointII& z, int k,
                           int sample_override, const Frac& order_cap) {
    if (k < 0) throw std::invalid_argument("orbit: negative step count");
    std::vector<PointII> out{z};
    for (int i = 1; i <= k; ++i) {
        try {
            out.push_back(map_pointII(phi, out.back(), sample_override, order_cap));
        } catch (const InstabilityError& e) {
            throw InstabilityError("orbit step " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

SkewProduct normalize_to_gauss(const PointII& z) {
    SkewProduct eta;
    eta.P.coeffs = {-z.germ(), PuiseuxGerm::constant(Frac(1))};
    eta.Q = YPoly::constant(PuiseuxGerm::monomial(Frac(1), z.radius_exp()));
    return eta;
}

std::optional<mpz_class> annulus_degree(const SkewProduct& phi, const PuiseuxGerm& branch,
                                        const Frac& deep_exp, const Frac& shallow_exp) {
    if (!(shallow_exp < deep_exp))
        throw std::invalid_argument("annulus_degree: exponents must satisfy deep > shallow");
    auto roots_inside = [&](const YPoly& poly) {
        if (poly.deg() < 1) return false;  // constant in y: no roots
        for (const RootVal& rv : newton_root_valuations(poly.coeffs))
            if (rv.val && *rv.val > shallow_exp && *rv.val < deep_exp) return true;
        return false;
    };
    // Zeros and poles of phi2 must avoid the open annulus.
    SkewProduct local;
    local.P = phi.P.expanded_at(branch);
    local.Q = phi.Q.expanded_at(branch);
    if (roots_inside(local.P) || roots_inside(local.Q)) return std::nullopt;
    // The image spine must not bend: the stabilized image germ is the same
    // at both interior samples and the recentered numerator has no root
    // valuation strictly inside (its roots are exactly the breakpoints of
    // the tropical diameter).
    Frac span = deep_exp - shallow_exp;
    Frac t1 = shallow_exp + span / Frac(4);
    Frac t2 = shallow_exp + span * Frac(3, 4);
    PointII i1 = map_ray(local, t1);
    PointII i2 = map_ray(local, t2);
    if (!(i1.germ() == i2.germ())) return std::nullopt;
    YPoly recentered = local.P - local.Q.scaled(i1.germ());
    if (roots_inside(recentered)) return std::nullopt;
    Frac slope = (i2.radius_exp() - i1.radius_exp()) / (t2 - t1);
    if (!slope.is_integer())
        throw std::logic_error("annulus_degree: non-integral tropical slope " + slope.str());
    mpz_class d = slope.num();
    if (d < 0) d = -d;
    return d;
}

}  // namespace blowup
