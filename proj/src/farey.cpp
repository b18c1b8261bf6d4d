#include "blowup/farey.hpp"

#include <algorithm>
#include <stdexcept>

namespace blowup {

FareyPair::FareyPair(mpz_class a, mpz_class b) : a_(std::move(a)), b_(std::move(b)) {
    if (b_ < 0) {
        a_ = -a_;
        b_ = -b_;
    }
    if (b_ == 0) {
        if (a_ == 0) throw std::domain_error("FareyPair: 0/0");
        a_ = sgn(a_);
        return;
    }
    mpz_class g = gcd(a_ < 0 ? mpz_class(-a_) : a_, b_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
    }
}

Frac FareyPair::to_frac() const {
    if (is_infinite()) throw std::domain_error("FareyPair: " + str() + " is not finite");
    return Frac(a_, b_);
}

std::string FareyPair::str() const { return a_.get_str() + "/" + b_.get_str(); }

FareyPair FareyPair::parse(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return FareyPair(mpz_class(std::string(s)), 1);
        return FareyPair(mpz_class(std::string(s.substr(0, slash))),
                         mpz_class(std::string(s.substr(slash + 1))));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("FareyPair: cannot parse '" + std::string(s) + "'");
    }
}

std::strong_ordering operator<=>(const FareyPair& p, const FareyPair& q) {
    if (p.b_ == 0 && q.b_ == 0) {
        int c = cmp(p.a_, q.a_);
        return c < 0   ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }
    // Cross multiplication covers one-sided infinities: 1/0 vs a/b compares
    // b against 0.
    mpz_class lhs = p.a_ * q.b_;
    mpz_class rhs = q.a_ * p.b_;
    int c = cmp(lhs, rhs);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
}

FareyPair mediant(const FareyPair& p, const FareyPair& q) {
    if (p == q) throw std::invalid_argument("mediant: identical pairs");
    return FareyPair(p.a() + q.a(), p.b() + q.b());
}

mpz_class bracket(const FareyPair& p, const FareyPair& q) { return p.a() * q.b() - p.b() * q.a(); }

bool is_adjacent(const FareyPair& p, const FareyPair& q) {
    mpz_class d = bracket(p, q);
    return d == 1 || d == -1;
}

std::pair<FareyPair, FareyPair> parents(const FareyPair& p) {
    if (p.is_infinite()) throw std::invalid_argument("parents: point at infinity");
    const mpz_class& a = p.a();
    const mpz_class& q = p.b();
    if (q == 1) return {FareyPair(a - 1, 1), FareyPair(a + 1, 1)};
    // bracket(lo, p) = -1 with lo = (x, y): x*q - y*a = -1, normalized to
    // 1 <= y < q via y = a^{-1} mod q (Bezout).
    mpz_class y;
    if (mpz_invert(y.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t()) == 0)
        throw std::logic_error("parents: non-coprime pair");
    if (y <= 0) y += q;
    mpz_class x = (y * a - 1) / q;
    FareyPair lo(x, y);
    mpz_class yh = q - y;
    mpz_class xh = (yh * a + 1) / q;
    FareyPair hi(xh, yh);
    return {lo, hi};
}

std::pair<mpz_class, mpz_class> haros_coeffs(const FareyPair& lo, const FareyPair& hi,
                                             const FareyPair& p) {
    if (!is_adjacent(lo, hi)) throw std::invalid_argument("haros_coeffs: bounds not adjacent");
    if (!(lo < p && p < hi)) throw std::invalid_argument("haros_coeffs: point not inside bracket");
    mpz_class m = bracket(hi, p);
    mpz_class n = bracket(p, lo);
    if (m <= 0 || n <= 0 || m * lo.a() + n * hi.a() != p.a() || m * lo.b() + n * hi.b() != p.b())
        throw std::logic_error("haros_coeffs: decomposition failed");
    return {m, n};
}

std::vector<FareyPair> stern_brocot_path(FareyPair lo, FareyPair hi, const FareyPair& target) {
    if (!is_adjacent(lo, hi)) throw std::invalid_argument("stern_brocot_path: bounds not adjacent");
    if (!(lo < target && target < hi))
        throw std::invalid_argument("stern_brocot_path: target not strictly inside (" + lo.str() +
                                    ", " + hi.str() + ")");
    std::vector<FareyPair> path;
    for (;;) {
        FareyPair mid = mediant(lo, hi);
        path.push_back(mid);
        if (mid == target) return path;
        if (target < mid)
            hi = mid;
        else
            lo = mid;
    }
}

std::vector<FareyPair> complete_sequence(const mpz_class& lo, const mpz_class& hi,
                                         const mpz_class& order) {
    if (!(lo < hi)) throw std::invalid_argument("complete_sequence: lo must be < hi");
    if (order < 1) throw std::invalid_argument("complete_sequence: order must be positive");
    std::vector<FareyPair> out;
    for (mpz_class b = 1; b <= order; ++b) {
        for (mpz_class a = lo * b; a <= hi * b; ++a) {
            if (gcd(a < 0 ? mpz_class(-a) : a, b) == 1) out.emplace_back(a, b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace blowup
