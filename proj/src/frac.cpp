#include "blowup/frac.hpp"

namespace blowup {

Frac::Frac(mpz_class n, mpz_class d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("Frac: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

mpz_class Frac::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    return q;
}

Frac Frac::operator-() const {
    Frac r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Frac& Frac::operator+=(const Frac& o) {
    *this = Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    return *this;
}

Frac& Frac::operator-=(const Frac& o) {
    *this = Frac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    return *this;
}

Frac& Frac::operator*=(const Frac& o) {
    *this = Frac(num_ * o.num_, den_ * o.den_);
    return *this;
}

Frac& Frac::operator/=(const Frac& o) {
    if (o.num_ == 0) throw std::domain_error("Frac: division by zero");
    *this = Frac(num_ * o.den_, den_ * o.num_);
    return *this;
}

std::strong_ordering operator<=>(const Frac& a, const Frac& b) {
    mpz_class lhs = a.num_ * b.den_;
    mpz_class rhs = b.num_ * a.den_;
    int c = cmp(lhs, rhs);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Frac::str() const {
    if (den_ == 1) return num_.get_str();
    return num_.get_str() + "/" + den_.get_str();
}

Frac Frac::parse(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos)
            return Frac(mpz_class(std::string(s)), mpz_class(1));
        mpz_class n(std::string(s.substr(0, slash)));
        mpz_class d(std::string(s.substr(slash + 1)));
        return Frac(n, d);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Frac: cannot parse '" + std::string(s) + "'");
    }
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

bool nth_root_exact(const mpz_class& v, unsigned long n, mpz_class& out) {
    if (n == 0) throw std::domain_error("nth_root_exact: n = 0");
    if (v < 0) return false;
    mpz_class r;
    int exact = mpz_root(r.get_mpz_t(), v.get_mpz_t(), n);
    if (!exact) return false;
    out = r;
    return true;
}

bool nth_root_exact(const Frac& v, unsigned long n, Frac& out) {
    mpz_class rn, rd;
    if (!nth_root_exact(v.num(), n, rn)) return false;
    if (!nth_root_exact(v.den(), n, rd)) return false;
    out = Frac(rn, rd);
    return true;
}

Frac pow_frac(const Frac& v, const Frac& e) {
    if (e.is_integer()) {
        if (!e.num().fits_slong_p())
            throw std::domain_error("pow_frac: exponent too large");
        long k = e.num().get_si();
        if (k == 0) return Frac(1);
        bool neg = k < 0;
        unsigned long uk = neg ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
        mpz_class pn, pd;
        mpz_pow_ui(pn.get_mpz_t(), v.num().get_mpz_t(), uk);
        mpz_pow_ui(pd.get_mpz_t(), v.den().get_mpz_t(), uk);
        if (neg) {
            if (pn == 0) throw std::domain_error("pow_frac: zero to negative power");
            return Frac(pd, pn);
        }
        return Frac(pn, pd);
    }
    if (v.sign() <= 0)
        throw std::domain_error("pow_frac: fractional power of non-positive rational");
    if (!v.den().fits_slong_p() || !e.den().fits_ulong_p())
        throw std::domain_error("pow_frac: exponent denominator too large");
    Frac root;
    if (!nth_root_exact(v, e.den().get_ui(), root))
        throw std::domain_error("pow_frac: principal root of " + v.str() + " is irrational");
    return pow_frac(root, Frac(e.num()));
}

}  // namespace blowup
