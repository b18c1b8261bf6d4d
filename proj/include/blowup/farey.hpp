#pragma once

#include <utility>
#include <vector>

#include "blowup/frac.hpp"

namespace blowup {

// Coprime integer pair a/b with b >= 0.  Zero denominators are first class:
// 1/0 is +infinity and -1/0 is -infinity on the extended Farey line, so the
// integral chain needs no special casing when stepping past the ends.
class FareyPair {
public:
    FareyPair() : a_(0), b_(1) {}
    FareyPair(mpz_class a, mpz_class b);
    FareyPair(long a, long b) : FareyPair(mpz_class(a), mpz_class(b)) {}
    explicit FareyPair(const Frac& f) : a_(f.num()), b_(f.den()) {}

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    bool is_infinite() const { return b_ == 0; }
    Frac to_frac() const;

    // Always pair notation, e.g. "5/1", "-1/0".
    std::string str() const;
    static FareyPair parse(std::string_view s);

    friend bool operator==(const FareyPair& p, const FareyPair& q) {
        return p.a_ == q.a_ && p.b_ == q.b_;
    }
    // Total order with -1/0 minimal and 1/0 maximal.
    friend std::strong_ordering operator<=>(const FareyPair& p, const FareyPair& q);

private:
    mpz_class a_;
    mpz_class b_;
};

// (a+c)/(b+d), reduced.  Pre: p != q.
FareyPair mediant(const FareyPair& p, const FareyPair& q);

// Determinant a*d - b*c for p = (a,b), q = (c,d).
mpz_class bracket(const FareyPair& p, const FareyPair& q);

// |bracket| == 1.
bool is_adjacent(const FareyPair& p, const FareyPair& q);

// The unique lo < p < hi with bracket(lo,p) = bracket(p,hi) = -1 and
// 1 <= den(lo), den(hi) <= den(p).  For integers p = a/1 this gives
// ((a-1)/1, (a+1)/1); for den(p) > 1 the parents are adjacent to each other
// and have denominators < den(p).
std::pair<FareyPair, FareyPair> parents(const FareyPair& p);

// Positive integers (m, n) with m*lo + n*hi = p componentwise.
// Pre: lo, hi adjacent and lo < p < hi, else throws std::invalid_argument.
std::pair<mpz_class, mpz_class> haros_coeffs(const FareyPair& lo, const FareyPair& hi,
                                             const FareyPair& p);

// Successive mediants from the adjacent bracket (lo, hi) down to target.
// The list ends exactly at target; its length is the number of satellite
// blowups needed to reach the corresponding divisor.
std::vector<FareyPair> stern_brocot_path(FareyPair lo, FareyPair hi, const FareyPair& target);

// All reduced fractions in [lo, hi] with denominator <= order, ascending.
std::vector<FareyPair> complete_sequence(const mpz_class& lo, const mpz_class& hi,
                                         const mpz_class& order);

}  // namespace blowup
