#pragma once

#include <optional>

#include "blowup/models.hpp"

namespace blowup {

// First component lambda * x^n * unit with unit = 1 + h, constant term 1.
// Monomial products store unit = 1 with a very large order.
struct Phi1 {
    Frac lambda = Frac(1);
    long n = 1;
    PuiseuxJet unit;

    Phi1();
    bool is_monomial() const;
    PuiseuxJet as_jet() const;  // lambda x^n (1 + h)
    std::string str() const;
};

// Polynomial in y with finite Puiseux germ coefficients; coeffs[d] is the
// degree-d coefficient.
struct YPoly {
    std::vector<PuiseuxGerm> coeffs;

    static YPoly zero() { return {}; }
    static YPoly constant(PuiseuxGerm g);
    static YPoly y();
    long deg() const;  // -1 for the zero polynomial
    bool is_zero() const { return deg() < 0; }
    const PuiseuxGerm& coeff(size_t d) const;
    void set_coeff(size_t d, PuiseuxGerm g);
    void trim();

    // Exact evaluation at a finite germ.
    PuiseuxGerm eval(const PuiseuxGerm& y) const;
    // P(center + z) as a polynomial in z.
    YPoly expanded_at(const PuiseuxGerm& center) const;

    YPoly operator+(const YPoly& o) const;
    YPoly operator-(const YPoly& o) const;
    YPoly operator*(const YPoly& o) const;
    YPoly scaled(const PuiseuxGerm& g) const;

    std::string str() const;
};

// Rational skew product (phi1, phi2 = P/Q); P, Q with no common factor and
// Q != 0 by contract.  Denotes phi(x, y) = (phi1(x), P(x,y)/Q(x,y)).
struct SkewProduct {
    Phi1 phi1;
    YPoly P, Q;

    long rdeg() const;            // max(deg P, deg Q) >= 1
    Frac scale() const;           // q = 1/n
    mpz_class multiplicity() const;  // lcm of coefficient multiplicities

    static SkewProduct identity();
    // Text form "(<phi1>, <P>/<Q>)", e.g. "(x^2, x^2/y)".
    static SkewProduct parse(std::string_view s);
    std::string str() const;
};

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when stable-join sampling cannot certify an image at the working
// precision; callers may raise the jet order and retry.
struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Image of a Type I point as a jet (or infinity): exact evaluation of phi2
// followed by substitution of the compositional inverse of phi1.
struct ImageI {
    bool infinite = false;
    PuiseuxJet jet;
};
ImageI map_pointI(const SkewProduct& phi, const PointI& p, const Frac& order);

// Image of a Type II point by stable-join sampling over 2 rdeg + 2 residues
// (overridable), guarded by the multiplicity-divisibility postcondition.
// The working jet order doubles on instability up to order_cap (0 = the
// default cap); exhaustion raises InstabilityError.
PointII map_pointII(const SkewProduct& phi, const PointII& z);
PointII map_pointII(const SkewProduct& phi, const PointII& z, int sample_override,
                    const Frac& order_cap = Frac(0));

// Exact image of zeta(0, |x|^t) by tropical/Newton-polygon evaluation; the
// independent route against map_pointII.
PointII map_ray(const SkewProduct& phi, const Frac& t);

// Reduction phi2(0, y) over the residue field, as a reduced rational map.
struct Reduction {
    std::vector<Frac> num, den;  // rational polynomials, den monic-normalized
    long degree = 0;
    bool good = false;  // degree == rdeg(phi)
    std::string str() const;
};
Reduction reduction(const SkewProduct& phi);

// Iterated map_pointII with the divisibility postcondition revalidated at
// every step; instability reports carry the step index.
std::vector<PointII> orbit(const SkewProduct& phi, const PointII& z, int k,
                           int sample_override = 0, const Frac& order_cap = Frac(0));

// Affine change eta = (x, (y - germ)/x^r) with eta_*(z) = zeta(0,1) and
// m(eta) = b(z).
SkewProduct normalize_to_gauss(const PointII& z);

// Local degree of phi on the annulus with the given branch germ and radius
// exponents (lo_exp > hi_exp); nullopt when phi is not monomial there (a
// zero or pole of phi2 lies strictly inside).
std::optional<mpz_class> annulus_degree(const SkewProduct& phi, const PuiseuxGerm& branch,
                                        const Frac& deep_exp, const Frac& shallow_exp);

struct VertexVerdict {
    enum class Kind { MapsToDivisor, Contracted };
    PointII source;
    Kind kind = Kind::MapsToDivisor;
    PointII image;
    std::optional<DomainDescriptor> target_domain;  // Contracted only
};

struct DomainVerdict {
    enum class Kind { Continuous, Indeterminate, Unknown };
    DomainDescriptor domain;
    Kind kind = Kind::Unknown;
    std::optional<DomainDescriptor> image_domain;  // Continuous only
    std::vector<PointII> hits;                     // nonempty iff Indeterminate
    std::string note;
};

struct MapVerdict {
    std::vector<VertexVerdict> vertices;
    std::vector<DomainVerdict> domains;
};

// Classifies the action of phi against a source and target vertex set:
// vertices map to divisors or are contracted; annuli and disks are traced
// where phi is provably monomial and reported Unknown elsewhere.
MapVerdict classify(const SkewProduct& phi, const VertexSet& src, const VertexSet& tgt);

}  // namespace blowup
