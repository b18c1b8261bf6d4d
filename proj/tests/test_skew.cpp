#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blowup/newton.hpp"
#include "blowup/skew.hpp"
#include "test_util.hpp"

using namespace blowup;

static PuiseuxGerm G(const char* s) { return PuiseuxGerm::parse(s); }
static PointII Z(const char* s) { return PointII::parse(s); }
static SkewProduct Phi(const char* s) { return SkewProduct::parse(s); }

TEST_CASE("skew product parsing") {
    SkewProduct a = Phi("(x^2, x^2/y)");
    CHECK(a.phi1.n == 2);
    CHECK(a.phi1.lambda == Frac(1));
    CHECK(a.P.deg() == 0);
    CHECK(a.Q.deg() == 1);
    CHECK(a.rdeg() == 1);
    CHECK(a.scale() == Frac(1, 2));
    CHECK(a.str() == "(x^2, x^2/y)");

    SkewProduct b = Phi("(x, (y^2 + x)/(1 + x*y))");
    CHECK(b.rdeg() == 2);
    CHECK(b.P.coeff(0) == G("x"));
    CHECK(b.Q.coeff(1) == G("x"));

    SkewProduct c = Phi("(4*x^2*(1 + x + O(x^5)), x*y)");
    CHECK(c.phi1.lambda == Frac(4));
    CHECK_FALSE(c.phi1.is_monomial());
    CHECK(SkewProduct::parse(c.str()).str() == c.str());

    CHECK(Phi("(x^34, x^21*y)").P.coeff(1) == G("x^21"));
    CHECK_THROWS_AS(Phi("(x^2, 5)"), std::invalid_argument);  // rdeg 0
}

TEST_CASE("map_pointI") {
    // phi = (x^2, x^2/y) at p = x: phi2 gives x, then x -> x^(1/2).
    ImageI img = map_pointI(Phi("(x^2, x^2/y)"), PointI::finite(G("x")), Frac(4));
    CHECK_FALSE(img.infinite);
    CHECK(img.jet.germ == G("x^(1/2)"));
    CHECK(img.jet.germ.multiplicity() == 2);

    // Identity.
    ImageI id = map_pointI(SkewProduct::identity(), PointI::finite(G("x^(1/3) + x")), Frac(9));
    CHECK(id.jet.germ == G("x^(1/3) + x"));

    // (x^34, x*y) at p = 1: x -> x^(1/34).
    ImageI m34 = map_pointI(Phi("(x^34, x*y)"), PointI::finite(G("1")), Frac(1));
    CHECK(m34.jet.germ == G("x^(1/34)"));

    CHECK_THROWS_AS(map_pointI(Phi("(x^2, x^2/y)"), PointI::finite(G("0")), Frac(2)), PoleError);

    // Point at infinity via the degree comparison.
    CHECK(map_pointI(Phi("(x, y^2 + x)"), PointI::infinity(), Frac(3)).infinite);
    CHECK(map_pointI(Phi("(x, x/y)"), PointI::infinity(), Frac(3)).jet.germ.is_zero());
    CHECK(map_pointI(Phi("(x, (2*y + x)/y)"), PointI::infinity(), Frac(3)).jet.germ == G("2"));
}

TEST_CASE("map_pointII: the attracting orbit of the first example") {
    SkewProduct phi = Phi("(x^2, x^2/y)");
    CHECK(map_pointII(phi, PointII::gauss()) == Z("zeta(0, 1)"));
    CHECK(map_pointII(phi, Z("zeta(0, 3/4)")) == Z("zeta(0, 5/8)"));
    CHECK(map_pointII(SkewProduct::identity(), Z("zeta(x^(1/2), 3/4)")) == Z("zeta(x^(1/2), 3/4)"));
}

TEST_CASE("orbit") {
    SkewProduct phi = Phi("(x^2, x^2/y)");
    auto pts = orbit(phi, PointII::gauss(), 5);
    REQUIRE(pts.size() == 6);
    std::vector<Frac> expect{Frac(0), Frac(1), Frac(1, 2), Frac(3, 4), Frac(5, 8), Frac(11, 16)};
    for (size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].radius_exp() == expect[i]);
        CHECK(pts[i].germ().is_zero());
    }
    CHECK(orbit(phi, PointII::gauss(), 0).size() == 1);
    auto fixed = orbit(SkewProduct::identity(), Z("zeta(0, 2/3)"), 3);
    CHECK(fixed.size() == 4);
    for (const auto& p : fixed) CHECK(p == Z("zeta(0, 2/3)"));
}

TEST_CASE("map_ray") {
    SkewProduct phi = Phi("(x^2, x^2/y)");
    CHECK(map_ray(phi, Frac(0)) == Z("zeta(0, 1)"));
    CHECK(map_ray(phi, Frac(2, 3)) == Z("zeta(0, 2/3)"));  // fixed point
    CHECK(map_ray(Phi("(x^34, x^21*y)"), Frac(0)) == Z("zeta(0, 21/34)"));
    CHECK(map_ray(Phi("(x^34, x^11*y)"), Frac(0)) == Z("zeta(0, 11/34)"));
    // A ray image with a nonzero center germ agrees with the sampled route.
    PointII img = map_ray(Phi("(x, (y^2 + x)/(1 + x*y))"), Frac(3));
    CHECK(img == map_pointII(Phi("(x, (y^2 + x)/(1 + x*y))"), Z("zeta(0, 3)")));
}

TEST_CASE("reduction and good reduction") {
    Reduction r1 = reduction(Phi("(x^2, x^2/y)"));
    CHECK(r1.degree == 0);
    CHECK_FALSE(r1.good);

    Reduction r2 = reduction(Phi("(x, y^2)"));
    CHECK(r2.degree == 2);
    CHECK(r2.good);
    CHECK(r2.str() == "y^2");

    Reduction r3 = reduction(Phi("(x, (y^2 + x)/(1 + x*y))"));
    CHECK(r3.degree == 2);
    CHECK(r3.good);
    CHECK(r3.str() == "y^2");

    // Common factor of the residues is cancelled before measuring degree.
    Reduction r4 = reduction(Phi("(x, (y^3 + x*y)/y)"));
    CHECK(r4.degree == 2);
    CHECK_FALSE(r4.good);  // rdeg 3 with reduction degree 2

    // Coefficients with a common pole order are cleared first.
    Reduction r5 = reduction(Phi("(x, (x^(-1)*y^2 + 1)/(x^(-1)))"));
    CHECK(r5.degree == 2);
}

TEST_CASE("bad reduction iff the Gauss point moves (fixed corpus)") {
    struct Case {
        const char* phi;
        bool good;
    };
    for (const Case& c : {Case{"(x, y^2)", true}, Case{"(x, (y^2 + x)/(1 + x*y))", true},
                          Case{"(x, x*y)", false}, Case{"(x^2, x^2/y)", false},
                          Case{"(x, (y^3 + x)/y)", false}, Case{"(x, (y + x)/(1 - y))", true}}) {
        SkewProduct phi = Phi(c.phi);
        CHECK(reduction(phi).good == c.good);
        bool gauss_fixed = map_pointII(phi, PointII::gauss()) == PointII::gauss();
        // Good reduction forces the Gauss point to be fixed; a moved Gauss
        // point forces bad reduction.
        if (c.good) CHECK(gauss_fixed);
        if (!gauss_fixed) CHECK_FALSE(c.good);
    }
}

TEST_CASE("normalize_to_gauss") {
    CHECK(normalize_to_gauss(PointII::gauss()).str() == "(x, y)");

    for (const char* s : {"zeta(0, 1/2)", "zeta(x^(5/7), 1)", "zeta(x^(1/3) - 7*x^(1/2), 5/9)"}) {
        PointII z = Z(s);
        SkewProduct eta = normalize_to_gauss(z);
        CHECK(eta.multiplicity() == invariants(z).b);
        CHECK(map_pointII(eta, z) == PointII::gauss());
    }
}

TEST_CASE("annulus degrees from the Newton polygon") {
    // x^2/y on any 0-branch annulus: one pole inside, degree 1.
    CHECK(annulus_degree(Phi("(x^2, x^2/y)"), PuiseuxGerm{}, Frac(1), Frac(0)) == mpz_class(1));
    // y^2: double zero inside, degree 2.
    CHECK(annulus_degree(Phi("(x, y^2)"), PuiseuxGerm{}, Frac(2), Frac(1)) == mpz_class(2));
    // (y^2 + x): roots at val 1/2 sit inside (1/4, 3/4): not monomial there.
    CHECK_FALSE(annulus_degree(Phi("(x, y^2 + x)"), PuiseuxGerm{}, Frac(3, 4), Frac(1, 4)));
    // ...but the same map is monomial on (3/5, 1) where both roots are deeper.
    CHECK(annulus_degree(Phi("(x, y^2 + x)"), PuiseuxGerm{}, Frac(1), Frac(3, 5)) == mpz_class(2));
}

TEST_CASE("classify: the first example on the minimal model") {
    SkewProduct phi = Phi("(x^2, x^2/y)");
    VertexSet gauss({PointII::gauss()});
    MapVerdict v = classify(phi, gauss, gauss);
    REQUIRE(v.vertices.size() == 1);
    CHECK(v.vertices[0].kind == VertexVerdict::Kind::Contracted);
    CHECK(v.vertices[0].image == Z("zeta(0, 1)"));
    REQUIRE(v.vertices[0].target_domain.has_value());
    CHECK(v.vertices[0].target_domain->kind == DomainDescriptor::Kind::Disk);

    REQUIRE(v.domains.size() == 2);
    for (const auto& dv : v.domains) {
        if (dv.domain.kind == DomainDescriptor::Kind::Disk) {
            CHECK(dv.kind == DomainVerdict::Kind::Indeterminate);
            REQUIRE(dv.hits.size() == 1);
            CHECK(dv.hits[0] == PointII::gauss());
        } else {
            CHECK(dv.domain.kind == DomainDescriptor::Kind::InfinityDisk);
            CHECK(dv.kind == DomainVerdict::Kind::Continuous);
        }
    }
}

TEST_CASE("classify: two blowups make the annulus a continuous fixed point") {
    SkewProduct phi = Phi("(x^2, x^2/y)");
    VertexSet g({PointII::gauss(), Z("zeta(0, 1)")});
    MapVerdict v = classify(phi, g, g);
    bool saw_annulus = false;
    for (const auto& dv : v.domains) {
        if (dv.domain.kind != DomainDescriptor::Kind::Annulus) continue;
        saw_annulus = true;
        CHECK(dv.kind == DomainVerdict::Kind::Continuous);
        REQUIRE(dv.image_domain.has_value());
        CHECK(dv.image_domain->kind == DomainDescriptor::Kind::Annulus);
        CHECK(dv.image_domain->boundary[0] == Z("zeta(0, 1)"));
        CHECK(dv.image_domain->boundary[1] == Z("zeta(0, 0)"));
    }
    CHECK(saw_annulus);
    // The center disk at zeta(0,1) is indeterminate: its image covers the
    // complement of a small disk, which contains the Gauss point.
    for (const auto& dv : v.domains)
        if (dv.domain.kind == DomainDescriptor::Kind::Disk &&
            dv.domain.boundary[0] == Z("zeta(0, 1)"))
            CHECK(dv.kind == DomainVerdict::Kind::Indeterminate);
}

TEST_CASE("classify: identity maps divisors to divisors and domains onward") {
    VertexSet g({PointII::gauss(), Z("zeta(0, 1)"), Z("zeta(0, 1/2)")});
    MapVerdict v = classify(SkewProduct::identity(), g, g);
    for (const auto& vv : v.vertices) {
        CHECK(vv.kind == VertexVerdict::Kind::MapsToDivisor);
        CHECK(vv.image == vv.source);
    }
    for (const auto& dv : v.domains) CHECK(dv.kind == DomainVerdict::Kind::Continuous);
}

TEST_CASE("multiplicity divisibility for simple Laurent products") {
    auto rng = testutil::make_rng(0xd17);
    int done = 0;
    for (int trial = 0; done < 200 && trial < 2000; ++trial) {
        SkewProduct phi;
        phi.P.coeffs.resize(3);
        phi.Q.coeffs.resize(3);
        for (size_t i = 0; i < 3; ++i) {
            if (testutil::rand_int(rng, 0, 2) == 0)
                phi.P.coeffs[i] = PuiseuxGerm::monomial(Frac(testutil::rand_int(rng, 1, 4)),
                                                        Frac(testutil::rand_int(rng, 0, 3)));
            if (testutil::rand_int(rng, 0, 2) == 0)
                phi.Q.coeffs[i] = PuiseuxGerm::monomial(Frac(testutil::rand_int(rng, 1, 4)),
                                                        Frac(testutil::rand_int(rng, 0, 3)));
        }
        phi.P.trim();
        phi.Q.trim();
        if (phi.Q.is_zero() || phi.P.is_zero() || phi.rdeg() < 1) continue;
        bool dependent = true;
        for (long i = 0; dependent && i <= phi.rdeg(); ++i)
            for (long j = i + 1; dependent && j <= phi.rdeg(); ++j)
                if (!(phi.P.coeff(static_cast<size_t>(i)) * phi.Q.coeff(static_cast<size_t>(j)) ==
                      phi.P.coeff(static_cast<size_t>(j)) * phi.Q.coeff(static_cast<size_t>(i))))
                    dependent = false;
        if (dependent) continue;  // phi2 constant in y: not a gcd-free product

        PuiseuxGerm germ;
        germ.set_term(Frac(testutil::rand_int(rng, 1, 4), testutil::rand_int(rng, 1, 4)),
                      Frac(testutil::rand_int(rng, 1, 3)));
        germ.set_term(Frac(testutil::rand_int(rng, 5, 9), testutil::rand_int(rng, 1, 3)),
                      Frac(testutil::rand_int(rng, 1, 3)));
        Frac r = Frac(testutil::rand_int(rng, 10, 20), testutil::rand_int(rng, 1, 3));
        PointII z(germ, r);
        mpz_class mz = invariants(z).m;

        try {
            PointII img = map_pointII(phi, z);
            CHECK(mz % invariants(img).m == 0);  // simple products divide m(z)
            ++done;
        } catch (const InstabilityError&) {
            // precision starvation is not a divisibility violation
        } catch (const PoleError&) {
        }
    }
    CHECK(done == 200);
}

TEST_CASE("general multiplicity bound for Puiseux products") {
    auto rng = testutil::make_rng(0xb0b);
    int done = 0;
    for (int trial = 0; done < 60 && trial < 1000; ++trial) {
        SkewProduct phi;
        phi.phi1.n = testutil::rand_int(rng, 1, 3);
        phi.P.coeffs.resize(2);
        phi.P.coeffs[1] = PuiseuxGerm::monomial(
            Frac(1), Frac(testutil::rand_int(rng, 0, 5), testutil::rand_int(rng, 1, 3)));
        phi.P.coeffs[0] = PuiseuxGerm::monomial(
            Frac(testutil::rand_int(rng, 0, 2)),
            Frac(testutil::rand_int(rng, 1, 5), testutil::rand_int(rng, 1, 2)));
        phi.Q = YPoly::constant(PuiseuxGerm::constant(Frac(1)));
        phi.P.trim();
        if (phi.rdeg() < 1) continue;

        PuiseuxGerm germ;
        germ.set_term(Frac(testutil::rand_int(rng, 1, 5), testutil::rand_int(rng, 1, 4)),
                      Frac(testutil::rand_int(rng, 1, 3)));
        PointII z(germ, Frac(testutil::rand_int(rng, 6, 12), testutil::rand_int(rng, 1, 4)));
        mpz_class bound = mpz_class(phi.phi1.n) * lcm(invariants(z).m, phi.multiplicity());
        try {
            PointII img = map_pointII(phi, z);
            CHECK(bound % invariants(img).m == 0);
            ++done;
        } catch (const InstabilityError&) {
        } catch (const std::domain_error&) {
        }
    }
    CHECK(done == 60);
}

TEST_CASE("map_ray agrees with map_pointII on the 0-ray") {
    auto rng = testutil::make_rng(0xa9ee);
    const char* corpus[] = {"(x^2, x^2/y)", "(x, y)", "(x^34, x*y)", "(x^34, x^11*y)",
                            "(x^34, x^21*y)", "(x, y^2)", "(x^2, y^3/x)",
                            "(x, (y^2 + x)/(1 + x*y))", "(x, x^3/y^2)", "(4*x^2, x*y)"};
    for (const char* s : corpus) {
        SkewProduct phi = Phi(s);
        for (int i = 0; i < 12; ++i) {
            // Sampled representatives need rational lambda-roots, so draw
            // integer exponents when lambda != 1.
            long den = phi.phi1.lambda == Frac(1) ? testutil::rand_int(rng, 1, 5) : 1;
            Frac t(testutil::rand_int(rng, -8, 16), den);
            PointII via_ray = map_ray(phi, t);
            PointII via_join = map_pointII(phi, PointII(PuiseuxGerm{}, t));
            CHECK(via_ray == via_join);
        }
    }
}

TEST_CASE("spine scaling on monomial annuli matches q * degree") {
    auto rng = testutil::make_rng(0x5ca1e);
    const char* corpus[] = {"(x^2, x^2/y)", "(x, y^2)", "(x^34, x^21*y)", "(x, x^3/y^2)",
                            "(x^2, y^3/x)"};
    for (const char* s : corpus) {
        SkewProduct phi = Phi(s);
        for (int i = 0; i < 10; ++i) {
            Frac t1(testutil::rand_int(rng, 0, 12), testutil::rand_int(rng, 1, 4));
            Frac gap(testutil::rand_int(rng, 1, 6), testutil::rand_int(rng, 1, 4));
            Frac t2 = t1 + gap;
            auto deg = annulus_degree(phi, PuiseuxGerm{}, t2, t1);
            if (!deg) continue;
            PointII a = map_ray(phi, t2);
            PointII b = map_ray(phi, t1);
            Frac lhs = hyp_dist(a, b);
            Frac rhs = phi.scale() * Frac(*deg) *
                       hyp_dist(PointII(PuiseuxGerm{}, t2), PointII(PuiseuxGerm{}, t1));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("phi1-only products preserve the order") {
    auto rng = testutil::make_rng(0x04de4);
    for (const char* s : {"(x, y)", "(x^2, y)", "(4*x^2, y)", "(x^3, y)"}) {
        SkewProduct phi = Phi(s);
        for (int i = 0; i < 40; ++i) {
            PuiseuxGerm g;
            g.set_term(Frac(testutil::rand_int(rng, 1, 3), testutil::rand_int(rng, 1, 3)),
                       Frac(testutil::rand_int(rng, 1, 3)));
            Frac r1(testutil::rand_int(rng, 4, 9), testutil::rand_int(rng, 1, 3));
            Frac r2 = r1 + Frac(testutil::rand_int(rng, 0, 4), testutil::rand_int(rng, 1, 3));
            PointII lo(g, r2), hi(g, r1);
            if (!leq(lo, hi)) continue;
            try {
                PointII il = map_pointII(phi, lo);
                PointII ih = map_pointII(phi, hi);
                CHECK(leq(il, ih));
            } catch (const std::domain_error&) {
                // irrational lambda root on this branch
            }
        }
    }
}
