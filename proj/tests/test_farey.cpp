#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blowup/farey.hpp"
#include "test_util.hpp"

using namespace blowup;

static FareyPair fp(long a, long b) { return FareyPair(a, b); }

TEST_CASE("mediant") {
    CHECK(mediant(fp(0, 1), fp(1, 1)) == fp(1, 2));
    CHECK(mediant(fp(2, 5), fp(3, 7)) == fp(5, 12));
    CHECK(mediant(fp(-1, 0), fp(5, 1)) == fp(4, 1));
    CHECK(mediant(fp(9, 7), fp(10, 7)) == fp(19, 14));
    CHECK_THROWS_AS(mediant(fp(1, 2), fp(1, 2)), std::invalid_argument);
}

TEST_CASE("mediant lies strictly between and stays adjacent") {
    auto rng = testutil::make_rng();
    for (int i = 0; i < 500; ++i) {
        FareyPair p(testutil::rand_int(rng, -20, 20), testutil::rand_int(rng, 1, 20));
        FareyPair q(testutil::rand_int(rng, -20, 20), testutil::rand_int(rng, 1, 20));
        if (p == q) continue;
        if (q < p) std::swap(p, q);
        FareyPair m = mediant(p, q);
        CHECK(p < m);
        CHECK(m < q);
        if (is_adjacent(p, q)) {
            CHECK(is_adjacent(p, m));
            CHECK(is_adjacent(m, q));
        }
    }
}

TEST_CASE("bracket") {
    CHECK(bracket(fp(1, 2), fp(2, 3)) == -1);
    CHECK(bracket(fp(3, 4), fp(1, 2)) == 2);
    CHECK(bracket(fp(7, 17), fp(7, 17)) == 0);
}

TEST_CASE("adjacency") {
    CHECK_FALSE(is_adjacent(fp(0, 1), fp(34, 1)));  // bracket -34
    CHECK(bracket(fp(0, 1), fp(34, 1)) == -34);
    CHECK(is_adjacent(fp(1, 3), fp(1, 4)));
    CHECK(is_adjacent(fp(2, 5), fp(5, 12)));
    // For adjacent p < q: q - p = 1/(b d) exactly.
    auto rng = testutil::make_rng(2);
    for (int i = 0; i < 500; ++i) {
        FareyPair p(testutil::rand_int(rng, -30, 30), testutil::rand_int(rng, 1, 30));
        FareyPair q(testutil::rand_int(rng, -30, 30), testutil::rand_int(rng, 1, 30));
        if (p == q || !is_adjacent(p, q)) continue;
        if (q < p) std::swap(p, q);
        CHECK(q.to_frac() - p.to_frac() == Frac(mpz_class(1), p.b() * q.b()));
    }
}

TEST_CASE("parents by Bezout") {
    CHECK(parents(fp(7, 17)) == std::pair{fp(2, 5), fp(5, 12)});
    CHECK(parents(fp(1, 2)) == std::pair{fp(0, 1), fp(1, 1)});
    // Integer fractions: the Bezout normalization 1 <= den <= den(p) makes
    // the parents the neighbouring integers.
    CHECK(parents(fp(5, 1)) == std::pair{fp(4, 1), fp(6, 1)});
    CHECK(parents(fp(-3, 1)) == std::pair{fp(-4, 1), fp(-2, 1)});
}

TEST_CASE("parents against brute-force oracle") {
    // Oracle: for den(p) > 1 the parents are the unique adjacent fractions on
    // each side with denominator in [1, den(p)); uniqueness fails only if we
    // allowed denominator 0.
    for (long q = 2; q <= 40; ++q) {
        for (long p = -2 * q; p <= 2 * q; ++p) {
            if (blowup::gcd(mpz_class(p < 0 ? -p : p), mpz_class(q)) != 1) continue;
            FareyPair t(p, q);
            FareyPair lo(0, 1), hi(0, 1);
            bool found_lo = false, found_hi = false;
            for (long d = 1; d < q; ++d) {
                for (long c = -3 * q; c <= 3 * q; ++c) {
                    FareyPair cand(c, d);
                    if (cand.b() != d) continue;  // not reduced
                    if (!is_adjacent(cand, t)) continue;
                    if (cand < t) {
                        CHECK_FALSE(found_lo);
                        lo = cand;
                        found_lo = true;
                    } else {
                        CHECK_FALSE(found_hi);
                        hi = cand;
                        found_hi = true;
                    }
                }
            }
            REQUIRE(found_lo);
            REQUIRE(found_hi);
            auto [plo, phi] = parents(t);
            CHECK(plo == lo);
            CHECK(phi == hi);
            CHECK(is_adjacent(plo, phi));  // adjacent triple when den > 1
            CHECK(mediant(plo, phi) == t);
        }
    }
}

TEST_CASE("haros coefficients") {
    CHECK(haros_coeffs(fp(0, 1), fp(1, 1), fp(7, 17)) == std::pair{mpz_class(10), mpz_class(7)});
    CHECK(haros_coeffs(fp(0, 1), fp(1, 1), fp(1, 2)) == std::pair{mpz_class(1), mpz_class(1)});
    CHECK(haros_coeffs(fp(1, 3), fp(1, 2), fp(2, 5)) == std::pair{mpz_class(1), mpz_class(1)});
    CHECK_THROWS_AS(haros_coeffs(fp(0, 1), fp(2, 1), fp(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(haros_coeffs(fp(0, 1), fp(1, 1), fp(3, 2)), std::invalid_argument);
    // Haros inequality: q >= b + d for any interior fraction.
    auto [m, n] = haros_coeffs(fp(2, 5), fp(3, 7), fp(17, 41));
    CHECK(m * 2 + n * 3 == 17);
    CHECK(m * 5 + n * 7 == 41);
}

TEST_CASE("stern-brocot path") {
    auto path = stern_brocot_path(fp(0, 1), fp(1, 1), fp(1, 34));
    REQUIRE(path.size() == 33);
    CHECK(path.front() == fp(1, 2));
    CHECK(path.back() == fp(1, 34));

    auto golden = stern_brocot_path(fp(0, 1), fp(1, 1), fp(21, 34));
    std::vector<FareyPair> expect{fp(1, 2), fp(2, 3), fp(3, 5), fp(5, 8),
                                  fp(8, 13), fp(13, 21), fp(21, 34)};
    CHECK(golden == expect);

    // The 7Z-denominator coordinates of the arboreal example, scaled by 7.
    auto scaled = stern_brocot_path(fp(9, 1), fp(10, 1), fp(28, 3));
    std::vector<FareyPair> expect2{fp(19, 2), fp(28, 3)};
    CHECK(scaled == expect2);

    CHECK_THROWS_AS(stern_brocot_path(fp(0, 1), fp(1, 1), fp(3, 2)), std::invalid_argument);
}

TEST_CASE("path length equals continued-fraction quotient sum (oracle, den <= 50)") {
    for (long q = 2; q <= 50; ++q) {
        for (long p = 1; p < q; ++p) {
            if (blowup::gcd(mpz_class(p), mpz_class(q)) != 1) continue;
            auto path = stern_brocot_path(fp(0, 1), fp(1, 1), fp(p, q));
            mpz_class expect = testutil::cf_quotient_sum(p, q) - 1;
            CHECK(mpz_class(path.size()) == expect);
        }
    }
}

TEST_CASE("complete sequences") {
    auto f = complete_sequence(0, 1, 2);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == fp(0, 1));
    CHECK(f[1] == fp(1, 2));
    CHECK(f[2] == fp(1, 1));

    CHECK(complete_sequence(0, 1, 5).size() == 11);

    // Order 5 between 0 and 3; consecutive entries must be adjacent.
    auto g = complete_sequence(0, 3, 5);
    for (size_t i = 0; i + 1 < g.size(); ++i) {
        CHECK(g[i] < g[i + 1]);
        CHECK(is_adjacent(g[i], g[i + 1]));
    }
}

TEST_CASE("complete sequence equals mediant closure (oracle, B <= 12)") {
    for (long B = 1; B <= 12; ++B) {
        for (auto [lo, hi] : {std::pair<long, long>{0, 1}, {0, 3}, {-2, 2}}) {
            auto got = complete_sequence(lo, hi, B);
            auto expect = testutil::mediant_closure(lo, hi, B);
            CHECK(got == expect);
        }
    }
}

TEST_CASE("ordering treats 1/0 as +inf and -1/0 as -inf") {
    CHECK(fp(-1, 0) < fp(-1000, 1));
    CHECK(fp(1000, 1) < fp(1, 0));
    CHECK(fp(-1, 0) < fp(1, 0));
    CHECK(is_adjacent(fp(1, 0), fp(5, 1)));
}

TEST_CASE("serialization round trip") {
    for (auto s : {"5/12", "-1/0", "1/0", "7/17", "-3/1"}) {
        CHECK(FareyPair::parse(s).str() == s);
    }
    CHECK(FareyPair::parse("6/4") == fp(3, 2));
}
