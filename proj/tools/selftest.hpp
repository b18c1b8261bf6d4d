#pragma once

#include <functional>
#include <iostream>
#include <random>
#include <vector>

#include "blowup/farey.hpp"
#include "blowup/models.hpp"
#include "blowup/skew.hpp"

// Golden cases behind `blowup-calc selftest`: the worked examples that pin
// down the calculus, plus a seeded random consistency group.
namespace selftest {

using namespace blowup;

struct Group {
    const char* name;
    std::function<bool()> run;
};

inline bool run(unsigned long seed) {
    auto Z = [](const char* s) { return PointII::parse(s); };
    auto F = [](const char* s) { return FareyPair::parse(s); };
    auto G = [](const char* s) { return PuiseuxGerm::parse(s); };

    std::vector<Group> groups;
    groups.push_back({"farey arithmetic", [&] {
        return mediant(F("0/1"), F("1/1")) == F("1/2") &&
               mediant(F("2/5"), F("3/7")) == F("5/12") &&
               bracket(F("3/4"), F("1/2")) == 2 && is_adjacent(F("2/5"), F("5/12")) &&
               parents(F("7/17")) == std::pair{F("2/5"), F("5/12")} &&
               haros_coeffs(F("1/3"), F("1/2"), F("2/5")) == std::pair{mpz_class(1), mpz_class(1)} &&
               stern_brocot_path(F("0/1"), F("1/1"), F("1/34")).size() == 33 &&
               stern_brocot_path(F("0/1"), F("1/1"), F("21/34")).size() == 7;
    }});
    groups.push_back({"multiplicities", [&] {
        return G("x^(5/7) + x + x^(4/3)").multiplicity() == 21 &&
               G("x^(5/7)").multiplicity() == 7;
    }});
    groups.push_back({"invariant triples", [&] {
        Invariants a = invariants(Z("zeta(0, 5/7)"));
        Invariants b = invariants(Z("zeta(x^(5/7) + x, 4/3)"));
        Invariants c = invariants(Z("zeta(x^(1/3) - 7*x^(1/2), 5/9)"));
        return a.m == 1 && a.b == 7 && a.a == 5 && b.m == 7 && b.b == 21 && b.a == 28 &&
               c.m == 6 && c.b == 18 && c.a == 10;
    }});
    groups.push_back({"farey adjacency", [&] {
        return farey_adjacent(Z("zeta(0, 1/2)"), Z("zeta(x^(1/2), 3/4)")) &&
               !farey_adjacent(Z("zeta(0, 1/3)"), Z("zeta(0, 2/3)")) &&
               !farey_adjacent(Z("zeta(x^(1/3), 1/2)"), Z("zeta(0, 0)"));
    }});
    groups.push_back({"blowup calculus", [&] {
        VertexSet g = VertexSet({Z("zeta(0, 0)"), Z("zeta(0, 1)"), Z("zeta(0, 2)")});
        auto r = blow_up(g, BlowupOp::satellite(Z("zeta(0, 2)"), Z("zeta(0, 1)")));
        if (!(r.added == Z("zeta(0, 3/2)"))) return false;
        PointII a(G("x^(5/7) + x"), Frac(9, 7));
        PointII b(G("x^(5/7) + x"), Frac(19, 14));
        auto r2 = blow_up(VertexSet({a, b}), BlowupOp::satellite(b, a));
        return r2.added == PointII(G("x^(5/7) + x"), Frac(28, 21));
    }});
    groups.push_back({"resolution counts", [&] {
        if (resolve(Z("zeta(0, 1/34)")).size() != 34) return false;
        if (resolve(Z("zeta(0, 11/34)")).size() != 14) return false;
        if (resolve(Z("zeta(0, 21/34)")).size() != 8) return false;
        BlowupScript s = resolve(Z("zeta(x^(5/7) + x + x^(4/3), 3/2)"));
        if (s.size() != 17) return false;
        VertexSet fin = replay(VertexSet({PointII::gauss()}), s);
        return fin.contains(Z("zeta(x^(5/7), 6/7)")) &&
               fin.contains(PointII(G("x^(5/7) + x"), Frac(19, 14))) &&
               fin.contains(PointII(G("x^(5/7) + x"), Frac(28, 21))) && check_smooth(fin).ok;
    }});
    groups.push_back({"smoothness verdicts", [&] {
        return check_smooth(VertexSet({Z("zeta(0, 0)")})).ok &&
               !check_smooth(VertexSet({Z("zeta(0, 0)"), Z("zeta(0, 2/3)")})).ok &&
               !deconstruct(VertexSet({Z("zeta(0, 0)"), Z("zeta(0, 2/3)")})).ok;
    }});
    groups.push_back({"self-intersections", [&] {
        VertexSet three({Z("zeta(0, 0)"), Z("zeta(0, 1/2)"), Z("zeta(0, 1)")});
        return self_intersection(VertexSet({Z("zeta(0, 0)")}), Z("zeta(0, 0)")) == Frac(0) &&
               self_intersection(three, Z("zeta(0, 1/2)")) == Frac(-1) &&
               self_intersection(three, Z("zeta(0, 0)")) == Frac(-2);
    }});
    groups.push_back({"skew orbit and rays", [&] {
        SkewProduct phi = SkewProduct::parse("(x^2, x^2/y)");
        auto pts = orbit(phi, PointII::gauss(), 5);
        std::vector<Frac> expect{Frac(0), Frac(1), Frac(1, 2), Frac(3, 4), Frac(5, 8),
                                 Frac(11, 16)};
        for (size_t i = 0; i < pts.size(); ++i)
            if (!(pts[i].radius_exp() == expect[i])) return false;
        return map_ray(phi, Frac(2, 3)) == Z("zeta(0, 2/3)") &&
               map_ray(SkewProduct::parse("(x^34, x^21*y)"), Frac(0)) == Z("zeta(0, 21/34)");
    }});
    groups.push_back({"reduction", [&] {
        return !reduction(SkewProduct::parse("(x^2, x^2/y)")).good &&
               reduction(SkewProduct::parse("(x, y^2)")).good &&
               reduction(SkewProduct::parse("(x, (y^2 + x)/(1 + x*y))")).good;
    }});
    groups.push_back({"contraction and indeterminacy", [&] {
        SkewProduct phi = SkewProduct::parse("(x^2, x^2/y)");
        VertexSet gauss({PointII::gauss()});
        MapVerdict v = classify(phi, gauss, gauss);
        if (v.vertices[0].kind != VertexVerdict::Kind::Contracted) return false;
        bool disk_indeterminate = false;
        for (const auto& dv : v.domains)
            if (dv.domain.kind == DomainDescriptor::Kind::Disk &&
                dv.kind == DomainVerdict::Kind::Indeterminate)
                disk_indeterminate = true;
        VertexSet two({PointII::gauss(), Z("zeta(0, 1)")});
        MapVerdict w = classify(phi, two, two);
        bool annulus_cont = false;
        for (const auto& dv : w.domains)
            if (dv.domain.kind == DomainDescriptor::Kind::Annulus &&
                dv.kind == DomainVerdict::Kind::Continuous)
                annulus_cont = true;
        return disk_indeterminate && annulus_cont;
    }});
    groups.push_back({"random scripts (seeded)", [&] {
        std::mt19937_64 rng(seed);
        for (int trial = 0; trial < 25; ++trial) {
            VertexSet g({PointII::gauss()});
            int n = static_cast<int>(rng() % 12);
            for (int i = 0; i < n; ++i) {
                // A center blowup on the deepest free vertex always exists.
                const PointII* at = nullptr;
                for (const auto& v : g.vertices())
                    if (is_free(v)) at = &v;
                if (!at) break;
                bool occupied = false;
                for (const auto& w : g.vertices())
                    if (!(w == *at) && leq(w, *at) &&
                        direction_of(*at, w) == Direction::to_center())
                        occupied = true;
                if (occupied) break;
                g = blow_up(g, BlowupOp::free(*at, rng() % 2 == 0
                                                       ? Direction::to_center()
                                                       : Direction::generic(Frac(1))))
                        .set;
            }
            bool smooth = check_smooth(g).ok;
            DeconstructResult d = deconstruct(g);
            if (smooth != d.ok) return false;
            if (d.ok && !(replay(d.seed, d.script) == g)) return false;
        }
        return true;
    }});

    bool all = true;
    for (const auto& g : groups) {
        bool ok = false;
        try {
            ok = g.run();
        } catch (const std::exception& e) {
            std::cout << "FAIL " << g.name << " (exception: " << e.what() << ")\n";
            all = false;
            continue;
        }
        std::cout << (ok ? "PASS " : "FAIL ") << g.name << "\n";
        all = all && ok;
    }
    return all;
}

}  // namespace selftest
