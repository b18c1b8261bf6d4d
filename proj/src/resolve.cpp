#include <algorithm>
#include <optional>
#include <stdexcept>

#include "blowup/farey.hpp"
#include "blowup/models.hpp"

namespace blowup {

namespace {

bool strictly_below(const PointII& a, const PointII& b) { return !(a == b) && leq(a, b); }

// The unique maximal vertex, or nullopt when maxima are incomparable.
std::optional<PointII> unique_max(const VertexSet& g) {
    for (const auto& v : g.vertices()) {
        bool top = true;
        for (const auto& w : g.vertices())
            if (!leq(w, v)) top = false;
        if (top) return v;
    }
    return std::nullopt;
}

struct Resolver {
    VertexSet g;
    BlowupScript script;

    PointII emit(const BlowupOp& op) {
        BlowupResult r = blow_up(g, op);
        g = r.set;
        script.push_back({op, r.added});
        return r.added;
    }

    // Creates the point if missing; ops must produce exactly it.
    void ensure(const PointII& p, const BlowupOp& op) {
        if (g.contains(p)) return;
        PointII added = emit(op);
        if (!(added == p))
            throw std::logic_error("resolve: expected " + p.str() + ", op produced " +
                                   added.str());
    }

    // Integral chain on the branch of `germ` (zero germ for the base fibre):
    // makes zeta(trunc(germ), e) exist for every integer e in the needed
    // range, stepping down with center blowups and up with infinity blowups.
    void ensure_integer(const PuiseuxGerm& germ, const mpz_class& e) {
        PointII want(germ, Frac(e));
        if (g.contains(want)) return;
        // Existing integers on this branch.
        std::optional<mpz_class> lo, hi;
        for (const auto& v : g.vertices()) {
            if (!v.radius_exp().is_integer()) continue;
            if (!(PointII(germ, v.radius_exp()) == v)) continue;
            const mpz_class& k = v.radius_exp().num();
            if (!lo || k < *lo) lo = k;
            if (!hi || k > *hi) hi = k;
        }
        if (!lo) {
            // Walk the maximal vertex up until the branch chain appears.
            for (;;) {
                auto mx = unique_max(g);
                if (!mx)
                    throw BlowupError("resolve: no unique maximal vertex to step past infinity");
                PointII added = emit(BlowupOp::free_at_infinity(*mx));
                if (added.radius_exp().is_integer() &&
                    PointII(germ, added.radius_exp()) == added) {
                    lo = hi = added.radius_exp().num();
                    break;
                }
            }
        }
        for (mpz_class k = *hi + 1; k <= e; ++k)
            ensure(PointII(germ, Frac(k)),
                   BlowupOp::free(PointII(germ, Frac(k - 1)), Direction::to_center()));
        for (mpz_class k = *lo - 1; k >= e; --k) {
            auto mx = unique_max(g);
            if (!mx) throw BlowupError("resolve: no unique maximal vertex to step past infinity");
            ensure(PointII(germ, Frac(k)), BlowupOp::free_at_infinity(*mx));
        }
    }

    // Reaches zeta(branch, s) walking the 1/M grid of the branch from the
    // entry exponent, then Stern-Brocot satellites when s is off grid.
    void reach_on_branch(const PuiseuxGerm& branch, const mpz_class& M, const Frac& entry,
                        const Frac& s) {
        Frac gridstep = Frac(1) / Frac(M);
        Frac target_scaled = s * Frac(M);
        if (target_scaled.is_integer()) {
            for (Frac e = entry; e <= s; e += gridstep)
                ensure(PointII(branch, e),
                       BlowupOp::free(PointII(branch, e - gridstep), Direction::to_center()));
            return;
        }
        mpz_class n = target_scaled.floor();
        Frac hi_exp = Frac(n + 1) / Frac(M);
        for (Frac e = entry; e <= hi_exp; e += gridstep)
            ensure(PointII(branch, e),
                   BlowupOp::free(PointII(branch, e - gridstep), Direction::to_center()));
        // Satellite descent in M-scaled coordinates.
        FareyPair lo_pair(n, 1), hi_pair(n + 1, 1);
        FareyPair target(target_scaled.num(), target_scaled.den());
        for (const FareyPair& mid : stern_brocot_path(lo_pair, hi_pair, target)) {
            PointII lo_pt(branch, lo_pair.to_frac() / Frac(M));
            PointII hi_pt(branch, hi_pair.to_frac() / Frac(M));
            PointII added = emit(BlowupOp::satellite(lo_pt, hi_pt));
            Frac mid_exp = mid.to_frac() / Frac(M);
            if (!(added == PointII(branch, mid_exp)))
                throw std::logic_error("resolve: satellite step mismatch at " + added.str());
            if (mid < target)
                lo_pair = mid;
            else
                hi_pair = mid;
        }
    }
};

}  // namespace

BlowupScript resolve(const PointII& target, const VertexSet& base) {
    Verdict v = check_smooth(base);
    if (!v.ok)
        throw std::invalid_argument("resolve: base vertex set is not Farey: " +
                                    v.failures.front().second);
    Resolver rs{base, {}};
    if (rs.g.contains(target)) return rs.script;

    // Stage radii: each germ exponent in turn, then the target radius.
    std::vector<std::pair<Frac, Frac>> terms(target.germ().terms().begin(),
                                             target.germ().terms().end());
    std::vector<Frac> stage_radius;
    for (const auto& [e, c] : terms) stage_radius.push_back(e);
    stage_radius.push_back(target.radius_exp());

    PuiseuxGerm branch;  // germ prefix of the current stage

    // Stage 0: bracket the first radius within the integral chain of the
    // base fibre, then satellite down to it if it is off the integer grid.
    {
        const Frac& s = stage_radius[0];
        if (s.is_integer()) {
            rs.ensure_integer(branch, s.num());
        } else {
            rs.ensure_integer(branch, s.floor());
            rs.ensure_integer(branch, s.floor() + 1);
            rs.reach_on_branch(branch, 1, Frac(s.floor() + 1), s);
        }
    }

    // Stage k: descend into the generic direction of the k-th coefficient,
    // then walk the 1/b grid of the extended branch toward the next radius.
    for (size_t k = 1; k < stage_radius.size(); ++k) {
        const auto& [e, c] = terms[k - 1];  // e == stage_radius[k-1]
        PointII at(branch, e);
        mpz_class M = invariants(at).b;
        branch.set_term(e, c);
        PointII first(branch, e + Frac(1) / Frac(M));
        rs.ensure(first, BlowupOp::free(at, Direction::generic(c)));
        rs.reach_on_branch(branch, M, e + Frac(2) / Frac(M), stage_radius[k]);
    }
    if (!rs.g.contains(target)) throw std::logic_error("resolve: target not reached");
    return rs.script;
}

BlowupScript resolve(const PointII& target) {
    return resolve(target, VertexSet({PointII::gauss()}));
}

namespace {

// Tries to re-add the removed vertex c to rest with a single blowup.
std::optional<BlowupOp> readd_op(const VertexSet& rest, const PointII& c) {
    std::vector<BlowupOp> candidates;
    const PointII* up = nullptr;
    for (const auto& v : rest.vertices()) {
        if (!strictly_below(c, v)) continue;
        if (!up || strictly_below(v, *up)) up = &v;
    }
    std::vector<PointII> below;
    for (const auto& w : rest.vertices())
        if (strictly_below(w, c)) below.push_back(w);
    std::vector<PointII> maxw;
    for (const auto& w : below) {
        bool maximal = true;
        for (const auto& w2 : below)
            if (strictly_below(w, w2)) maximal = false;
        if (maximal) maxw.push_back(w);
    }
    if (up && maxw.size() == 1 &&
        direction_of(*up, maxw[0]) == direction_of(*up, c))
        candidates.push_back(BlowupOp::satellite(maxw[0], *up));
    if (up) candidates.push_back(BlowupOp::free(*up, direction_of(*up, c)));
    if (!up) {
        if (auto mx = unique_max(rest)) candidates.push_back(BlowupOp::free_at_infinity(*mx));
    }
    for (const auto& op : candidates) {
        try {
            BlowupResult r = blow_up(rest, op);
            if (r.added == c) return op;
        } catch (const BlowupError&) {
        }
    }
    return std::nullopt;
}

}  // namespace

DeconstructResult deconstruct(const VertexSet& gamma) {
    if (gamma.empty()) throw std::invalid_argument("deconstruct: empty vertex set");
    DeconstructResult res;
    VertexSet g = gamma;
    std::vector<BlowupStep> removed;
    while (g.size() > 1) {
        // The g-maximal, then order-minimal, then textually least vertex.
        mpz_class bmax = 0;
        for (const auto& v : g.vertices()) bmax = std::max(bmax, invariants(v).b);
        std::vector<PointII> pool;
        for (const auto& v : g.vertices())
            if (invariants(v).b == bmax) pool.push_back(v);
        std::vector<PointII> minimal;
        for (const auto& v : pool) {
            bool is_min = true;
            for (const auto& w : pool)
                if (strictly_below(w, v)) is_min = false;
            if (is_min) minimal.push_back(v);
        }
        PointII pick = minimal.front();
        for (const auto& v : minimal)
            if (v.str() < pick.str()) pick = v;

        VertexSet rest = g.without(pick);
        auto op = readd_op(rest, pick);
        if (!op) {
            res.ok = false;
            res.stuck = g;
            res.reason = "vertex " + pick.str() + " is not a smooth point blowup of the rest";
            return res;
        }
        removed.push_back({*op, pick});
        g = rest;
    }
    if (!is_integral(g.vertices().front())) {
        res.ok = false;
        res.stuck = g;
        res.reason = "remaining seed " + g.vertices().front().str() + " is not integral";
        return res;
    }
    res.ok = true;
    res.seed = g;
    res.script.assign(removed.rbegin(), removed.rend());
    return res;
}

}  // namespace blowup
