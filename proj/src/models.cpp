#include "blowup/models.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace blowup {

namespace {

bool strictly_below(const PointII& a, const PointII& b) { return !(a == b) && leq(a, b); }

std::string inv_str(const PointII& p) {
    Invariants i = invariants(p);
    return "(a,b,m)=(" + i.a.get_str() + "," + i.b.get_str() + "," + i.m.get_str() + ")";
}

}  // namespace

VertexSet::VertexSet(std::vector<PointII> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end(), point_less);
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool VertexSet::contains(const PointII& p) const {
    return std::find(pts_.begin(), pts_.end(), p) != pts_.end();
}

VertexSet VertexSet::with(const PointII& p) const {
    std::vector<PointII> v = pts_;
    v.push_back(p);
    return VertexSet(std::move(v));
}

VertexSet VertexSet::without(const PointII& p) const {
    std::vector<PointII> v;
    for (const auto& q : pts_)
        if (!(q == p)) v.push_back(q);
    return VertexSet(std::move(v));
}

int Skeleton::index_of(const PointII& p) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].point == p) return static_cast<int>(i);
    return -1;
}

Skeleton skeleton(const VertexSet& gamma) {
    if (gamma.empty()) throw std::invalid_argument("skeleton: empty vertex set");
    std::vector<PointII> pts = gamma.vertices();
    std::vector<PointII> nodes = pts;
    auto have = [&](const PointII& p) {
        return std::find(nodes.begin(), nodes.end(), p) != nodes.end();
    };
    // Pairwise joins close the set under least upper bounds.
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            PointII jn = join(pts[i], pts[j]);
            if (!have(jn)) nodes.push_back(jn);
        }
    std::sort(nodes.begin(), nodes.end(), point_less);

    Skeleton sk;
    sk.nodes.resize(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        sk.nodes[i].point = nodes[i];
        sk.nodes[i].in_gamma = gamma.contains(nodes[i]);
    }
    for (size_t i = 0; i < nodes.size(); ++i) {
        int best = -1;
        for (size_t j = 0; j < nodes.size(); ++j) {
            if (i == j || !strictly_below(nodes[i], nodes[j])) continue;
            // Least strict upper bound: the deepest node above.
            if (best < 0 || strictly_below(nodes[j], nodes[best])) best = static_cast<int>(j);
        }
        sk.nodes[i].parent = best;
        if (best < 0) {
            if (sk.top >= 0) throw std::logic_error("skeleton: two maximal nodes");
            sk.top = static_cast<int>(i);
        }
    }
    for (size_t i = 0; i < nodes.size(); ++i)
        if (sk.nodes[i].parent >= 0)
            sk.nodes[sk.nodes[i].parent].children.push_back(static_cast<int>(i));
    return sk;
}

std::string DomainDescriptor::str() const {
    switch (kind) {
        case Kind::InfinityDisk:
            return "infinity-disk at " + boundary[0].str();
        case Kind::Disk:
            return "disk at " + boundary[0].str() + " in direction " + direction.str();
        case Kind::Annulus:
            return "annulus between " + boundary[0].str() + " and " + boundary[1].str();
        case Kind::MultiBoundary: {
            std::string s = "multi-boundary domain";
            if (contains_infinity) s += " (containing infinity)";
            s += " bounded by";
            for (const auto& p : boundary) s += " " + p.str();
            return s;
        }
    }
    return {};
}

namespace {

// Gamma-vertices reachable from node i downward without crossing another
// Gamma-vertex; Steiner nodes are traversed.
void gamma_frontier_below(const Skeleton& sk, int i, std::vector<PointII>& out) {
    if (sk.nodes[i].in_gamma) {
        out.push_back(sk.nodes[i].point);
        return;
    }
    for (int c : sk.nodes[i].children) gamma_frontier_below(sk, c, out);
}

}  // namespace

std::vector<DomainDescriptor> domains(const VertexSet& gamma) {
    Skeleton sk = skeleton(gamma);
    std::vector<DomainDescriptor> out;

    // Component containing infinity.
    {
        DomainDescriptor d;
        if (sk.nodes[sk.top].in_gamma) {
            d.kind = DomainDescriptor::Kind::InfinityDisk;
            d.boundary = {sk.nodes[sk.top].point};
        } else {
            d.kind = DomainDescriptor::Kind::MultiBoundary;
            gamma_frontier_below(sk, sk.top, d.boundary);
        }
        d.contains_infinity = true;
        out.push_back(std::move(d));
    }

    // Annuli and multi-boundary components below each Gamma-vertex, plus the
    // center disks.  Nodes are in canonical order, so the list is
    // deterministic.
    for (const auto& node : sk.nodes) {
        if (!node.in_gamma) continue;
        bool center_taken = false;
        for (int c : node.children) {
            const SkeletonNode& child = sk.nodes[c];
            if (direction_of(node.point, child.point) == Direction::to_center())
                center_taken = true;
            DomainDescriptor d;
            if (child.in_gamma) {
                d.kind = DomainDescriptor::Kind::Annulus;
                d.boundary = {child.point, node.point};
            } else {
                d.kind = DomainDescriptor::Kind::MultiBoundary;
                gamma_frontier_below(sk, c, d.boundary);
                d.boundary.push_back(node.point);
            }
            out.push_back(std::move(d));
        }
        if (!center_taken) {
            DomainDescriptor d;
            d.kind = DomainDescriptor::Kind::Disk;
            d.boundary = {node.point};
            d.direction = Direction::to_center();
            out.push_back(std::move(d));
        }
    }
    return out;
}

DomainDescriptor point_domain(const VertexSet& gamma, const PointII& xi) {
    if (gamma.empty()) throw std::invalid_argument("point_domain: empty vertex set");
    if (gamma.contains(xi)) throw std::invalid_argument("point_domain: point is a vertex");

    const PointII* up = nullptr;
    for (const auto& v : gamma.vertices()) {
        if (!strictly_below(xi, v)) continue;
        if (!up || strictly_below(v, *up)) up = &v;
    }
    if (!up) {
        // The component containing infinity.
        for (const auto& d : domains(gamma))
            if (d.contains_infinity) return d;
        throw std::logic_error("point_domain: no infinity component");
    }
    Direction dir = direction_of(*up, xi);
    std::vector<PointII> below;
    for (const auto& w : gamma.vertices())
        if (strictly_below(w, *up) && direction_of(*up, w) == dir) below.push_back(w);
    if (below.empty()) {
        DomainDescriptor d;
        d.kind = DomainDescriptor::Kind::Disk;
        d.boundary = {*up};
        d.direction = dir;
        return d;
    }
    std::vector<PointII> maxw;
    for (const auto& w : below) {
        bool maximal = true;
        for (const auto& w2 : below)
            if (strictly_below(w, w2)) maximal = false;
        if (maximal) maxw.push_back(w);
    }
    DomainDescriptor d;
    if (maxw.size() == 1) {
        d.kind = DomainDescriptor::Kind::Annulus;
        d.boundary = {maxw[0], *up};
    } else {
        d.kind = DomainDescriptor::Kind::MultiBoundary;
        d.boundary = maxw;
        d.boundary.push_back(*up);
    }
    return d;
}

bool farey_adjacent(const PointII& alpha, const PointII& beta) {
    if (alpha == beta) return false;
    const PointII* lo = nullptr;
    const PointII* hi = nullptr;
    if (leq(alpha, beta)) {
        lo = &alpha;
        hi = &beta;
    } else if (leq(beta, alpha)) {
        lo = &beta;
        hi = &alpha;
    } else {
        return false;
    }
    Invariants il = invariants(*lo);
    Invariants ih = invariants(*hi);
    mpz_class det = il.a * ih.b - il.b * ih.a;
    return det == il.m && il.m == gcd(il.b, ih.b);
}

Verdict check_smooth(const VertexSet& gamma) {
    if (gamma.empty()) throw std::invalid_argument("check_smooth: empty vertex set");
    Verdict v;
    for (const auto& d : domains(gamma)) {
        switch (d.kind) {
            case DomainDescriptor::Kind::InfinityDisk:
                if (invariants(d.boundary[0]).b != 1)
                    v.failures.emplace_back(d,
                                            "boundary is not integral: " + inv_str(d.boundary[0]));
                break;
            case DomainDescriptor::Kind::Annulus:
                if (!farey_adjacent(d.boundary[0], d.boundary[1]))
                    v.failures.emplace_back(d, "boundaries are not Farey adjacent: " +
                                                   inv_str(d.boundary[0]) + " vs " +
                                                   inv_str(d.boundary[1]));
                break;
            case DomainDescriptor::Kind::Disk:
                if (!is_free(d.boundary[0]))
                    v.failures.emplace_back(
                        d, "center disk at a satellite vertex: " + inv_str(d.boundary[0]));
                break;
            case DomainDescriptor::Kind::MultiBoundary:
                v.failures.emplace_back(d, "domain has more than two boundary vertices or "
                                           "incomparable maxima");
                break;
        }
    }
    v.ok = v.failures.empty();
    return v;
}

BlowupOp BlowupOp::free_at_infinity(PointII at) {
    BlowupOp op;
    op.kind = Kind::FreeAtInfinity;
    op.at = std::move(at);
    return op;
}

BlowupOp BlowupOp::free(PointII at, Direction dir) {
    BlowupOp op;
    op.kind = Kind::Free;
    op.at = std::move(at);
    op.direction = std::move(dir);
    return op;
}

BlowupOp BlowupOp::satellite(PointII lower, PointII upper) {
    BlowupOp op;
    op.kind = Kind::Satellite;
    op.lower = std::move(lower);
    op.upper = std::move(upper);
    return op;
}

std::string BlowupOp::str() const {
    switch (kind) {
        case Kind::FreeAtInfinity:
            return "free blowup at infinity on " + at.str();
        case Kind::Free:
            return "free blowup at " + at.str() + " in direction " + direction.str();
        case Kind::Satellite:
            return "satellite blowup between " + lower.str() + " and " + upper.str();
    }
    return {};
}

namespace {

void verify_farey_addition(const PointII& p, const mpz_class& a_pred, const mpz_class& b_pred) {
    Invariants i = invariants(p);
    if (i.a != a_pred || i.b != b_pred)
        throw std::logic_error("Farey-addition prediction (" + a_pred.get_str() + "," +
                               b_pred.get_str() + ") disagrees with recomputed " + inv_str(p) +
                               " at " + p.str());
}

}  // namespace

BlowupResult blow_up(const VertexSet& gamma, const BlowupOp& op) {
    switch (op.kind) {
        case BlowupOp::Kind::FreeAtInfinity: {
            if (!gamma.contains(op.at)) throw BlowupError("vertex " + op.at.str() + " not in set");
            Invariants i = invariants(op.at);
            if (i.b != 1)
                throw BlowupError("point at infinity is not smooth: boundary not integral, " +
                                  inv_str(op.at));
            for (const auto& v : gamma.vertices())
                if (!leq(v, op.at))
                    throw BlowupError("point at infinity is not smooth: " + v.str() +
                                      " is not below " + op.at.str());
            PointII nw(op.at.germ(), op.at.radius_exp() - Frac(1));
            if (gamma.contains(nw)) throw BlowupError("vertex " + nw.str() + " already present");
            verify_farey_addition(nw, i.a - 1, 1);
            return {gamma.with(nw), nw};
        }
        case BlowupOp::Kind::Free: {
            if (!gamma.contains(op.at)) throw BlowupError("vertex " + op.at.str() + " not in set");
            Invariants i = invariants(op.at);
            if (op.direction.kind == Direction::Kind::ToInfinity)
                throw BlowupError("blowing up toward infinity requires the infinity op");
            if (op.direction.kind == Direction::Kind::ToCenter && i.m != i.b)
                throw BlowupError("center direction at a satellite vertex is not smooth: " +
                                  inv_str(op.at));
            for (const auto& v : gamma.vertices())
                if (strictly_below(v, op.at) && direction_of(op.at, v) == op.direction)
                    throw BlowupError("direction " + op.direction.str() + " at " + op.at.str() +
                                      " already contains " + v.str());
            PuiseuxGerm germ = op.at.germ();
            if (op.direction.kind == Direction::Kind::Generic)
                germ.set_term(op.at.radius_exp(), op.direction.residue);
            PointII nw(germ, op.at.radius_exp() + Frac(1) / Frac(i.b));
            if (gamma.contains(nw)) throw BlowupError("vertex " + nw.str() + " already present");
            verify_farey_addition(nw, i.a + 1, i.b);
            return {gamma.with(nw), nw};
        }
        case BlowupOp::Kind::Satellite: {
            if (!gamma.contains(op.lower) || !gamma.contains(op.upper))
                throw BlowupError("satellite vertices must both be in the set");
            const PointII* lo = &op.lower;
            const PointII* hi = &op.upper;
            if (!strictly_below(*lo, *hi)) {
                std::swap(lo, hi);
                if (!strictly_below(*lo, *hi))
                    throw BlowupError("satellite vertices are not comparable: " + op.lower.str() +
                                      " vs " + op.upper.str());
            }
            Skeleton sk = skeleton(gamma);
            int il = sk.index_of(*lo);
            if (il < 0 || sk.nodes[il].parent < 0 ||
                !(sk.nodes[sk.nodes[il].parent].point == *hi))
                throw BlowupError("satellite vertices are not adjacent in the skeleton: " +
                                  lo->str() + " / " + hi->str());
            if (!farey_adjacent(*lo, *hi))
                throw BlowupError("satellite point is not smooth: boundaries not Farey adjacent, " +
                                  inv_str(*lo) + " vs " + inv_str(*hi));
            Invariants a = invariants(*lo);
            Invariants b = invariants(*hi);
            Frac r(a.a + b.a, a.b + b.b);
            PointII nw(lo->germ(), r);
            if (gamma.contains(nw)) throw BlowupError("vertex " + nw.str() + " already present");
            verify_farey_addition(nw, a.a + b.a, a.b + b.b);
            return {gamma.with(nw), nw};
        }
    }
    throw std::logic_error("blowup: bad op kind");
}

VertexSet replay(const VertexSet& base, const BlowupScript& script) {
    VertexSet g = base;
    for (const auto& step : script) {
        BlowupResult r = blow_up(g, step.op);
        if (!(r.added == step.result))
            throw BlowupError("replay: op produced " + r.added.str() + ", script recorded " +
                              step.result.str());
        g = r.set;
    }
    return g;
}

namespace {

// Gamma-vertices sharing an annulus or multi-boundary domain with p: the
// frontier of each adjacent skeleton subtree, plus the first Gamma-vertex
// above (gathering sibling frontiers when passing Steiner nodes).
std::vector<PointII> gamma_neighbors(const Skeleton& sk, const PointII& p) {
    int i = sk.index_of(p);
    if (i < 0) throw std::invalid_argument("vertex " + p.str() + " not in set");
    std::vector<PointII> out;
    for (int c : sk.nodes[i].children) gamma_frontier_below(sk, c, out);
    int cur = i;
    for (int up = sk.nodes[i].parent; up >= 0; up = sk.nodes[up].parent) {
        if (sk.nodes[up].in_gamma) {
            out.push_back(sk.nodes[up].point);
            break;
        }
        for (int c : sk.nodes[up].children)
            if (c != cur) gamma_frontier_below(sk, c, out);
        cur = up;
    }
    return out;
}

}  // namespace

Frac self_intersection(const VertexSet& gamma, const PointII& zeta) {
    if (!gamma.contains(zeta)) throw std::invalid_argument("self_intersection: vertex not in set");
    Skeleton sk = skeleton(gamma);
    mpz_class sum = 0;
    for (const auto& f : gamma_neighbors(sk, zeta)) sum += invariants(f).b;
    return -Frac(sum, invariants(zeta).b);
}

mpz_class closed_point_mult(const VertexSet& gamma, const DomainDescriptor& d) {
    (void)gamma;
    switch (d.kind) {
        case DomainDescriptor::Kind::Disk:
        case DomainDescriptor::Kind::InfinityDisk:
            return invariants(d.boundary[0]).b;
        case DomainDescriptor::Kind::Annulus:
            return invariants(d.boundary[0]).b + invariants(d.boundary[1]).b;
        case DomainDescriptor::Kind::MultiBoundary:
            throw std::invalid_argument(
                "closed_point_mult: multiplicity of a non-SNC point is not defined");
    }
    throw std::logic_error("closed_point_mult: bad kind");
}

std::string export_dual_graph(const VertexSet& gamma, GraphFormat format) {
    Skeleton sk = skeleton(gamma);
    if (format == GraphFormat::Dot) {
        std::ostringstream out;
        out << "graph dual {\n";
        out << "  rankdir=BT;\n";
        out << "  inf [label=\"inf\", shape=none];\n";
        for (size_t i = 0; i < sk.nodes.size(); ++i) {
            const auto& n = sk.nodes[i];
            out << "  n" << i << " [label=\"" << n.point.str() << "\\n"
                << inv_str(n.point) << " r=" << n.point.radius_exp().str() << "\"";
            if (!n.in_gamma) out << ", shape=diamond, style=dashed";
            out << "];\n";
        }
        out << "  n" << sk.top << " -- inf;\n";
        for (size_t i = 0; i < sk.nodes.size(); ++i) {
            int p = sk.nodes[i].parent;
            if (p < 0) continue;
            Frac len = hyp_dist(sk.nodes[i].point, sk.nodes[p].point);
            double flen = mpq_class(len.num(), len.den()).get_d();
            out << "  n" << i << " -- n" << p << " [label=\"" << len.str() << "\", len=" << flen
                << "];\n";
        }
        out << "}\n";
        return out.str();
    }
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    j["edges"] = nlohmann::json::array();
    for (size_t i = 0; i < sk.nodes.size(); ++i) {
        const auto& n = sk.nodes[i];
        Invariants inv = invariants(n.point);
        j["nodes"].push_back({{"id", i},
                              {"point", n.point.str()},
                              {"steiner", !n.in_gamma},
                              {"a", inv.a.get_str()},
                              {"b", inv.b.get_str()},
                              {"m", inv.m.get_str()},
                              {"radius_exp", n.point.radius_exp().str()}});
        if (n.parent >= 0)
            j["edges"].push_back({{"from", i},
                                  {"to", n.parent},
                                  {"length", hyp_dist(n.point, sk.nodes[n.parent].point).str()}});
    }
    return j.dump(2);
}

}  // namespace blowup
