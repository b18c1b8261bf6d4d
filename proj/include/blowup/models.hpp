#pragma once

#include <string>
#include <vector>

#include "blowup/berkovich.hpp"

namespace blowup {

// Finite set of Type II points (Galois-orbit representatives), deduplicated
// and kept in the canonical order (radius exponent, then germ).
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<PointII> pts);

    const std::vector<PointII>& vertices() const { return pts_; }
    bool empty() const { return pts_.empty(); }
    size_t size() const { return pts_.size(); }
    bool contains(const PointII& p) const;

    VertexSet with(const PointII& p) const;
    VertexSet without(const PointII& p) const;

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.pts_ == b.pts_; }

private:
    std::vector<PointII> pts_;
};

// Convex-hull tree of a vertex set: the vertices plus their pairwise joins
// (Steiner points), with parent links toward infinity.  parent == -1 marks
// the top node, whose parent is the virtual root at infinity.
struct SkeletonNode {
    PointII point;
    bool in_gamma = false;
    int parent = -1;
    std::vector<int> children;
};

struct Skeleton {
    std::vector<SkeletonNode> nodes;
    int top = -1;

    int index_of(const PointII& p) const;  // -1 when absent
};

Skeleton skeleton(const VertexSet& gamma);

// One of the finitely many non-generic Gamma-domains.  Generic-direction
// disks are automatically Farey and are not enumerated.
struct DomainDescriptor {
    enum class Kind { Disk, Annulus, InfinityDisk, MultiBoundary };
    Kind kind = Kind::Disk;
    // Disk: {vertex}; Annulus: {lower, upper}; InfinityDisk: {vertex};
    // MultiBoundary: all boundary vertices (lower ones first, upper last when
    // one exists).
    std::vector<PointII> boundary;
    Direction direction;            // Disk only
    bool contains_infinity = false; // InfinityDisk and the infinity MultiBoundary

    std::string str() const;
};

std::vector<DomainDescriptor> domains(const VertexSet& gamma);

// Locates the Gamma-domain containing a point xi not in Gamma.  May return a
// generic-direction Disk that domains() leaves implicit.
DomainDescriptor point_domain(const VertexSet& gamma, const PointII& xi);

// Generalized Farey adjacency: comparable, and with alpha the deeper point,
// a(alpha) b(beta) - b(alpha) a(beta) = m(alpha) = gcd(b(alpha), b(beta)).
bool farey_adjacent(const PointII& alpha, const PointII& beta);

struct Verdict {
    bool ok = true;
    std::vector<std::pair<DomainDescriptor, std::string>> failures;
};

// The smoothness criterion: a vertex set is Farey iff the infinity component
// is a disk with integral boundary, every annulus is Farey adjacent, every
// center disk sits at a free vertex, and no multi-boundary domain exists.
Verdict check_smooth(const VertexSet& gamma);

struct BlowupOp {
    enum class Kind { FreeAtInfinity, Free, Satellite };
    Kind kind = Kind::Free;
    PointII at;         // Free / FreeAtInfinity
    Direction direction;  // Free
    PointII lower, upper; // Satellite

    static BlowupOp free_at_infinity(PointII at);
    static BlowupOp free(PointII at, Direction dir);
    static BlowupOp satellite(PointII lower, PointII upper);

    std::string str() const;
};

struct BlowupStep {
    BlowupOp op;
    PointII result;
};

using BlowupScript = std::vector<BlowupStep>;

// Thrown when a blowup precondition fails; the message carries the failing
// smoothness reason.
struct BlowupError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BlowupResult {
    VertexSet set;
    PointII added;
};

// Performs one smooth point blowup.  The new vertex's invariants are
// recomputed from its (germ, radius) and checked against the Farey-addition
// prediction; disagreement is a logic error.
BlowupResult blow_up(const VertexSet& gamma, const BlowupOp& op);

// Replays a script from a base set; throws BlowupError on any violation.
VertexSet replay(const VertexSet& base, const BlowupScript& script);

// Minimal blowup script from a Farey base (default {zeta(0,1)}) whose final
// set contains the target.  Every intermediate set is Farey.
BlowupScript resolve(const PointII& target, const VertexSet& base);
BlowupScript resolve(const PointII& target);

struct DeconstructResult {
    bool ok = false;
    BlowupScript script;   // on success: replays from seed to gamma
    VertexSet seed;        // on success: the singleton integral seed
    // On failure: the configuration that got stuck and the reason.
    VertexSet stuck;
    std::string reason;
};

// Independent oracle for check_smooth: repeatedly removes the g-maximal,
// then <=-minimal, then textually least vertex, requiring each removal to be
// a valid blowup of the remaining set.  Succeeds iff the set is Farey.
DeconstructResult deconstruct(const VertexSet& gamma);

// -(sum of b(F) over skeleton-adjacent gamma-vertices F) / b(zeta); 0 iff
// the set is the singleton {zeta}.
Frac self_intersection(const VertexSet& gamma, const PointII& zeta);

// Multiplicity of the closed point under a disk or annulus domain:
// b(boundary) for disks, b(lower) + b(upper) for annuli.  MultiBoundary
// domains have no SNC multiplicity and raise std::invalid_argument.
mpz_class closed_point_mult(const VertexSet& gamma, const DomainDescriptor& d);

enum class GraphFormat { Dot, Json };

// Deterministic dual-graph export; nodes carry (a, b, m) and the radius
// exponent, edge lengths are hyperbolic distances, Steiner nodes are marked.
std::string export_dual_graph(const VertexSet& gamma, GraphFormat format);

}  // namespace blowup
