#include <algorithm>

#include "blowup/newton.hpp"
#include "blowup/skew.hpp"

namespace blowup {

namespace {

// Image region of a disk under phi2, before the phi1 exponent scaling:
// either everything (a bad direction), the open disk {|y - center| < |x|^exp},
// or its complement {|y - center| > |x|^exp}.
struct Region {
    bool everything = false;
    bool inside = true;
    PuiseuxJet center;
    Frac exp;
};

Frac norm_exp_at(const PointII& w, const PuiseuxJet& center) {
    // ||y - center||_w as an exponent: min(radius, val(germ - center)).
    PuiseuxGerm diff = w.germ() - center.germ;
    Frac v = diff.is_zero() ? center.order : std::min(*diff.valuation(), center.order);
    return std::min(w.radius_exp(), v);
}

bool region_contains(const Region& r, const PointII& w) {
    if (r.everything) return true;
    Frac e = norm_exp_at(w, r.center);
    return r.inside ? e > r.exp : e < r.exp;
}

// zeta strictly inside the region, used to locate the target domain.
PointII region_interior_point(const Region& r) {
    if (r.everything) throw std::logic_error("region_interior_point: everything");
    Frac e = r.inside ? r.exp + Frac(1) : r.exp - Frac(1);
    return PointII(r.center.germ, e);
}

// Roots of the z-expansion strictly inside the open disk {val(z) > r}.
mpz_class roots_inside_disk(const std::vector<PuiseuxGerm>& expansion, const Frac& r) {
    mpz_class count = 0;
    long deg = -1;
    for (long i = static_cast<long>(expansion.size()) - 1; i >= 0; --i)
        if (!expansion[static_cast<size_t>(i)].is_zero()) {
            deg = i;
            break;
        }
    if (deg < 1) return 0;
    for (const RootVal& rv : newton_root_valuations(expansion)) {
        if (!rv.val)
            count += rv.mult;
        else if (*rv.val > r)
            count += rv.mult;
    }
    return count;
}

// Image of the open disk {val(z) > r} under the rational function given by
// the z-expansions p/q, assuming q has no root in the closed disk.  Returns
// the disk D(p(0)/q(0), s) with s the boundary sup-norm exponent.
Region analytic_disk_image(const std::vector<PuiseuxGerm>& p, const std::vector<PuiseuxGerm>& q,
                           const Frac& r) {
    const PuiseuxGerm& p0 = p[0];
    const PuiseuxGerm& q0 = q[0];
    if (q0.is_zero()) throw std::logic_error("analytic_disk_image: pole at the center");
    std::optional<Frac> s_num;
    for (size_t i = 1; i < p.size() || i < q.size(); ++i) {
        PuiseuxGerm ni = (i < p.size() ? p[i] : PuiseuxGerm{}) * q0 -
                         p0 * (i < q.size() ? q[i] : PuiseuxGerm{});
        if (ni.is_zero()) continue;
        Frac v = *ni.valuation() + r * Frac(static_cast<long>(i));
        if (!s_num || v < *s_num) s_num = v;
    }
    if (!s_num) throw std::domain_error("disk image: phi2 is constant on the disk");
    std::vector<PuiseuxGerm> qv(q.begin(), q.end());
    Frac tropq = *tropical_valuation(qv, r);
    Frac s = *s_num - *q0.valuation() - tropq;

    Region out;
    out.inside = true;
    out.exp = s;
    if (p0.is_zero()) {
        out.center = PuiseuxJet(PuiseuxGerm{}, s + Frac(2));
    } else {
        Frac pad = s + Frac(2);
        PuiseuxJet c = jet_mul(PuiseuxJet(p0, pad + *q0.valuation() * Frac(2) + Frac(1)),
                               jet_reciprocal(PuiseuxJet(q0, pad + *q0.valuation() * Frac(2) + Frac(1))));
        out.center = jet_truncate(c, pad);
    }
    return out;
}

// Image region of the open disk {val(z) > r} for arbitrary zero/pole layout.
Region disk_image(std::vector<PuiseuxGerm> p, std::vector<PuiseuxGerm> q, const Frac& r) {
    mpz_class zeros = roots_inside_disk(p, r);
    mpz_class poles = roots_inside_disk(q, r);
    // The constant-in-z denominator can still vanish at the center.
    auto vanishes_at_center = [](const std::vector<PuiseuxGerm>& f) {
        return f.empty() || f[0].is_zero();
    };
    if (vanishes_at_center(q)) poles = std::max(poles, mpz_class(1));
    if (vanishes_at_center(p)) zeros = std::max(zeros, mpz_class(1));
    if (zeros > 0 && poles > 0) return Region{true, true, {}, Frac(0)};
    if (poles == 0) return analytic_disk_image(p, q, r);
    // Pole-only: image the reciprocal and invert the region.
    Region inv = analytic_disk_image(q, p, r);
    Frac vc = inv.center.germ.is_zero() ? inv.center.order : *inv.center.germ.valuation();
    if (inv.center.germ.is_zero() || vc > inv.exp) {
        // Zero lies inside the reciprocal image disk: the image is the
        // complement of a disk around the origin.
        return Region{false, false, PuiseuxJet(PuiseuxGerm{}, Frac(1) - inv.exp), -inv.exp};
    }
    Region out;
    out.inside = true;
    out.exp = inv.exp - vc * Frac(2);
    out.center = jet_reciprocal(inv.center);
    return out;
}

// Applies the phi1 half: scales exponents by q = 1/n and maps the center
// through the compositional inverse of phi1.
Region scale_region(const SkewProduct& phi, Region r) {
    if (r.everything) return r;
    Frac q = phi.scale();
    r.exp = r.exp * q;
    if (!r.center.germ.is_zero()) {
        PuiseuxJet inv = invert_series(phi.phi1.as_jet());
        r.center = substitute(r.center, inv);
    } else {
        r.center = PuiseuxJet(PuiseuxGerm{}, r.center.order * q);
    }
    return r;
}

std::vector<PuiseuxGerm> expansion_of(const YPoly& p, const PuiseuxGerm& center) {
    YPoly e = p.expanded_at(center);
    std::vector<PuiseuxGerm> out = e.coeffs;
    if (out.empty()) out.push_back(PuiseuxGerm{});
    return out;
}

// Flip y = center + 1/u: z-expansions in u of the same rational function,
// with the region val(u) > -r corresponding to the infinity side.
std::pair<std::vector<PuiseuxGerm>, std::vector<PuiseuxGerm>> flipped_expansions(
    const SkewProduct& phi, const PuiseuxGerm& center) {
    YPoly pe = phi.P.expanded_at(center);
    YPoly qe = phi.Q.expanded_at(center);
    size_t d = static_cast<size_t>(std::max(pe.deg(), qe.deg())) + 1;
    std::vector<PuiseuxGerm> pf(d), qf(d);
    for (size_t i = 0; i < d; ++i) {
        pf[i] = pe.coeff(d - 1 - i);
        qf[i] = qe.coeff(d - 1 - i);
    }
    return {pf, qf};
}

PointII spine_interior_point(const PointII& u, const PointII& v) {
    if (u == v) throw std::logic_error("spine_interior_point: degenerate spine");
    if (leq(u, v)) return PointII(u.germ(), (u.radius_exp() + v.radius_exp()) / Frac(2));
    if (leq(v, u)) return PointII(v.germ(), (u.radius_exp() + v.radius_exp()) / Frac(2));
    PointII j = join(u, v);
    return PointII(u.germ(), (u.radius_exp() + j.radius_exp()) / Frac(2));
}

// w lies strictly inside the open annuloid bounded by u and v.
bool inside_annuloid(const PointII& u, const PointII& v, const PointII& w) {
    if (w == u || w == v) return false;
    PointII j1 = join(u, v);
    PointII j2 = join(u, w);
    PointII j3 = join(v, w);
    PointII med = j1;
    if (leq(j2, med)) med = j2;
    if (leq(j3, med)) med = j3;
    return !(med == u) && !(med == v);
}

DomainVerdict classify_annulus(const SkewProduct& phi, const VertexSet& tgt,
                               const DomainDescriptor& d) {
    DomainVerdict out;
    out.domain = d;
    const PointII& lower = d.boundary[0];
    const PointII& upper = d.boundary[1];
    auto deg = annulus_degree(phi, lower.germ(), lower.radius_exp(), upper.radius_exp());
    if (!deg) {
        out.kind = DomainVerdict::Kind::Unknown;
        out.note = "phi2 has a zero or pole inside the annulus";
        return out;
    }
    PointII iu, iv;
    try {
        iu = map_pointII(phi, lower);
        iv = map_pointII(phi, upper);
    } catch (const InstabilityError& e) {
        out.kind = DomainVerdict::Kind::Unknown;
        out.note = e.what();
        return out;
    }
    for (const auto& w : tgt.vertices())
        if (inside_annuloid(iu, iv, w)) out.hits.push_back(w);
    if (!out.hits.empty()) {
        out.kind = DomainVerdict::Kind::Indeterminate;
        return out;
    }
    out.kind = DomainVerdict::Kind::Continuous;
    // No target vertex meets the open image annuloid, so any interior point
    // of the image spine identifies the containing domain.
    out.image_domain = point_domain(tgt, spine_interior_point(iu, iv));
    return out;
}

DomainVerdict classify_disk(const SkewProduct& phi, const VertexSet& tgt,
                            const DomainDescriptor& d) {
    DomainVerdict out;
    out.domain = d;
    const PointII& bd = d.boundary[0];
    try {
        Region region;
        if (d.kind == DomainDescriptor::Kind::InfinityDisk) {
            auto [pf, qf] = flipped_expansions(phi, bd.germ());
            region = disk_image(pf, qf, -bd.radius_exp());
        } else {
            region = disk_image(expansion_of(phi.P, bd.germ()), expansion_of(phi.Q, bd.germ()),
                                bd.radius_exp());
        }
        region = scale_region(phi, region);
        if (region.everything) {
            out.kind = DomainVerdict::Kind::Indeterminate;
            out.hits = tgt.vertices();
            out.note = "bad direction: the image covers the projective line";
            return out;
        }
        for (const auto& w : tgt.vertices())
            if (region_contains(region, w)) out.hits.push_back(w);
        if (!out.hits.empty()) {
            out.kind = DomainVerdict::Kind::Indeterminate;
            return out;
        }
        out.kind = DomainVerdict::Kind::Continuous;
        PointII probe = region_interior_point(region);
        if (tgt.contains(probe)) {
            out.kind = DomainVerdict::Kind::Unknown;
            out.note = "image probe landed on a target vertex";
            return out;
        }
        out.image_domain = point_domain(tgt, probe);
        return out;
    } catch (const InstabilityError& e) {
        out.kind = DomainVerdict::Kind::Unknown;
        out.note = e.what();
        return out;
    } catch (const std::domain_error& e) {
        out.kind = DomainVerdict::Kind::Unknown;
        out.note = e.what();
        return out;
    }
}

}  // namespace

MapVerdict classify(const SkewProduct& phi, const VertexSet& src, const VertexSet& tgt) {
    MapVerdict out;
    for (const auto& z : src.vertices()) {
        VertexVerdict vv;
        vv.source = z;
        vv.image = map_pointII(phi, z);
        if (tgt.contains(vv.image)) {
            vv.kind = VertexVerdict::Kind::MapsToDivisor;
        } else {
            vv.kind = VertexVerdict::Kind::Contracted;
            vv.target_domain = point_domain(tgt, vv.image);
        }
        out.vertices.push_back(std::move(vv));
    }
    for (const auto& d : domains(src)) {
        switch (d.kind) {
            case DomainDescriptor::Kind::Annulus:
                out.domains.push_back(classify_annulus(phi, tgt, d));
                break;
            case DomainDescriptor::Kind::Disk:
            case DomainDescriptor::Kind::InfinityDisk:
                out.domains.push_back(classify_disk(phi, tgt, d));
                break;
            case DomainDescriptor::Kind::MultiBoundary: {
                DomainVerdict dv;
                dv.domain = d;
                dv.kind = DomainVerdict::Kind::Unknown;
                dv.note = "multi-boundary source domain";
                out.domains.push_back(std::move(dv));
                break;
            }
        }
    }
    return out;
}

}  // namespace blowup
