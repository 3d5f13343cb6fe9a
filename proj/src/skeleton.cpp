#include "nccc/skeleton.hpp"

#include <algorithm>
#include <stdexcept>

namespace nccc {

bool in_perp_plus_lattice(const Fan& f, const std::vector<std::size_t>& cone, const QVec& x)
{
    return std::all_of(cone.begin(), cone.end(),
                       [&](std::size_t i) { return is_integer(dot(to_qvec(f.rays[i]), x)); });
}

std::optional<std::vector<std::size_t>> carrier_cone(const Fan& f, const QVec& v)
{
    for (const auto& c : f.all_cones()) {
        if (f.cone(c).contains_relint(v))
            return c;
    }
    return std::nullopt;
}

SkeletonMembership skeleton_member(const Fan& f, const QVec& x, const QVec& xi)
{
    if (x.size() != f.dim || xi.size() != f.dim)
        throw std::invalid_argument("skeleton_member: dimension mismatch");
    QVec neg = xi;
    for (auto& c : neg)
        c = -c;
    // every cone containing -xi contains its carrier, whose perp is the largest
    auto tau = carrier_cone(f, neg);
    SkeletonMembership out;
    if (tau && in_perp_plus_lattice(f, *tau, x)) {
        out.member = true;
        out.witness = *tau;
    }
    return out;
}

bool skeleton_refines(const Fan& coarse, const Fan& fine)
{
    if (!is_refinement(coarse, fine))
        throw std::invalid_argument("skeleton_refines: second fan does not refine the first");
    auto fine_cones = fine.all_cones();
    for (const auto& sc : coarse.all_cones()) {
        Cone sigma = coarse.cone(sc);
        std::size_t d = sigma.dimension();
        std::vector<NncPolyhedron> pieces;
        for (const auto& tc : fine_cones) {
            Cone tau = fine.cone(tc);
            bool inside = std::all_of(tc.begin(), tc.end(),
                                      [&](std::size_t i) { return sigma.contains(to_qvec(fine.rays[i])); });
            if (!inside)
                continue;
            // tau-perp contains sigma-perp iff span(tau) lies in span(sigma)
            std::vector<QVec> rows;
            for (const auto& g : sigma.generators())
                rows.push_back(to_qvec(g));
            for (auto i : tc)
                rows.push_back(to_qvec(fine.rays[i]));
            if (rank(QMatrix::from_rows(rows, coarse.dim)) != d)
                return false;
            if (tau.dimension() == d)
                pieces.push_back(tau.as_polyhedron());
        }
        Region cover(coarse.dim, std::move(pieces));
        if (!Region(sigma.as_polyhedron()).minus(cover).is_empty())
            return false;
    }
    return true;
}

}  // namespace nccc
