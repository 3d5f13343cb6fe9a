#pragma once

#include "nccc/fan.hpp"

#include <optional>

namespace nccc {

struct SkeletonMembership {
    bool member = false;
    std::optional<std::vector<std::size_t>> witness;  // ray indices of the minimal cone
};

/// x in sigma-perp + M holds iff <x, v> is an integer for every ray v of sigma (smooth cones).
bool in_perp_plus_lattice(const Fan& f, const std::vector<std::size_t>& cone, const QVec& x);

/// Smallest cone of f containing v (all ray indices whose span contains it in relative interior).
std::optional<std::vector<std::size_t>> carrier_cone(const Fan& f, const QVec& v);

/// (x, xi) in the union over sigma of (sigma-perp + M) x (-sigma).
SkeletonMembership skeleton_member(const Fan& f, const QVec& x, const QVec& xi);

/// Throws std::invalid_argument when `fine` does not refine `coarse`.
bool skeleton_refines(const Fan& coarse, const Fan& fine);

}  // namespace nccc
