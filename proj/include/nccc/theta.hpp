#pragma once

#include "nccc/fan.hpp"

#include <map>
#include <utility>

namespace nccc {

/// Inclusive integer box in M.
using LatticeBox = std::vector<std::pair<long, long>>;

/// Lattice points of tau-dual inside the box when sigma contains tau, otherwise empty.
/// Cones are given as ray index sets of the fan.
std::vector<IntVec> hom_basis(const Fan& f, const std::vector<std::size_t>& sigma,
                              const std::vector<std::size_t>& tau, const LatticeBox& box);

/// Formal integer combination of characters chi^m, m in tau-dual, as a morphism sigma -> tau.
struct ThetaHom {
    std::vector<std::size_t> source;
    std::vector<std::size_t> target;
    std::map<IntVec, Int> terms;

    bool operator==(const ThetaHom&) const = default;
};

/// Throws std::invalid_argument unless source contains target and every support point lies in
/// target-dual.
void check_theta_hom(const Fan& f, const ThetaHom& h);

/// g o f, with characters multiplying: chi^m chi^m' = chi^(m+m').
ThetaHom compose(const Fan& f, const ThetaHom& g, const ThetaHom& h);

}  // namespace nccc
