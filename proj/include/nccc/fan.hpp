#pragma once

#include "nccc/polyhedron.hpp"

#include <string>
#include <vector>

namespace nccc {

/// Simplicial fan in N_R given by primitive rays and maximal cones (ray index sets).
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVec> rays;
    std::vector<std::vector<std::size_t>> max_cones;

    /// Every cone of the fan as a sorted ray index set, including the zero cone.
    std::vector<std::vector<std::size_t>> all_cones() const;
    Cone cone(const std::vector<std::size_t>& ray_indices) const;
    std::size_t ray_index(const IntVec& r) const;  // throws if absent

    bool operator==(const Fan&) const = default;
};

struct FanReport {
    bool smooth = true;
    bool complete = true;
    std::vector<std::string> violations;
};

/// Throws std::invalid_argument on malformed input (non-primitive or duplicate rays,
/// bad indices, empty cone list).
FanReport validate_fan(const Fan& f);

/// Rays sorted lexicographically, cones sorted, indices remapped.
Fan canonical_fan(const Fan& f);

/// Blow-up at a torus fixed point: adds the sum of the cone's rays and replaces the cone
/// by the cones over its facets.
Fan star_subdivide(const Fan& f, std::size_t max_cone);

/// Cone indices in cyclic (counterclockwise) order of rays; n = 2 only.
std::vector<std::size_t> cyclic_ray_order(const Fan& f);

/// For a smooth complete surface fan: c_i with v_{i-1} + v_{i+1} = c_i v_i, in cyclic order.
std::vector<Int> neighbor_coefficients(const Fan& f);

std::vector<IntVec> blow_down_candidates(const Fan& f);
/// Removes a ray with v_{i-1} + v_{i+1} = v_i and merges its two cones.
Fan blow_down(const Fan& f, const IntVec& ray);

enum class MinimalTag { P2, P1xP1, Hirzebruch };

struct MinimalModelClass {
    MinimalTag tag = MinimalTag::P2;
    int a = 0;  // Hirzebruch index

    bool operator==(const MinimalModelClass&) const = default;
};

std::string to_string(const MinimalModelClass& c);

MinimalModelClass classify_minimal(const Fan& f);

struct MmpResult {
    std::vector<IntVec> trace;  // blown-down rays, in order
    std::vector<Fan> fans;      // fans[0] = input, fans[i+1] after trace[i]
    MinimalModelClass result;
};

MmpResult mmp_reduce(const Fan& f);
/// Replays the trace backwards by star subdivision from the minimal model.
Fan mmp_replay(const MmpResult& r);

bool is_zonotopal_unimodular(const Fan& f);
bool is_cragged(const Fan& f);

/// Key of a smooth complete surface fan up to GL2(Z): the lexicographically least
/// rotation or reversal of its neighbor coefficient sequence.
std::vector<Int> surface_key(const Fan& f);

/// Smooth complete surface fan from a neighbor coefficient sequence, starting at e1, e2.
Fan surface_fan_from_coefficients(const std::vector<Int>& c);

/// True iff `fine` refines `coarse`: every ray of coarse is a ray of fine,
/// every cone of fine lies in a cone of coarse and every cone of coarse is covered.
bool is_refinement(const Fan& coarse, const Fan& fine);

Fan fan_projective_space(std::size_t n);
Fan fan_p1xp1();
Fan fan_hirzebruch(int a);

/// All smooth complete surface fans with at most max_rays rays up to GL2(Z), obtained by
/// iterated blow-ups of P2, P1xP1 and F_a for 2 <= a <= a_cap.
std::vector<Fan> enumerate_surface_fans(std::size_t max_rays, int a_cap = 4);

}  // namespace nccc
