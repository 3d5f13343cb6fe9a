#pragma once

#include "nccc/fan.hpp"
#include "nccc/sheaf.hpp"

#include <string>

namespace nccc {

/// Blow-up of a smooth fan at the maximal cone sigma_c = cone(e_1, ..., e_n).
/// Regions live in M_R written in the dual basis: m = sum a_i e_i^vee, so M = Z^n.
struct BlowupContext {
    std::string name;
    Fan fan;
    Fan blown_up;
    std::size_t cone = 0;             // index of sigma_c in fan.max_cones
    std::vector<IntVec> basis;        // e_1 .. e_n, rays of sigma_c
    IntVec e_E;                       // sum of the basis
    std::size_t exceptional_ray = 0;  // index of e_E in blown_up.rays

    std::size_t dim() const { return fan.dim; }
    /// A fan with rays rewritten in the basis e_i, matching the a-coordinates on M_R.
    Fan in_basis(const Fan& f) const;
};

BlowupContext make_context(const Fan& fan, std::size_t max_cone, std::string name = {});

/// Z = {sum a_i >= -1, a_i < 0}.
NncPolyhedron region_Z(const BlowupContext& ctx);
NncPolyhedron region_Zk(const BlowupContext& ctx, int k);
/// Z_k minus Z_{k-1} = {-k <= sum a_i < -(k-1), a_i < 0}; equal to Z for k = 1.
NncPolyhedron region_shell(const BlowupContext& ctx, int k);
/// [-1, 0)^n minus its lattice point.
Region region_F(const BlowupContext& ctx);
/// Z_k intersected with F; empty for k = 0.
Region hat_Zk(const BlowupContext& ctx, int k);
/// hat Z_k minus hat Z_{k-1}.
Region tilde_Zk(const BlowupContext& ctx, int k);
/// The open cube (-1, 0)^n minus hat Z_{k-1}.
Region tilde_Uk(const BlowupContext& ctx, int k);

/// Cells of U_k = p(tilde U_k); throws if p is not injective on it or U_k is not open.
std::vector<bool> image_Uk(const TorusCellComplex& cx, const BlowupContext& ctx, int k);

/// Pieces Z_k intersected with unit boxes [l, l + 1), l != (-1, ..., -1), that tile Z_k minus hat Z_k.
std::vector<Region> box_partition(const BlowupContext& ctx, int k);
/// Exact check: pairwise disjoint and their union is Z_k minus hat Z_k.
bool verify_box_partition(const BlowupContext& ctx, int k);

/// Families of a torus complex on which every region of the context is a union of cells,
/// together with the skeleton strata of the blown-up fan.
std::vector<PeriodicFamily> context_families(const BlowupContext& ctx);
ComplexPtr context_complex(const BlowupContext& ctx);

struct CechCone {
    std::vector<std::size_t> rays;  // ray indices in blown_up, containing the exceptional ray
    std::size_t chosen_dual = 0;    // j with e_sigma^vee = e_j^vee
    Region region;                  // Z_sigma
};

struct CechSystem {
    std::vector<CechCone> cones;  // sorted by dimension, then rays
    bool choice_independent = true;
    bool covers = true;  // Z_sigma over 2-dimensional sigma cover Z_{rho_E} minus Z_1
};

CechSystem build_cech_system(const BlowupContext& ctx);

struct CechCellResult {
    QVec point;
    bool in_Z1 = false;
    GradedDims stalk;
};

struct CechCheck {
    bool ok = true;
    std::size_t cells = 0;
    std::vector<CechCellResult> failures;
};

/// Per-cell stalk cohomology of the Cech complex on the arrangement of the Z_sigma boundaries
/// inside the window [lo, hi]^n.
CechCheck check_cech_cells(const BlowupContext& ctx, const CechSystem& cs, long lo, long hi);
CechCheck check_cech_cells_serial(const BlowupContext& ctx, const CechSystem& cs, long lo, long hi);

/// p_* C_{Z_k}.
CellularSheaf literal_object(ComplexPtr cx, const BlowupContext& ctx, int k);
/// p_* C_{Z_k minus Z_{k-1}}, the object whose Cech resolution matches O_E(kE) from
/// 0 -> O((k-1)E) -> O(kE) -> O_E(kE) -> 0. Agrees with literal_object for k = 1.
CellularSheaf shell_object(ComplexPtr cx, const BlowupContext& ctx, int k);

/// Named contexts: "P2", "P1xP1", "P3" blown up at the positive orthant.
BlowupContext standard_context(const std::string& name);

}  // namespace nccc
