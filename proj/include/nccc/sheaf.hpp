#pragma once

#include "nccc/fan.hpp"
#include "nccc/torus_complex.hpp"

#include <optional>
#include <string>

namespace nccc {

/// Constructible sheaf on the torus: a representation of the face poset, with
/// generization maps F(c) -> F(c') for c <= c'.
struct CellularSheaf {
    ComplexPtr complex;
    Representation rep;

    CellularSheaf() = default;
    explicit CellularSheaf(ComplexPtr cx);

    std::size_t stalk_dim(std::size_t c) const { return rep.dims[c]; }
    QMatrix generization(std::size_t c, std::size_t c2) const { return rep.map(c, c2); }
    bool is_valid() const { return rep.is_functorial(); }
    bool is_zero() const { return rep.is_zero(); }
};

CellularSheaf zero_sheaf(ComplexPtr cx);
CellularSheaf constant_sheaf(ComplexPtr cx);
/// Q on the cells in `cells` with identity generizations; the set must be locally closed.
CellularSheaf indicator_sheaf(ComplexPtr cx, const std::vector<bool>& cells);
CellularSheaf skyscraper(ComplexPtr cx, std::size_t vertex_cell);

/// Thrown when a region is not a union of cells of the complex.
struct NotAdapted : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Periodic families needed for the boundary of a region to be a union of cells.
std::vector<PeriodicFamily> region_families(const Region& r);

/// Lifts m in M with p_c + m in r, per cell, sorted. Throws NotAdapted or for unbounded regions.
std::vector<std::vector<IntVec>> region_lifts(const TorusCellComplex& cx, const Region& r);

/// p_* of the constant sheaf on a bounded locally closed region of M_R.
CellularSheaf pushforward_indicator(ComplexPtr cx, const Region& r);

/// Cells of the torus meeting p(r); throws NotAdapted if p(r) is not a union of cells.
std::vector<bool> cells_of_image(const TorusCellComplex& cx, const Region& r);

CellularSheaf tensor(const CellularSheaf& f, const CellularSheaf& g);
/// Extension by zero of the restriction to an open (up-closed) cell set.
CellularSheaf shriek_restrict(const CellularSheaf& f, const std::vector<bool>& open_cells);

ChainComplexQ cochain_complex(const CellularSheaf& f);
/// H^i(T, F), length dim + 1.
GradedDims cohomology(const CellularSheaf& f);
/// H_c^i(U, F) for U open.
GradedDims compact_cohomology(const CellularSheaf& f, const std::vector<bool>& open_cells);
/// Ext^i(F, G), padded to length dim + 1 when shorter.
GradedDims ext_groups(const CellularSheaf& f, const CellularSheaf& g);

/// The open star of a cell cut by the hyperplane through its point with conormal xi.
struct LocalModel {
    struct Piece {
        std::size_t cell;
        int side;  // sign of xi on the piece
    };
    std::vector<Piece> pieces;
    PosetPtr poset;
};

LocalModel local_model(const TorusCellComplex& cx, std::size_t c, const QVec& xi);

/// Generators of the closed tangent cones at the point of c of the cells in its star.
std::vector<IntVec> tangent_generators(const TorusCellComplex& cx, std::size_t c);

/// Sections supported in {<y - x, xi> >= 0} at a point x of cell c. Nonzero iff (x, xi) in SS(F).
GradedDims morse_group(const CellularSheaf& f, std::size_t c, const QVec& xi);

struct SSViolation {
    std::size_t cell;
    QVec xi;
    GradedDims morse;
};

struct SSReport {
    bool ok = true;
    bool antipodal = false;
    std::size_t tested = 0;
    std::vector<SSViolation> violations;
};

/// Raised when a skeleton stratum cuts through a cell that carries microsupport.
struct ComplexTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Test covectors at c: one per nonzero face of the conormal arrangement.
std::vector<QVec> test_covectors(const TorusCellComplex& cx, std::size_t c, const Fan& fan);

/// Checks SS(F) against the union of (sigma-perp + M) x (-sigma); with `antipodal` against
/// its negative (sigma-perp + M) x sigma.
SSReport ss_contained_in_skeleton(const CellularSheaf& f, const Fan& fan, bool antipodal = false);
/// Serial reference of the same scan.
SSReport ss_contained_in_skeleton_serial(const CellularSheaf& f, const Fan& fan, bool antipodal = false);

}  // namespace nccc
