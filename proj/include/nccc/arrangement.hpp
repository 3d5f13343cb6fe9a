#pragma once

#include "nccc/polyhedron.hpp"

#include <vector>

namespace nccc {

/// Relatively open convex cell: equations cut out its affine hull, strict
/// inequalities its interior there. `point` lies in the cell.
struct Cell {
    std::size_t dim = 0;
    std::vector<LinearEquation> eqs;
    std::vector<Constraint> strict;
    QVec point;

    bool contains(const QVec& x) const;
    /// Membership in the closure.
    bool closure_contains(const QVec& x) const;
    /// Equations and closed inequalities as one polyhedron.
    NncPolyhedron polyhedron() const;
    /// Constraints of the affine hull, as a list of normals.
    std::vector<QVec> normal_space() const;
    /// A basis of the direction space, fixed by a reduced echelon form.
    std::vector<QVec> direction_basis(std::size_t ambient) const;
};

/// Hyperplane {x : <normal, x> = offset}.
struct Hyperplane {
    QVec normal;
    Q offset;
};

/// Cells of the arrangement of `hyperplanes` inside the relatively open cell `start`.
std::vector<Cell> split_cells(std::vector<Cell> cells, const std::vector<Hyperplane>& hyperplanes);

/// Cells of the arrangement inside the closed box [lo, hi]. Coordinate hyperplanes given in
/// `hyperplanes` are used as grid breakpoints, the box faces are always breakpoints.
std::vector<Cell> box_arrangement(const QVec& lo, const QVec& hi, const std::vector<Hyperplane>& hyperplanes);

/// Cells of a central arrangement inside the open box (-1, 1)^n intersected with a subspace
/// given by equations; one cell per face of the arrangement.
std::vector<Cell> central_faces(std::size_t n, const std::vector<QVec>& subspace_eqs, const std::vector<QVec>& normals);

}  // namespace nccc
