#pragma once

#include "nccc/linalg.hpp"
#include "nccc/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nccc {

enum class Side { M, N };

inline Side dual_side(Side s) { return s == Side::M ? Side::N : Side::M; }

struct LatticeVector {
    IntVec coords;
    Side side = Side::N;

    std::size_t dim() const { return coords.size(); }
    bool operator==(const LatticeVector&) const = default;
};

/// <m, n>; throws std::invalid_argument if both live on the same side.
Int pairing(const LatticeVector& a, const LatticeVector& b);
LatticeVector primitive(const LatticeVector& v);

/// <normal, x> >= offset, or > offset when strict.
struct Constraint {
    QVec normal;
    Q offset;
    bool strict = false;

    bool satisfied_by(const QVec& x) const;
    /// Positive rescaling to a primitive integer normal. Zero normals are left alone.
    Constraint normalized() const;
    /// The complement half-space.
    Constraint negated() const;
    bool operator==(const Constraint&) const = default;
};

bool constraint_less(const Constraint& a, const Constraint& b);

/// <normal, x> = offset
struct LinearEquation {
    QVec normal;
    Q offset;
};

/// Some point satisfying all inequalities and equations, found by
/// Fourier-Motzkin elimination and back-substitution, or nullopt if none.
std::optional<QVec> fm_find_point(std::size_t dim, const std::vector<Constraint>& ineqs,
                                  const std::vector<LinearEquation>& eqs = {});

/// Bounds of a linear functional over a system; a missing side is unbounded.
struct FunctionalRange {
    bool feasible = false;
    std::optional<Q> lower, upper;
    bool lower_strict = false, upper_strict = false;

    /// True iff some value strictly between the bounds or at an attained bound is an integer.
    bool contains_integer() const;
    /// True iff the open interval (lower, upper) contains an integer.
    bool interior_contains_integer() const;
};

FunctionalRange fm_functional_range(std::size_t dim, const std::vector<Constraint>& ineqs,
                                    const std::vector<LinearEquation>& eqs, const QVec& functional);

class NncPolyhedron {
public:
    NncPolyhedron() = default;
    explicit NncPolyhedron(std::size_t dim) : dim_(dim) {}
    NncPolyhedron(std::size_t dim, std::vector<Constraint> constraints);

    static NncPolyhedron full(std::size_t dim) { return NncPolyhedron(dim); }
    static NncPolyhedron empty(std::size_t dim);
    static NncPolyhedron point(const QVec& p);

    std::size_t dim() const { return dim_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    bool contains(const QVec& x) const;
    bool is_empty() const;
    std::optional<QVec> find_point() const;
    /// True iff the polyhedron is exactly one point.
    bool is_singleton() const;

    /// Drops redundant constraints, normalizes and sorts the rest.
    NncPolyhedron canonical() const;
    /// All constraints closed.
    NncPolyhedron closure() const;

    NncPolyhedron intersect(const NncPolyhedron& other) const;
    NncPolyhedron translate(const QVec& v) const;
    /// k * P pointwise, k > 0.
    NncPolyhedron scale(const Q& k) const;
    /// Directions v with P + v in P, as a closed polyhedron (P nonempty).
    NncPolyhedron recession_cone() const;
    FunctionalRange range_of(const QVec& functional) const;

    bool operator==(const NncPolyhedron& other) const
    {
        return dim_ == other.dim_ && constraints_ == other.constraints_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Constraint> constraints_;
};

/// Finite union of NNC polyhedra with finitely many points removed.
class Region {
public:
    Region() = default;
    explicit Region(std::size_t dim) : dim_(dim) {}
    Region(const NncPolyhedron& p) : dim_(p.dim()), pieces_{p} {}
    Region(std::size_t dim, std::vector<NncPolyhedron> pieces, std::vector<QVec> excluded = {});

    std::size_t dim() const { return dim_; }
    const std::vector<NncPolyhedron>& pieces() const { return pieces_; }
    const std::vector<QVec>& excluded() const { return excluded_; }

    bool contains(const QVec& x) const;
    bool is_empty() const;

    Region unite(const Region& other) const;
    Region intersect(const Region& other) const;
    Region minus(const Region& other) const;
    Region minus_points(const std::vector<QVec>& pts) const;
    Region translate(const QVec& v) const;
    Region scale(const Q& k) const;

    /// Every constraint hyperplane appearing in the description (closed form).
    std::vector<Constraint> boundary_hyperplanes() const;

private:
    std::size_t dim_ = 0;
    std::vector<NncPolyhedron> pieces_;
    std::vector<QVec> excluded_;
};

bool symmetric_difference_empty(const Region& a, const Region& b);

/// Polyhedral cone generated by primitive integer vectors.
class Cone {
public:
    Cone() = default;
    /// Canonicalizes: extremal generators, lineality as a reduced +-basis, sorted.
    Cone(std::size_t dim, Side side, const std::vector<IntVec>& generators);

    static Cone zero(std::size_t dim, Side side) { return Cone(dim, side, {}); }

    std::size_t ambient_dim() const { return dim_; }
    Side side() const { return side_; }
    const std::vector<IntVec>& generators() const { return generators_; }
    /// Inward normals: the cone is {x : <f, x> >= 0 for all f}.
    const std::vector<IntVec>& facet_normals() const { return facets_; }

    bool contains(const QVec& x) const;
    bool contains_relint(const QVec& x) const;
    std::size_t dimension() const;
    bool is_proper() const;
    NncPolyhedron as_polyhedron() const;
    Cone negated() const;
    /// Minkowski sum with a cone on the same side.
    Cone operator+(const Cone& other) const;
    /// Faces, each as a cone, including {0} (if proper) and the cone itself.
    std::vector<Cone> faces() const;

    bool operator==(const Cone& other) const = default;

private:
    std::size_t dim_ = 0;
    Side side_ = Side::N;
    std::vector<IntVec> generators_;
    std::vector<IntVec> facets_;
};

/// Generators of {x : <r, x> >= 0 for r in rows}: extreme rays (taken orthogonal
/// to the lineality space) followed by +- a reduced basis of the lineality space.
std::vector<IntVec> cone_generators_from_inequalities(std::size_t dim, const std::vector<QVec>& rows);

Cone dual_cone(const Cone& c);

/// Conormal cone of z at x in closure(z): generated by the normals of the
/// constraints active at x.
Cone conormal_cone(const NncPolyhedron& z, const QVec& x);
/// Conormal cone of the complement of a full-dimensional convex z at a boundary point.
Cone conormal_cone_of_complement(const NncPolyhedron& z, const QVec& x);

/// One piece of a stratification of the span of a full-dimensional cone.
struct RTauStratum {
    Cone tau;
    Region region;
};

/// For every nonzero face tau of gamma_dual: tau-perp minus the perps of its proper cofaces.
std::vector<RTauStratum> r_tau_strata(const Cone& gamma_dual);

/// Linear subspace {x : <b, x> = 0 for b in basis} as a closed polyhedron.
NncPolyhedron orthogonal_subspace(std::size_t dim, const std::vector<QVec>& basis);

std::string to_string(const Constraint& c);

}  // namespace nccc
