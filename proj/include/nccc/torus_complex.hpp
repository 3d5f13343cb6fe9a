#pragma once

#include "nccc/arrangement.hpp"
#include "nccc/poset.hpp"

#include <memory>
#include <vector>

namespace nccc {

/// The hyperplanes {x : <normal, x> = offset + t}, t in Z, of M_R; invariant under M.
struct PeriodicFamily {
    IntVec normal;  // primitive, first nonzero entry positive
    Q offset;       // reduced to [0, 1)

    bool operator==(const PeriodicFamily&) const = default;
    bool operator<(const PeriodicFamily& o) const
    {
        return normal != o.normal ? normal < o.normal : offset < o.offset;
    }
};

/// Normalizes a hyperplane <a, x> = b with rational a into a periodic family.
PeriodicFamily periodic_family(const QVec& a, const Q& b);

/// c <= c' in the face poset: the lift `lo + shift` lies in the closure of the representative of `hi`.
struct FaceRelation {
    std::size_t lo = 0;
    std::size_t hi = 0;
    IntVec shift;
};

/// Regular cell decomposition of T^n = M_R / M cut out by periodic hyperplane families.
/// The half-integer coordinate grid is always included; it keeps every closed cell inside a
/// cube of side 1/2, so closures embed in the torus and face shifts are unique.
class TorusCellComplex {
public:
    static std::shared_ptr<const TorusCellComplex> build(std::size_t n, std::vector<PeriodicFamily> families);

    std::size_t dim() const { return n_; }
    std::size_t size() const { return cells_.size(); }
    const std::vector<PeriodicFamily>& families() const { return families_; }
    /// Representatives in [0,1)^n.
    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(std::size_t i) const { return cells_[i]; }
    /// Strict face relations, all pairs.
    const std::vector<FaceRelation>& relations() const { return relations_; }
    const std::shared_ptr<const Poset>& poset() const { return poset_; }
    const FaceRelation& relation(std::size_t lo, std::size_t hi) const;
    /// Codimension-one faces of each cell with incidence signs.
    const std::vector<std::vector<std::pair<std::size_t, int>>>& boundary() const { return boundary_; }

    bool has_family(const PeriodicFamily& f) const;
    /// Index of the cell containing x mod M.
    std::size_t locate(const QVec& x) const;
    std::vector<std::size_t> cells_of_dim(std::size_t d) const;
    long euler_characteristic() const;

private:
    std::size_t n_ = 0;
    std::vector<PeriodicFamily> families_;
    std::vector<Cell> cells_;
    std::vector<FaceRelation> relations_;
    std::shared_ptr<const Poset> poset_;
    std::vector<std::vector<std::pair<std::size_t, int>>> boundary_;
};

using ComplexPtr = std::shared_ptr<const TorusCellComplex>;

}  // namespace nccc
