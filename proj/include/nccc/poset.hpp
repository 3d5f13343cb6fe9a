#pragma once

#include "nccc/linalg.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace nccc {

/// Finite poset given by its strict order relation (transitively closed).
class Poset {
public:
    Poset() = default;
    Poset(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& strict_relations);

    std::size_t size() const { return n_; }
    bool less(std::size_t a, std::size_t b) const { return bits_[a * n_ + b]; }
    bool leq(std::size_t a, std::size_t b) const { return a == b || less(a, b); }
    /// Strictly greater / smaller elements.
    const std::vector<std::size_t>& above(std::size_t a) const { return above_[a]; }
    const std::vector<std::size_t>& below(std::size_t a) const { return below_[a]; }
    /// Elements covered by a.
    const std::vector<std::size_t>& covers_below(std::size_t a) const { return covers_below_[a]; }
    std::size_t relation_count() const { return relations_.size(); }
    const std::vector<std::pair<std::size_t, std::size_t>>& relations() const { return relations_; }
    /// Index of the strict relation a < b in relations().
    std::size_t relation_index(std::size_t a, std::size_t b) const;
    /// Number of elements in a longest chain.
    std::size_t longest_chain() const;
    /// A linear extension (small elements first).
    const std::vector<std::size_t>& linear_order() const { return order_; }

    bool is_up_closed(const std::vector<bool>& s) const;
    bool is_down_closed(const std::vector<bool>& s) const;
    /// x <= y <= z with x, z in s forces y in s.
    bool is_convex(const std::vector<bool>& s) const;

private:
    std::size_t n_ = 0;
    std::vector<bool> bits_;
    std::vector<std::vector<std::size_t>> above_, below_, covers_below_;
    std::vector<std::pair<std::size_t, std::size_t>> relations_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rel_index_;  // per a: (b, index)
    std::vector<std::size_t> order_;
};

using PosetPtr = std::shared_ptr<const Poset>;

/// Representation of a poset over Q: a space per element and a map for every a < b.
struct Representation {
    PosetPtr poset;
    std::vector<std::size_t> dims;
    std::vector<QMatrix> maps;  // indexed by relation, dims[b] x dims[a]

    Representation() = default;
    explicit Representation(PosetPtr p);

    /// Map for a <= b (identity when a == b).
    QMatrix map(std::size_t a, std::size_t b) const;
    void set_map(std::size_t a, std::size_t b, QMatrix m);
    bool is_functorial() const;
    std::size_t total_dim() const;
    bool is_zero() const;
};

/// Q on the elements of s with identity maps; s must be convex.
Representation indicator(PosetPtr p, const std::vector<bool>& s);
Representation constant(PosetPtr p);

/// Ext^i(F, G) for i = 0 .. returned size - 1, computed from a minimal projective resolution of F.
GradedDims ext(const Representation& F, const Representation& G);

/// Minimal projective resolution P_k -> ... -> P_0 -> F by sums of representables
/// P_x (Q on the elements >= x).
struct ProjectiveResolution {
    struct Generator {
        std::size_t at;
    };
    std::vector<std::vector<Generator>> generators;  // per homological degree
    /// coeff[i][h] lists (g, a) : generator h of degree i+1 maps to a * (generator g of degree i).
    std::vector<std::vector<std::vector<std::pair<std::size_t, Q>>>> coeff;
    /// augmentation: degree-0 generator g maps to vector `images[g]` in F(at).
    std::vector<QVec> images;
};

ProjectiveResolution minimal_resolution(const Representation& F);

/// Hom complex of a projective resolution into G.
ChainComplexQ hom_complex(const ProjectiveResolution& R, const Representation& G);

}  // namespace nccc
