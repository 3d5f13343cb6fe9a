#include "nccc/torus_complex.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nccc {

PeriodicFamily periodic_family(const QVec& a, const Q& b)
{
    if (std::all_of(a.begin(), a.end(), [](const Q& q) { return sgn(q) == 0; }))
        throw std::invalid_argument("periodic_family: zero normal");
    IntVec p = primitive_integer(a);
    // a = lambda * p with lambda > 0
    std::size_t i = 0;
    while (sgn(a[i]) == 0)
        ++i;
    Q lambda = a[i] / Q(p[i]);
    Q off = b / lambda;
    if (sgn(p[i]) < 0) {
        for (auto& v : p)
            v = -v;
        off = -off;
    }
    off -= Q(floor_q(off));
    return {p, off};
}

namespace {

// Position of a coordinate on the half-integer grid: 2 * floor(2v), plus 1 off the grid.
long grid_code(const Q& v)
{
    Q w = 2 * v;
    Int f = floor_q(w);
    return 2 * f.get_si() + (is_integer(w) ? 0 : 1);
}

bool code_in_closure(long c, long hi)
{
    if (hi % 2 == 0)
        return c == hi;
    return c >= hi - 1 && c <= hi + 1;
}

int incidence_sign(const Cell& face, const Cell& cell, const QVec& lifted, std::size_t n)
{
    auto bc = cell.direction_basis(n);
    auto bf = face.direction_basis(n);
    QMatrix basis = QMatrix::from_rows(bc, n).transpose();  // n x dim(cell)
    QVec w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = lifted[i] - cell.point[i];
    std::vector<QVec> cols{w};
    for (const auto& v : bf)
        cols.push_back(v);
    QMatrix m(bc.size(), bc.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        auto coords = solve(basis, cols[j]);
        if (!coords)
            throw std::logic_error("torus complex: face direction outside the cell");
        for (std::size_t r = 0; r < bc.size(); ++r)
            m(r, j) = (*coords)[r];
    }
    int s = sgn(determinant(m));
    if (s == 0)
        throw std::logic_error("torus complex: degenerate incidence");
    return s;
}

}  // namespace

std::shared_ptr<const TorusCellComplex> TorusCellComplex::build(std::size_t n, std::vector<PeriodicFamily> families)
{
    if (n == 0)
        throw std::invalid_argument("TorusCellComplex: dimension must be positive");
    for (auto& f : families) {
        if (f.normal.size() != n)
            throw std::invalid_argument("TorusCellComplex: family dimension mismatch");
        f = periodic_family(to_qvec(f.normal), f.offset);
    }
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        families.push_back({e, Q(0)});
        families.push_back({e, make_q(1, 2)});
    }
    std::sort(families.begin(), families.end());
    families.erase(std::unique(families.begin(), families.end()), families.end());

    auto cx = std::make_shared<TorusCellComplex>();
    cx->n_ = n;
    cx->families_ = families;

    std::vector<Hyperplane> hs;
    for (const auto& f : families) {
        QVec a = to_qvec(f.normal);
        Q mn = 0, mx = 0;
        for (const auto& q : a)
            (sgn(q) < 0 ? mn : mx) += q;
        for (Int t = ceil_q(mn - f.offset); Q(t) <= mx - f.offset; ++t)
            hs.push_back({a, f.offset + Q(t)});
    }
    QVec lo(n, Q(0)), hi(n, Q(1));
    for (auto& c : box_arrangement(lo, hi, hs))
        if (std::all_of(c.point.begin(), c.point.end(), [](const Q& v) { return v < 1; }))
            cx->cells_.push_back(std::move(c));
    std::stable_sort(cx->cells_.begin(), cx->cells_.end(),
                     [](const Cell& a, const Cell& b) { return a.dim < b.dim; });

    const auto& cells = cx->cells_;
    const std::size_t N = cells.size();
    std::vector<std::vector<long>> codes(N, std::vector<long>(n));
    for (std::size_t c = 0; c < N; ++c)
        for (std::size_t i = 0; i < n; ++i)
            codes[c][i] = grid_code(cells[c].point[i]);

    std::vector<FaceRelation> rels;
    for (std::size_t lo_c = 0; lo_c < N; ++lo_c) {
        std::vector<std::size_t> zero_axes;
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(cells[lo_c].point[i]) == 0)
                zero_axes.push_back(i);
        for (std::size_t hi_c = 0; hi_c < N; ++hi_c) {
            if (cells[hi_c].dim <= cells[lo_c].dim)
                continue;
            std::size_t found = 0;
            IntVec shift;
            for (std::size_t mask = 0; mask < (std::size_t{1} << zero_axes.size()); ++mask) {
                IntVec s(n, Int(0));
                for (std::size_t k = 0; k < zero_axes.size(); ++k)
                    if (mask >> k & 1)
                        s[zero_axes[k]] = 1;
                bool ok = true;
                for (std::size_t i = 0; i < n && ok; ++i)
                    ok = code_in_closure(codes[lo_c][i] + 4 * s[i].get_si(), codes[hi_c][i]);
                if (!ok)
                    continue;
                QVec x = cells[lo_c].point;
                for (std::size_t i = 0; i < n; ++i)
                    x[i] += Q(s[i]);
                if (cells[hi_c].closure_contains(x)) {
                    ++found;
                    shift = s;
                }
            }
            if (found > 1)
                throw std::logic_error("torus complex: face shift is not unique");
            if (found == 1)
                rels.push_back({lo_c, hi_c, shift});
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& r : rels)
        pairs.emplace_back(r.lo, r.hi);
    cx->poset_ = std::make_shared<Poset>(N, pairs);
    cx->relations_.resize(rels.size());
    for (auto& r : rels)
        cx->relations_[cx->poset_->relation_index(r.lo, r.hi)] = std::move(r);

    cx->boundary_.assign(N, {});
    for (const auto& r : cx->relations_) {
        if (cells[r.hi].dim != cells[r.lo].dim + 1)
            continue;
        QVec x = cells[r.lo].point;
        for (std::size_t i = 0; i < n; ++i)
            x[i] += Q(r.shift[i]);
        cx->boundary_[r.hi].emplace_back(r.lo, incidence_sign(cells[r.lo], cells[r.hi], x, n));
    }
    return cx;
}

const FaceRelation& TorusCellComplex::relation(std::size_t lo, std::size_t hi) const
{
    return relations_[poset_->relation_index(lo, hi)];
}

bool TorusCellComplex::has_family(const PeriodicFamily& f) const
{
    auto g = periodic_family(to_qvec(f.normal), f.offset);
    return std::binary_search(families_.begin(), families_.end(), g);
}

std::size_t TorusCellComplex::locate(const QVec& x) const
{
    if (x.size() != n_)
        throw std::invalid_argument("locate: dimension mismatch");
    QVec y = x;
    for (auto& v : y)
        v -= Q(floor_q(v));
    for (std::size_t c = 0; c < cells_.size(); ++c)
        if (cells_[c].contains(y))
            return c;
    throw std::logic_error("locate: point not covered");
}

std::vector<std::size_t> TorusCellComplex::cells_of_dim(std::size_t d) const
{
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cells_.size(); ++c)
        if (cells_[c].dim == d)
            out.push_back(c);
    return out;
}

long TorusCellComplex::euler_characteristic() const
{
    long chi = 0;
    for (const auto& c : cells_)
        chi += c.dim % 2 == 0 ? 1 : -1;
    return chi;
}

}  // namespace nccc
