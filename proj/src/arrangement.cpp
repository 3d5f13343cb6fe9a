#include "nccc/arrangement.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nccc {

bool Cell::contains(const QVec& x) const
{
    for (const auto& e : eqs)
        if (dot(e.normal, x) != e.offset)
            return false;
    return std::all_of(strict.begin(), strict.end(), [&](const Constraint& c) { return c.satisfied_by(x); });
}

bool Cell::closure_contains(const QVec& x) const
{
    for (const auto& e : eqs)
        if (dot(e.normal, x) != e.offset)
            return false;
    return std::all_of(strict.begin(), strict.end(), [&](const Constraint& c) { return dot(c.normal, x) >= c.offset; });
}

NncPolyhedron Cell::polyhedron() const
{
    std::vector<Constraint> cs;
    for (const auto& e : eqs) {
        cs.push_back({e.normal, e.offset, false});
        Constraint neg{e.normal, e.offset, false};
        neg = neg.negated();
        neg.strict = false;
        cs.push_back(neg);
    }
    for (const auto& c : strict)
        cs.push_back(c);
    return NncPolyhedron(point.size(), std::move(cs));
}

std::vector<QVec> Cell::normal_space() const
{
    std::vector<QVec> out;
    for (const auto& e : eqs)
        out.push_back(e.normal);
    return out;
}

std::vector<QVec> Cell::direction_basis(std::size_t ambient) const
{
    if (eqs.empty()) {
        std::vector<QVec> out;
        for (std::size_t i = 0; i < ambient; ++i) {
            QVec e(ambient);
            e[i] = 1;
            out.push_back(e);
        }
        return out;
    }
    return nullspace(QMatrix::from_rows(normal_space(), ambient));
}

namespace {

bool in_span(const std::vector<QVec>& rows, const QVec& v, std::size_t n)
{
    if (rows.empty())
        return std::all_of(v.begin(), v.end(), [](const Q& q) { return sgn(q) == 0; });
    auto with = rows;
    with.push_back(v);
    return rank(QMatrix::from_rows(with, n)) == rank(QMatrix::from_rows(rows, n));
}

void split_one(std::vector<Cell>& out, const Cell& c, const Hyperplane& h)
{
    const std::size_t n = c.point.size();
    if (in_span(c.normal_space(), h.normal, n)) {
        out.push_back(c);
        return;
    }
    std::vector<LinearEquation> eqs0 = c.eqs;
    eqs0.push_back({h.normal, h.offset});
    auto p0 = dot(h.normal, c.point) == h.offset ? std::optional<QVec>(c.point) : fm_find_point(n, c.strict, eqs0);
    if (!p0) {
        out.push_back(c);
        return;
    }
    Cell zero = c;
    zero.eqs = eqs0;
    zero.point = *p0;
    zero.dim = c.dim - 1;
    for (int s : {1, -1}) {
        Cell side = c;
        Constraint k{h.normal, h.offset, true};
        if (s < 0) {
            k = k.negated();
            k.strict = true;
        }
        side.strict.push_back(k);
        auto p = k.satisfied_by(c.point) ? std::optional<QVec>(c.point) : fm_find_point(n, side.strict, side.eqs);
        if (!p)
            throw std::logic_error("arrangement: hyperplane crossing a cell left one side empty");
        side.point = *p;
        out.push_back(std::move(side));
    }
    out.push_back(std::move(zero));
}

}  // namespace

std::vector<Cell> split_cells(std::vector<Cell> cells, const std::vector<Hyperplane>& hyperplanes)
{
    for (const auto& h : hyperplanes) {
        std::vector<Cell> next;
        next.reserve(cells.size() * 2);
        for (const auto& c : cells)
            split_one(next, c, h);
        cells = std::move(next);
    }
    return cells;
}

std::vector<Cell> box_arrangement(const QVec& lo, const QVec& hi, const std::vector<Hyperplane>& hyperplanes)
{
    const std::size_t n = lo.size();
    if (hi.size() != n)
        throw std::invalid_argument("box_arrangement: dimension mismatch");
    std::vector<std::set<Q>> breaks(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lo[i] < hi[i]))
            throw std::invalid_argument("box_arrangement: empty box");
        breaks[i].insert(lo[i]);
        breaks[i].insert(hi[i]);
    }
    std::vector<Hyperplane> general;
    for (const auto& h : hyperplanes) {
        if (h.normal.size() != n)
            throw std::invalid_argument("box_arrangement: hyperplane dimension mismatch");
        std::size_t nz = 0, axis = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (sgn(h.normal[i]) != 0) {
                ++nz;
                axis = i;
            }
        if (nz == 0)
            continue;
        if (nz == 1) {
            Q v = h.offset / h.normal[axis];
            if (v > lo[axis] && v < hi[axis])
                breaks[axis].insert(v);
            continue;
        }
        // keep only hyperplanes meeting the open box
        Q mn = 0, mx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Q a = h.normal[i] * lo[i], b = h.normal[i] * hi[i];
            mn += std::min(a, b);
            mx += std::max(a, b);
        }
        if (h.offset > mn && h.offset < mx)
            general.push_back(h);
    }
    // 1-d cells per axis: (is_point, value or interval)
    struct Piece {
        bool point;
        Q a, b;
    };
    std::vector<std::vector<Piece>> axis_pieces(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Q> v(breaks[i].begin(), breaks[i].end());
        for (std::size_t j = 0; j < v.size(); ++j) {
            axis_pieces[i].push_back({true, v[j], v[j]});
            if (j + 1 < v.size())
                axis_pieces[i].push_back({false, v[j], v[j + 1]});
        }
    }
    std::vector<Cell> cells;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        Cell c;
        c.point.assign(n, Q(0));
        for (std::size_t i = 0; i < n; ++i) {
            const Piece& p = axis_pieces[i][idx[i]];
            QVec e(n);
            e[i] = 1;
            if (p.point) {
                c.eqs.push_back({e, p.a});
                c.point[i] = p.a;
            } else {
                c.strict.push_back({e, p.a, true});
                QVec ne(n);
                ne[i] = -1;
                c.strict.push_back({ne, -p.b, true});
                c.point[i] = (p.a + p.b) / 2;
                ++c.dim;
            }
        }
        cells.push_back(std::move(c));
        std::size_t i = 0;
        while (i < n && idx[i] + 1 == axis_pieces[i].size()) {
            idx[i] = 0;
            ++i;
        }
        if (i == n)
            break;
        ++idx[i];
    }
    return split_cells(std::move(cells), general);
}

std::vector<Cell> central_faces(std::size_t n, const std::vector<QVec>& subspace_eqs, const std::vector<QVec>& normals)
{
    Cell start;
    start.point.assign(n, Q(0));
    for (const auto& e : subspace_eqs)
        if (std::any_of(e.begin(), e.end(), [](const Q& q) { return sgn(q) != 0; }))
            start.eqs.push_back({e, Q(0)});
    for (std::size_t i = 0; i < n; ++i) {
        QVec e(n);
        e[i] = 1;
        start.strict.push_back({e, Q(-1), true});
        e[i] = -1;
        start.strict.push_back({e, Q(-1), true});
    }
    start.dim = n - (start.eqs.empty() ? 0 : rank(QMatrix::from_rows(start.normal_space(), n)));
    std::vector<Hyperplane> hs;
    for (const auto& v : normals)
        if (std::any_of(v.begin(), v.end(), [](const Q& q) { return sgn(q) != 0; }))
            hs.push_back({v, Q(0)});
    return split_cells({start}, hs);
}

}  // namespace nccc
