#include "nccc/sheaf.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <stdexcept>

#include <omp.h>

namespace nccc {

CellularSheaf::CellularSheaf(ComplexPtr cx) : complex(cx), rep(cx->poset()) {}

CellularSheaf zero_sheaf(ComplexPtr cx)
{
    CellularSheaf f(cx);
    for (auto& m : f.rep.maps)
        m = QMatrix(0, 0);
    return f;
}

CellularSheaf indicator_sheaf(ComplexPtr cx, const std::vector<bool>& cells)
{
    CellularSheaf f(cx);
    f.rep = indicator(cx->poset(), cells);
    return f;
}

CellularSheaf constant_sheaf(ComplexPtr cx) { return indicator_sheaf(cx, std::vector<bool>(cx->size(), true)); }

CellularSheaf skyscraper(ComplexPtr cx, std::size_t vertex_cell)
{
    if (vertex_cell >= cx->size() || cx->cell(vertex_cell).dim != 0)
        throw std::invalid_argument("skyscraper: not a vertex cell");
    std::vector<bool> s(cx->size(), false);
    s[vertex_cell] = true;
    return indicator_sheaf(cx, s);
}

std::vector<PeriodicFamily> region_families(const Region& r)
{
    std::vector<PeriodicFamily> out;
    for (const auto& p : r.pieces())
        for (const auto& c : p.constraints())
            out.push_back(periodic_family(c.normal, c.offset));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::vector<IntVec>> region_lifts(const TorusCellComplex& cx, const Region& r)
{
    const std::size_t n = cx.dim();
    if (r.dim() != n)
        throw std::invalid_argument("region_lifts: dimension mismatch");
    for (const auto& f : region_families(r))
        if (!cx.has_family(f))
            throw NotAdapted("region boundary is not a union of cells");
    for (const auto& x : r.excluded())
        if (cx.cell(cx.locate(x)).dim != 0)
            throw NotAdapted("excluded point is not a vertex of the complex");
    std::vector<std::pair<QVec, QVec>> boxes;
    for (const auto& p : r.pieces()) {
        if (p.is_empty())
            continue;
        QVec lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            QVec e(n);
            e[i] = 1;
            auto range = p.range_of(e);
            if (!range.lower || !range.upper)
                throw std::invalid_argument("region_lifts: region is unbounded");
            lo[i] = *range.lower;
            hi[i] = *range.upper;
        }
        boxes.emplace_back(lo, hi);
    }
    std::vector<std::vector<IntVec>> lifts(cx.size());
    for (std::size_t c = 0; c < cx.size(); ++c) {
        const QVec& pc = cx.cell(c).point;
        std::set<IntVec> found;
        for (const auto& [lo, hi] : boxes) {
            IntVec a(n), b(n);
            bool empty = false;
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = ceil_q(lo[i] - pc[i]);
                b[i] = floor_q(hi[i] - pc[i]);
                if (a[i] > b[i])
                    empty = true;
            }
            if (empty)
                continue;
            IntVec m = a;
            while (true) {
                QVec y = pc;
                for (std::size_t i = 0; i < n; ++i)
                    y[i] += Q(m[i]);
                if (r.contains(y))
                    found.insert(m);
                std::size_t i = 0;
                while (i < n && m[i] == b[i]) {
                    m[i] = a[i];
                    ++i;
                }
                if (i == n)
                    break;
                ++m[i];
            }
        }
        lifts[c].assign(found.begin(), found.end());
    }
    return lifts;
}

CellularSheaf pushforward_indicator(ComplexPtr cx, const Region& r)
{
    auto lifts = region_lifts(*cx, r);
    CellularSheaf f(cx);
    for (std::size_t c = 0; c < cx->size(); ++c)
        f.rep.dims[c] = lifts[c].size();
    for (std::size_t i = 0; i < cx->relations().size(); ++i) {
        const auto& rel = cx->relations()[i];
        const auto& src = lifts[rel.lo];
        const auto& dst = lifts[rel.hi];
        QMatrix m(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            IntVec t = src[j];
            for (std::size_t k = 0; k < t.size(); ++k)
                t[k] -= rel.shift[k];
            auto it = std::lower_bound(dst.begin(), dst.end(), t);
            if (it != dst.end() && *it == t)
                m(static_cast<std::size_t>(it - dst.begin()), j) = 1;
        }
        f.rep.maps[i] = std::move(m);
    }
    return f;
}

std::vector<bool> cells_of_image(const TorusCellComplex& cx, const Region& r)
{
    auto lifts = region_lifts(cx, r);
    std::vector<bool> out(cx.size());
    for (std::size_t c = 0; c < cx.size(); ++c)
        out[c] = !lifts[c].empty();
    return out;
}

CellularSheaf tensor(const CellularSheaf& f, const CellularSheaf& g)
{
    if (f.complex != g.complex)
        throw std::invalid_argument("tensor: sheaves on different complexes");
    CellularSheaf t(f.complex);
    for (std::size_t c = 0; c < t.rep.dims.size(); ++c)
        t.rep.dims[c] = f.rep.dims[c] * g.rep.dims[c];
    for (std::size_t i = 0; i < t.rep.maps.size(); ++i)
        t.rep.maps[i] = f.rep.maps[i].kron(g.rep.maps[i]);
    return t;
}

CellularSheaf shriek_restrict(const CellularSheaf& f, const std::vector<bool>& open_cells)
{
    const Poset& p = *f.complex->poset();
    if (open_cells.size() != p.size() || !p.is_up_closed(open_cells))
        throw std::invalid_argument("shriek_restrict: cell set is not open");
    CellularSheaf g(f.complex);
    for (std::size_t c = 0; c < p.size(); ++c)
        g.rep.dims[c] = open_cells[c] ? f.rep.dims[c] : 0;
    for (std::size_t i = 0; i < p.relation_count(); ++i) {
        auto [a, b] = p.relations()[i];
        g.rep.maps[i] = open_cells[a] ? f.rep.maps[i] : QMatrix(g.rep.dims[b], 0);
    }
    return g;
}

ChainComplexQ cochain_complex(const CellularSheaf& f)
{
    const TorusCellComplex& cx = *f.complex;
    const std::size_t n = cx.dim();
    std::vector<std::size_t> dims(n + 1, 0), offset(cx.size());
    for (std::size_t c = 0; c < cx.size(); ++c) {
        offset[c] = dims[cx.cell(c).dim];
        dims[cx.cell(c).dim] += f.rep.dims[c];
    }
    std::vector<SparseMatrix> ds;
    for (std::size_t k = 0; k < n; ++k)
        ds.emplace_back(dims[k + 1], dims[k]);
    for (std::size_t c = 0; c < cx.size(); ++c)
        for (const auto& [face, s] : cx.boundary()[c]) {
            if (f.rep.dims[face] == 0 || f.rep.dims[c] == 0)
                continue;
            QMatrix m = f.rep.map(face, c);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t q = 0; q < m.cols(); ++q)
                    if (sgn(m(r, q)) != 0)
                        ds[cx.cell(face).dim].add(offset[c] + r, offset[face] + q, s * m(r, q));
        }
    return ChainComplexQ(dims, std::move(ds));
}

GradedDims cohomology(const CellularSheaf& f) { return cochain_complex(f).cohomology(); }

GradedDims compact_cohomology(const CellularSheaf& f, const std::vector<bool>& open_cells)
{
    return cohomology(shriek_restrict(f, open_cells));
}

GradedDims ext_groups(const CellularSheaf& f, const CellularSheaf& g)
{
    if (f.complex != g.complex)
        throw std::invalid_argument("ext_groups: sheaves on different complexes");
    return pad_dims(ext(f.rep, g.rep), f.complex->dim() + 1);
}

namespace {

struct Tangent {
    std::vector<LinearEquation> eqs;
    std::vector<Constraint> strict;
};

// Tangent cone at the point of c of the lift of c2 whose closure contains that point.
Tangent tangent_cone(const TorusCellComplex& cx, std::size_t c, std::size_t c2)
{
    const std::size_t n = cx.dim();
    const QVec& x = cx.cell(c).point;
    const Cell& cell = cx.cell(c2);
    QVec s(n);
    if (c != c2) {
        const auto& rel = cx.relation(c, c2);
        for (std::size_t i = 0; i < n; ++i)
            s[i] = Q(rel.shift[i]);
    }
    Tangent t;
    for (const auto& e : cell.eqs)
        t.eqs.push_back({e.normal, Q(0)});
    for (const auto& k : cell.strict)
        if (dot(k.normal, x) == k.offset - dot(k.normal, s))
            t.strict.push_back({k.normal, Q(0), true});
    return t;
}

std::vector<std::size_t> star(const TorusCellComplex& cx, std::size_t c)
{
    std::vector<std::size_t> out{c};
    for (auto b : cx.poset()->above(c))
        out.push_back(b);
    return out;
}

}  // namespace

namespace {

struct StarCone {
    std::size_t cell;
    std::vector<QVec> gens;  // generators of the closed tangent cone, lineality as +- pairs
};

std::vector<StarCone> star_cones(const TorusCellComplex& cx, std::size_t c)
{
    const std::size_t n = cx.dim();
    std::vector<StarCone> out;
    for (auto c2 : star(cx, c)) {
        Tangent t = tangent_cone(cx, c, c2);
        std::vector<QVec> rows;
        for (const auto& e : t.eqs) {
            rows.push_back(e.normal);
            QVec neg = e.normal;
            for (auto& v : neg)
                v = -v;
            rows.push_back(neg);
        }
        for (const auto& k : t.strict)
            rows.push_back(k.normal);
        StarCone sc{c2, {}};
        for (const auto& g : cone_generators_from_inequalities(n, rows))
            sc.gens.push_back(to_qvec(g));
        out.push_back(std::move(sc));
    }
    return out;
}

// The open tangent cone is the set of positive combinations of all generators, so the signs
// of xi on the generators decide which sides of xi-perp it meets.
LocalModel local_model_from(const TorusCellComplex& cx, const std::vector<StarCone>& cones, const QVec& xi)
{
    LocalModel lm;
    for (const auto& sc : cones) {
        bool pos = false, neg = false;
        for (const auto& g : sc.gens) {
            int s = sgn(dot(xi, g));
            pos = pos || s > 0;
            neg = neg || s < 0;
        }
        if (!pos && !neg)
            lm.pieces.push_back({sc.cell, 0});
        if (pos)
            lm.pieces.push_back({sc.cell, 1});
        if (pos && neg)
            lm.pieces.push_back({sc.cell, 0});
        if (neg)
            lm.pieces.push_back({sc.cell, -1});
    }
    const Poset& p = *cx.poset();
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i < lm.pieces.size(); ++i)
        for (std::size_t j = 0; j < lm.pieces.size(); ++j) {
            if (i == j)
                continue;
            const auto& a = lm.pieces[i];
            const auto& b = lm.pieces[j];
            bool cells = a.cell == b.cell || p.less(a.cell, b.cell);
            bool sides = a.side == b.side || a.side == 0;
            if (cells && sides)
                rel.emplace_back(i, j);
        }
    lm.poset = std::make_shared<Poset>(lm.pieces.size(), rel);
    return lm;
}

GradedDims morse_from(const CellularSheaf& f, const LocalModel& lm)
{
    Representation local(lm.poset);
    std::vector<bool> z(lm.pieces.size());
    for (std::size_t i = 0; i < lm.pieces.size(); ++i) {
        local.dims[i] = f.rep.dims[lm.pieces[i].cell];
        z[i] = lm.pieces[i].side >= 0;
    }
    for (std::size_t r = 0; r < lm.poset->relation_count(); ++r) {
        auto [a, b] = lm.poset->relations()[r];
        local.maps[r] = f.rep.map(lm.pieces[a].cell, lm.pieces[b].cell);
    }
    return pad_dims(ext(indicator(lm.poset, z), local), f.complex->dim() + 1);
}

void check_xi(const TorusCellComplex& cx, const QVec& xi)
{
    if (xi.size() != cx.dim())
        throw std::invalid_argument("local_model: dimension mismatch");
    if (std::all_of(xi.begin(), xi.end(), [](const Q& q) { return sgn(q) == 0; }))
        throw std::invalid_argument("morse_group: zero covector");
}

}  // namespace

LocalModel local_model(const TorusCellComplex& cx, std::size_t c, const QVec& xi)
{
    if (xi.size() != cx.dim())
        throw std::invalid_argument("local_model: dimension mismatch");
    return local_model_from(cx, star_cones(cx, c), xi);
}

std::vector<IntVec> tangent_generators(const TorusCellComplex& cx, std::size_t c)
{
    std::set<IntVec> out;
    for (const auto& sc : star_cones(cx, c))
        for (const auto& g : sc.gens)
            out.insert(primitive_integer(g));
    return {out.begin(), out.end()};
}

GradedDims morse_group(const CellularSheaf& f, std::size_t c, const QVec& xi)
{
    check_xi(*f.complex, xi);
    return morse_from(f, local_model(*f.complex, c, xi));
}

std::vector<QVec> test_covectors(const TorusCellComplex& cx, std::size_t c, const Fan& fan)
{
    const std::size_t n = cx.dim();
    const Cell& cell = cx.cell(c);
    if (cell.dim == n)
        return {};
    std::set<IntVec> normals;
    for (auto& g : tangent_generators(cx, c))
        normals.insert(g);
    for (const auto& sc : fan.all_cones()) {
        if (sc.empty())
            continue;
        Cone sigma = fan.cone(sc);
        for (const auto& v : sigma.facet_normals())
            normals.insert(v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        normals.insert(e);
    }
    std::vector<QVec> qn;
    for (const auto& v : normals)
        qn.push_back(to_qvec(v));
    std::vector<QVec> out;
    for (const auto& face : central_faces(n, cell.direction_basis(n), qn)) {
        if (std::all_of(face.point.begin(), face.point.end(), [](const Q& q) { return sgn(q) == 0; }))
            continue;
        out.push_back(to_qvec(primitive_integer(face.point)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct FanCones {
    std::vector<std::vector<std::size_t>> index;
    std::vector<Cone> cones;
};

FanCones fan_cones(const Fan& fan)
{
    FanCones fc;
    fc.index = fan.all_cones();
    for (const auto& sc : fc.index)
        fc.cones.push_back(fan.cone(sc));
    return fc;
}

// Decides whether cell c lies in tau-perp + M.
bool cell_in_perp_plus_lattice(const TorusCellComplex& cx, std::size_t c, const Fan& fan,
                               const std::vector<std::size_t>& tau)
{
    const Cell& cell = cx.cell(c);
    bool member = true;
    for (auto r : tau) {
        QVec v = to_qvec(fan.rays[r]);
        auto range = fm_functional_range(cx.dim(), cell.strict, cell.eqs, v);
        if (range.lower && range.upper && *range.lower == *range.upper) {
            if (!is_integer(*range.lower))
                member = false;
            continue;
        }
        if (range.interior_contains_integer())
            throw ComplexTooCoarse("complex too coarse: a skeleton stratum cuts cell " + std::to_string(c));
        member = false;
    }
    return member;
}

void scan_cell(const CellularSheaf& f, const Fan& fan, const FanCones& fc, bool antipodal, std::size_t c,
               std::size_t& tested, std::vector<SSViolation>& violations)
{
    const TorusCellComplex& cx = *f.complex;
    auto cones = star_cones(cx, c);
    for (const auto& xi : test_covectors(cx, c, fan)) {
        ++tested;
        auto m = morse_from(f, local_model_from(cx, cones, xi));
        if (all_zero(m))
            continue;
        QVec dir = xi;
        if (!antipodal)
            for (auto& v : dir)
                v = -v;
        bool ok = false;
        for (std::size_t i = 0; i < fc.cones.size(); ++i)
            if (fc.cones[i].contains_relint(dir)) {
                ok = cell_in_perp_plus_lattice(cx, c, fan, fc.index[i]);
                break;
            }
        if (!ok)
            violations.push_back({c, xi, m});
    }
}

SSReport finish(std::vector<std::size_t> tested, std::vector<std::vector<SSViolation>> per_cell, bool antipodal)
{
    SSReport rep;
    rep.antipodal = antipodal;
    for (std::size_t c = 0; c < tested.size(); ++c) {
        rep.tested += tested[c];
        for (auto& v : per_cell[c])
            rep.violations.push_back(std::move(v));
    }
    rep.ok = rep.violations.empty();
    return rep;
}

void check_fan(const CellularSheaf& f, const Fan& fan)
{
    if (fan.dim != f.complex->dim())
        throw std::invalid_argument("ss_contained_in_skeleton: dimension mismatch");
}

}  // namespace

SSReport ss_contained_in_skeleton_serial(const CellularSheaf& f, const Fan& fan, bool antipodal)
{
    check_fan(f, fan);
    FanCones fc = fan_cones(fan);
    const std::size_t N = f.complex->size();
    std::vector<std::size_t> tested(N, 0);
    std::vector<std::vector<SSViolation>> per_cell(N);
    for (std::size_t c = 0; c < N; ++c)
        scan_cell(f, fan, fc, antipodal, c, tested[c], per_cell[c]);
    return finish(std::move(tested), std::move(per_cell), antipodal);
}

SSReport ss_contained_in_skeleton(const CellularSheaf& f, const Fan& fan, bool antipodal)
{
    check_fan(f, fan);
    FanCones fc = fan_cones(fan);
    const long N = static_cast<long>(f.complex->size());
    std::vector<std::size_t> tested(static_cast<std::size_t>(N), 0);
    std::vector<std::vector<SSViolation>> per_cell(static_cast<std::size_t>(N));
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < N; ++c) {
        try {
            auto i = static_cast<std::size_t>(c);
            scan_cell(f, fan, fc, antipodal, i, tested[i], per_cell[i]);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return finish(std::move(tested), std::move(per_cell), antipodal);
}

}  // namespace nccc
