#include "nccc/regions.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

namespace nccc {

namespace {

QVec unit(std::size_t n, std::size_t i, long s = 1)
{
    QVec e(n);
    e[i] = s;
    return e;
}

QVec ones(std::size_t n) { return QVec(n, Q(1)); }

void check_k(int k, int lo, int hi, const char* what)
{
    if (k < lo || k > hi)
        throw std::out_of_range(std::string(what) + ": k out of range");
}

QMatrix basis_matrix(const BlowupContext& ctx)
{
    const std::size_t n = ctx.dim();
    QMatrix b(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            b(i, j) = Q(ctx.basis[j][i]);
    return b;
}

}  // namespace

Fan BlowupContext::in_basis(const Fan& f) const
{
    QMatrix b = basis_matrix(*this);
    Fan out = f;
    for (auto& r : out.rays) {
        auto x = solve(b, to_qvec(r));
        if (!x)
            throw std::logic_error("in_basis: singular basis");
        IntVec v;
        for (const auto& q : *x) {
            if (!is_integer(q))
                throw std::logic_error("in_basis: basis is not unimodular");
            v.push_back(q.get_num());
        }
        r = v;
    }
    return out;
}

BlowupContext make_context(const Fan& fan, std::size_t max_cone, std::string name)
{
    auto rep = validate_fan(fan);
    if (!rep.smooth)
        throw std::invalid_argument("make_context: fan is not smooth");
    BlowupContext ctx;
    ctx.name = std::move(name);
    ctx.fan = fan;
    ctx.cone = max_cone;
    ctx.blown_up = star_subdivide(fan, max_cone);
    ctx.exceptional_ray = ctx.blown_up.rays.size() - 1;
    ctx.e_E.assign(fan.dim, Int(0));
    for (auto i : fan.max_cones[max_cone]) {
        ctx.basis.push_back(fan.rays[i]);
        for (std::size_t j = 0; j < fan.dim; ++j)
            ctx.e_E[j] += fan.rays[i][j];
    }
    return ctx;
}

NncPolyhedron region_Z(const BlowupContext& ctx)
{
    const std::size_t n = ctx.dim();
    std::vector<Constraint> cs{{ones(n), Q(-1), false}};
    for (std::size_t i = 0; i < n; ++i)
        cs.push_back({unit(n, i, -1), Q(0), true});
    return NncPolyhedron(n, std::move(cs));
}

NncPolyhedron region_Zk(const BlowupContext& ctx, int k)
{
    if (k < 0)
        throw std::out_of_range("region_Zk: negative k");
    if (k == 0)
        return NncPolyhedron::empty(ctx.dim());
    return region_Z(ctx).scale(Q(k));
}

NncPolyhedron region_shell(const BlowupContext& ctx, int k)
{
    if (k < 1)
        throw std::out_of_range("region_shell: k must be positive");
    const std::size_t n = ctx.dim();
    QVec ones(n, Q(1)), minus_ones(n, Q(-1));
    std::vector<Constraint> cs{{ones, Q(-k), false}, {minus_ones, Q(k - 1), true}};
    for (std::size_t i = 0; i < n; ++i)
        cs.push_back({unit(n, i, -1), Q(0), true});
    return NncPolyhedron(n, std::move(cs));
}

CellularSheaf literal_object(ComplexPtr cx, const BlowupContext& ctx, int k)
{
    return pushforward_indicator(std::move(cx), Region(region_Zk(ctx, k)));
}

CellularSheaf shell_object(ComplexPtr cx, const BlowupContext& ctx, int k)
{
    return pushforward_indicator(std::move(cx), Region(region_shell(ctx, k)));
}

Region region_F(const BlowupContext& ctx)
{
    const std::size_t n = ctx.dim();
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < n; ++i) {
        cs.push_back({unit(n, i), Q(-1), false});
        cs.push_back({unit(n, i, -1), Q(0), true});
    }
    return Region(n, {NncPolyhedron(n, std::move(cs))}, {QVec(n, Q(-1))});
}

Region hat_Zk(const BlowupContext& ctx, int k)
{
    check_k(k, 0, static_cast<int>(ctx.dim()), "hat_Zk");
    if (k == 0)
        return Region(ctx.dim());
    return Region(region_Zk(ctx, k)).intersect(region_F(ctx));
}

Region tilde_Zk(const BlowupContext& ctx, int k)
{
    check_k(k, 1, static_cast<int>(ctx.dim()), "tilde_Zk");
    return hat_Zk(ctx, k).minus(hat_Zk(ctx, k - 1));
}

Region tilde_Uk(const BlowupContext& ctx, int k)
{
    check_k(k, 1, static_cast<int>(ctx.dim()), "tilde_Uk");
    const std::size_t n = ctx.dim();
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < n; ++i) {
        cs.push_back({unit(n, i), Q(-1), true});
        cs.push_back({unit(n, i, -1), Q(0), true});
    }
    return Region(NncPolyhedron(n, std::move(cs))).minus(hat_Zk(ctx, k - 1));
}

std::vector<bool> image_Uk(const TorusCellComplex& cx, const BlowupContext& ctx, int k)
{
    auto lifts = region_lifts(cx, tilde_Uk(ctx, k));
    std::vector<bool> out(cx.size());
    for (std::size_t c = 0; c < cx.size(); ++c) {
        if (lifts[c].size() > 1)
            throw std::logic_error("image_Uk: projection is not injective");
        out[c] = !lifts[c].empty();
    }
    if (!cx.poset()->is_up_closed(out))
        throw std::logic_error("image_Uk: image is not open");
    return out;
}

std::vector<Region> box_partition(const BlowupContext& ctx, int k)
{
    check_k(k, 1, static_cast<int>(ctx.dim()) - 1, "box_partition");
    const std::size_t n = ctx.dim();
    NncPolyhedron zk = region_Zk(ctx, k);
    std::vector<Region> out;
    std::vector<long> l(n, -k);
    while (true) {
        if (!std::all_of(l.begin(), l.end(), [](long v) { return v == -1; })) {
            std::vector<Constraint> cs;
            for (std::size_t i = 0; i < n; ++i) {
                cs.push_back({unit(n, i), Q(l[i]), false});
                cs.push_back({unit(n, i, -1), Q(-(l[i] + 1)), true});
            }
            auto piece = zk.intersect(NncPolyhedron(n, std::move(cs)));
            if (!piece.is_empty())
                out.emplace_back(piece);
        }
        std::size_t i = 0;
        while (i < n && l[i] == -1) {
            l[i] = -k;
            ++i;
        }
        if (i == n)
            break;
        ++l[i];
    }
    return out;
}

bool verify_box_partition(const BlowupContext& ctx, int k)
{
    auto parts = box_partition(ctx, k);
    Region uni(ctx.dim());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (!parts[i].intersect(parts[j]).is_empty())
                return false;
        uni = uni.unite(parts[i]);
    }
    Region target = Region(region_Zk(ctx, k)).minus(hat_Zk(ctx, k));
    return symmetric_difference_empty(uni, target);
}

std::vector<PeriodicFamily> context_families(const BlowupContext& ctx)
{
    const std::size_t n = ctx.dim();
    std::vector<PeriodicFamily> fam;
    for (std::size_t i = 0; i < n; ++i)
        fam.push_back(periodic_family(unit(n, i), Q(0)));
    fam.push_back(periodic_family(ones(n), Q(0)));
    for (const auto& r : ctx.in_basis(ctx.blown_up).rays)
        fam.push_back(periodic_family(to_qvec(r), Q(0)));
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    return fam;
}

ComplexPtr context_complex(const BlowupContext& ctx) { return TorusCellComplex::build(ctx.dim(), context_families(ctx)); }

namespace {

Region cech_region(const std::vector<IntVec>& rays, const QVec& e_dual)
{
    const std::size_t n = e_dual.size();
    std::vector<Constraint> shifted, dual;
    for (const auto& r : rays) {
        QVec v = to_qvec(r);
        shifted.push_back({v, -dot(e_dual, v), false});
        dual.push_back({v, Q(0), false});
    }
    return Region(NncPolyhedron(n, shifted)).minus(Region(NncPolyhedron(n, dual)));
}

}  // namespace

CechSystem build_cech_system(const BlowupContext& ctx)
{
    const std::size_t n = ctx.dim();
    Fan local = ctx.in_basis(ctx.blown_up);
    CechSystem cs;
    for (const auto& sc : local.all_cones()) {
        if (std::find(sc.begin(), sc.end(), ctx.exceptional_ray) == sc.end())
            continue;
        std::vector<IntVec> rays;
        for (auto r : sc)
            rays.push_back(local.rays[r]);
        CechCone cc;
        cc.rays = sc;
        std::vector<Region> choices;
        for (std::size_t j = 0; j < n; ++j) {
            QVec e = unit(n, j);
            bool valid = true;
            for (auto r : sc) {
                Q want = r == ctx.exceptional_ray ? Q(1) : Q(0);
                if (dot(e, to_qvec(local.rays[r])) != want)
                    valid = false;
            }
            if (!valid)
                continue;
            if (choices.empty())
                cc.chosen_dual = j;
            choices.push_back(cech_region(rays, e));
        }
        if (choices.empty())
            throw std::logic_error("build_cech_system: no dual basis vector trivializes E on the cone");
        for (std::size_t i = 1; i < choices.size(); ++i)
            if (!symmetric_difference_empty(choices[0], choices[i]))
                cs.choice_independent = false;
        cc.region = choices[0];
        cs.cones.push_back(std::move(cc));
    }
    std::stable_sort(cs.cones.begin(), cs.cones.end(),
                     [](const CechCone& a, const CechCone& b) { return a.rays.size() < b.rays.size(); });
    if (cs.cones.empty() || cs.cones.front().rays.size() != 1)
        throw std::logic_error("build_cech_system: exceptional ray missing");
    Region slab = cs.cones.front().region;
    Region cover(n);
    for (const auto& cc : cs.cones)
        if (cc.rays.size() == 2)
            cover = cover.unite(cc.region);
    cs.covers = symmetric_difference_empty(cover, slab.minus(Region(region_Z(ctx))));
    return cs;
}

namespace {

struct CechArrangement {
    std::vector<Cell> cells;
    NncPolyhedron z1;
};

CechArrangement cech_arrangement(const BlowupContext& ctx, const CechSystem& cs, long lo, long hi)
{
    const std::size_t n = ctx.dim();
    CechArrangement arr;
    arr.z1 = region_Z(ctx);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = arr.z1.range_of(unit(n, i));
        if (!r.lower || !r.upper || *r.lower <= Q(lo) || *r.upper >= Q(hi))
            throw std::invalid_argument("Cech window too small: Z_1 touches its boundary");
    }
    std::vector<Hyperplane> hs;
    auto add = [&](const Region& r) {
        for (const auto& c : r.boundary_hyperplanes())
            hs.push_back({c.normal, c.offset});
    };
    add(Region(arr.z1));
    for (const auto& cc : cs.cones)
        add(cc.region);
    arr.cells = box_arrangement(QVec(n, Q(lo)), QVec(n, Q(hi)), hs);
    return arr;
}

CechCellResult cech_cell(const CechSystem& cs, const NncPolyhedron& z1, const Cell& cell)
{
    CechCellResult res;
    res.point = cell.point;
    res.in_Z1 = z1.contains(cell.point);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < cs.cones.size(); ++i)
        if (cs.cones[i].region.contains(cell.point))
            members.push_back(i);
    std::size_t top = 0;
    for (const auto& cc : cs.cones)
        top = std::max(top, cc.rays.size());
    std::vector<std::size_t> dims(top, 0), pos(cs.cones.size());
    for (auto i : members)
        pos[i] = dims[cs.cones[i].rays.size() - 1]++;
    std::vector<SparseMatrix> ds;
    for (std::size_t d = 0; d + 1 < top; ++d)
        ds.emplace_back(dims[d + 1], dims[d]);
    for (auto i : members)
        for (auto j : members) {
            const auto& a = cs.cones[i].rays;
            const auto& b = cs.cones[j].rays;
            if (b.size() != a.size() + 1 || !std::includes(b.begin(), b.end(), a.begin(), a.end()))
                continue;
            std::size_t at = 0;
            while (at < a.size() && a[at] == b[at])
                ++at;
            ds[a.size() - 1].add(pos[j], pos[i], Q(at % 2 == 0 ? 1 : -1));
        }
    res.stalk = ChainComplexQ(dims, std::move(ds)).cohomology();
    return res;
}

bool cech_expected(const CechCellResult& r)
{
    for (std::size_t d = 0; d < r.stalk.size(); ++d) {
        std::size_t want = (d == 0 && r.in_Z1) ? 1 : 0;
        if (r.stalk[d] != want)
            return false;
    }
    return !r.stalk.empty() || !r.in_Z1;
}

}  // namespace

CechCheck check_cech_cells_serial(const BlowupContext& ctx, const CechSystem& cs, long lo, long hi)
{
    auto arr = cech_arrangement(ctx, cs, lo, hi);
    CechCheck out;
    out.cells = arr.cells.size();
    for (const auto& cell : arr.cells) {
        auto r = cech_cell(cs, arr.z1, cell);
        if (!cech_expected(r))
            out.failures.push_back(std::move(r));
    }
    out.ok = out.failures.empty();
    return out;
}

CechCheck check_cech_cells(const BlowupContext& ctx, const CechSystem& cs, long lo, long hi)
{
    auto arr = cech_arrangement(ctx, cs, lo, hi);
    const long N = static_cast<long>(arr.cells.size());
    std::vector<CechCellResult> results(arr.cells.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < N; ++i) {
        try {
            auto u = static_cast<std::size_t>(i);
            results[u] = cech_cell(cs, arr.z1, arr.cells[u]);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    CechCheck out;
    out.cells = arr.cells.size();
    for (auto& r : results)
        if (!cech_expected(r))
            out.failures.push_back(std::move(r));
    out.ok = out.failures.empty();
    return out;
}

BlowupContext standard_context(const std::string& name)
{
    Fan f;
    if (name == "P2")
        f = fan_projective_space(2);
    else if (name == "P3")
        f = fan_projective_space(3);
    else if (name == "P1xP1")
        f = fan_p1xp1();
    else if (name.size() > 1 && name[0] == 'F')
        f = fan_hirzebruch(std::stoi(name.substr(1)));
    else
        throw std::invalid_argument("standard_context: unknown name " + name);
    // the cone spanned by the first standard basis vectors
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        bool standard = true;
        for (std::size_t k = 0; k < f.max_cones[c].size(); ++k) {
            IntVec e(f.dim, Int(0));
            e[k] = 1;
            if (f.rays[f.max_cones[c][k]] != e)
                standard = false;
        }
        if (standard)
            return make_context(f, c, name);
    }
    throw std::logic_error("standard_context: no positive orthant cone");
}

}  // namespace nccc
