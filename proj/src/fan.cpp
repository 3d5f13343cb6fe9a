#include "nccc/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nccc {

namespace {

std::vector<QVec> rows_of(const Fan& f, const std::vector<std::size_t>& idx)
{
    std::vector<QVec> out;
    for (auto i : idx)
        out.push_back(to_qvec(f.rays[i]));
    return out;
}

Q det_of(const Fan& f, const std::vector<std::size_t>& idx)
{
    return determinant(QMatrix::from_rows(rows_of(f, idx), f.dim));
}

std::string join(const std::vector<std::size_t>& v)
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

// Gcd of the maximal minors of the given rows (k x n, k <= n).
Int minor_gcd(const std::vector<IntVec>& rows, std::size_t n)
{
    const std::size_t k = rows.size();
    Int g = 0;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        QMatrix m(k, k);
        std::size_t col = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!pick[j])
                continue;
            for (std::size_t i = 0; i < k; ++i)
                m(i, col) = rows[i][j];
            ++col;
        }
        Q d = determinant(m);
        Int z = d.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return g;
}

std::vector<std::vector<std::size_t>> subsets_of(std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1)
                s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> Fan::all_cones() const
{
    std::set<std::vector<std::size_t>> seen;
    for (const auto& c : max_cones) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << c.size()); ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < c.size(); ++i)
                if ((mask >> i) & 1)
                    s.push_back(c[i]);
            std::sort(s.begin(), s.end());
            seen.insert(std::move(s));
        }
    }
    std::vector<std::vector<std::size_t>> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

Cone Fan::cone(const std::vector<std::size_t>& ray_indices) const
{
    std::vector<IntVec> g;
    for (auto i : ray_indices)
        g.push_back(rays.at(i));
    return Cone(dim, Side::N, g);
}

std::size_t Fan::ray_index(const IntVec& r) const
{
    auto it = std::find(rays.begin(), rays.end(), r);
    if (it == rays.end())
        throw std::invalid_argument("ray not in fan");
    return static_cast<std::size_t>(it - rays.begin());
}

FanReport validate_fan(const Fan& f)
{
    if (f.max_cones.empty())
        throw std::invalid_argument("fan has no maximal cones");
    std::set<IntVec> seen;
    for (const auto& r : f.rays) {
        if (r.size() != f.dim)
            throw std::invalid_argument("ray dimension mismatch");
        if (gcd_of(r) != 1)
            throw std::invalid_argument("ray is not primitive");
        if (!seen.insert(r).second)
            throw std::invalid_argument("duplicate ray");
    }
    for (const auto& c : f.max_cones) {
        std::set<std::size_t> idx(c.begin(), c.end());
        if (idx.size() != c.size())
            throw std::invalid_argument("repeated ray index in cone");
        for (auto i : c)
            if (i >= f.rays.size())
                throw std::invalid_argument("ray index out of range");
    }

    FanReport rep;
    bool simplicial = true;
    for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
        const auto& c = f.max_cones[k];
        if (c.size() != f.dim) {
            rep.smooth = false;
            simplicial = false;
            rep.violations.push_back("cone " + std::to_string(k) + " " + join(c) + ": not full-dimensional simplicial");
            continue;
        }
        Q d = det_of(f, c);
        if (sgn(d) == 0) {
            rep.smooth = false;
            simplicial = false;
            rep.violations.push_back("cone " + std::to_string(k) + " " + join(c) + ": degenerate");
        } else if (abs(d) != 1) {
            rep.smooth = false;
            rep.violations.push_back("cone " + std::to_string(k) + " " + join(c) + ": determinant " + to_string(d));
        }
    }
    if (!simplicial) {
        rep.complete = false;
        rep.violations.push_back("completeness not checked: non-simplicial maximal cones");
        return rep;
    }

    // every facet shared by exactly two maximal cones lying on opposite sides
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> facet_owner;
    for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
        const auto& c = f.max_cones[k];
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<std::size_t> facet;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop)
                    facet.push_back(c[i]);
            std::sort(facet.begin(), facet.end());
            facet_owner[facet].push_back(k);
        }
    }
    std::vector<QVec> wall_normals;
    for (const auto& [facet, owners] : facet_owner) {
        auto ns = f.dim == 1 ? std::vector<QVec>{QVec{Q(1)}} : nullspace(QMatrix::from_rows(rows_of(f, facet), f.dim));
        if (ns.size() != 1)
            continue;
        wall_normals.push_back(ns[0]);
        if (owners.size() != 2) {
            rep.complete = false;
            rep.violations.push_back("facet " + join(facet) + " lies in " + std::to_string(owners.size()) +
                                     " maximal cones");
            continue;
        }
        auto apex = [&](std::size_t k) {
            for (auto i : f.max_cones[k])
                if (!std::binary_search(facet.begin(), facet.end(), i))
                    return i;
            return f.max_cones[k][0];
        };
        int s1 = sgn(dot(ns[0], to_qvec(f.rays[apex(owners[0])])));
        int s2 = sgn(dot(ns[0], to_qvec(f.rays[apex(owners[1])])));
        if (s1 * s2 >= 0) {
            rep.complete = false;
            rep.violations.push_back("facet " + join(facet) + ": adjacent cones overlap");
        }
    }

    // a generic point is covered exactly once
    QVec p;
    for (int attempt = 1;; ++attempt) {
        p.assign(f.dim, Q(0));
        for (std::size_t i = 0; i < f.dim; ++i)
            p[i] = make_q(static_cast<long>((i + 1) * (i + 1) * 7 + attempt * 3 * (i + 2)), 13 + attempt);
        bool generic = std::all_of(wall_normals.begin(), wall_normals.end(),
                                   [&](const QVec& u) { return sgn(dot(u, p)) != 0; });
        if (generic)
            break;
        if (attempt > 1000)
            throw std::runtime_error("validate_fan: no generic point found");
    }
    std::size_t covering = 0;
    for (const auto& c : f.max_cones) {
        QMatrix m = QMatrix::from_rows(rows_of(f, c), f.dim).transpose();
        auto coeff = solve(m, p);
        if (coeff && std::all_of(coeff->begin(), coeff->end(), [](const Q& q) { return sgn(q) >= 0; }))
            ++covering;
    }
    if (covering != 1) {
        rep.complete = false;
        rep.violations.push_back("generic point covered " + std::to_string(covering) + " times");
    }

    // cones meet in common faces
    for (std::size_t a = 0; a < f.max_cones.size(); ++a)
        for (std::size_t b = a + 1; b < f.max_cones.size(); ++b) {
            Cone ca = f.cone(f.max_cones[a]);
            Cone cb = f.cone(f.max_cones[b]);
            std::vector<QVec> rows;
            for (const auto& x : ca.facet_normals())
                rows.push_back(to_qvec(x));
            for (const auto& x : cb.facet_normals())
                rows.push_back(to_qvec(x));
            Cone meet(f.dim, Side::N, cone_generators_from_inequalities(f.dim, rows));
            std::vector<std::size_t> common;
            for (auto i : f.max_cones[a])
                if (std::find(f.max_cones[b].begin(), f.max_cones[b].end(), i) != f.max_cones[b].end())
                    common.push_back(i);
            if (!(meet == f.cone(common))) {
                rep.complete = false;
                rep.violations.push_back("cones " + std::to_string(a) + " and " + std::to_string(b) +
                                         " meet outside a common face");
            }
        }
    return rep;
}

Fan canonical_fan(const Fan& f)
{
    std::vector<std::size_t> order(f.rays.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f.rays[a] < f.rays[b]; });
    std::vector<std::size_t> where(order.size());
    Fan out;
    out.dim = f.dim;
    for (std::size_t i = 0; i < order.size(); ++i) {
        where[order[i]] = i;
        out.rays.push_back(f.rays[order[i]]);
    }
    for (const auto& c : f.max_cones) {
        std::vector<std::size_t> nc;
        for (auto i : c)
            nc.push_back(where[i]);
        std::sort(nc.begin(), nc.end());
        out.max_cones.push_back(std::move(nc));
    }
    std::sort(out.max_cones.begin(), out.max_cones.end());
    return out;
}

Fan star_subdivide(const Fan& f, std::size_t max_cone)
{
    if (max_cone >= f.max_cones.size())
        throw std::invalid_argument("star_subdivide: cone is not maximal");
    const auto& c = f.max_cones[max_cone];
    if (c.size() != f.dim || abs(det_of(f, c)) != 1)
        throw std::invalid_argument("star_subdivide: cone is not smooth");
    IntVec e(f.dim, Int(0));
    for (auto i : c)
        for (std::size_t j = 0; j < f.dim; ++j)
            e[j] += f.rays[i][j];
    Fan out = f;
    out.rays.push_back(e);
    std::size_t ne = out.rays.size() - 1;
    out.max_cones.erase(out.max_cones.begin() + static_cast<std::ptrdiff_t>(max_cone));
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
        std::vector<std::size_t> nc;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (i != drop)
                nc.push_back(c[i]);
        nc.push_back(ne);
        std::sort(nc.begin(), nc.end());
        out.max_cones.push_back(std::move(nc));
    }
    return out;
}

std::vector<std::size_t> cyclic_ray_order(const Fan& f)
{
    if (f.dim != 2)
        throw std::invalid_argument("cyclic_ray_order: fan is not 2-dimensional");
    std::vector<std::size_t> idx(f.rays.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    auto half = [&](std::size_t i) {
        const auto& v = f.rays[i];
        return (sgn(v[1]) > 0 || (sgn(v[1]) == 0 && sgn(v[0]) > 0)) ? 0 : 1;
    };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        int ha = half(a), hb = half(b);
        if (ha != hb)
            return ha < hb;
        const auto& u = f.rays[a];
        const auto& v = f.rays[b];
        return sgn(u[0] * v[1] - u[1] * v[0]) > 0;
    });
    return idx;
}

std::vector<Int> neighbor_coefficients(const Fan& f)
{
    auto order = cyclic_ray_order(f);
    const std::size_t r = order.size();
    if (r < 3)
        throw std::invalid_argument("neighbor_coefficients: fewer than three rays");
    std::vector<Int> out;
    for (std::size_t i = 0; i < r; ++i) {
        const auto& prev = f.rays[order[(i + r - 1) % r]];
        const auto& cur = f.rays[order[i]];
        const auto& next = f.rays[order[(i + 1) % r]];
        IntVec s = {prev[0] + next[0], prev[1] + next[1]};
        std::size_t j = sgn(cur[0]) != 0 ? 0 : 1;
        if (s[j] % cur[j] != 0)
            throw std::invalid_argument("neighbor_coefficients: fan is not smooth complete");
        Int c = s[j] / cur[j];
        if (s[0] != c * cur[0] || s[1] != c * cur[1])
            throw std::invalid_argument("neighbor_coefficients: fan is not smooth complete");
        out.push_back(c);
    }
    return out;
}

std::vector<IntVec> blow_down_candidates(const Fan& f)
{
    if (f.dim != 2)
        throw std::invalid_argument("blow_down_candidates: fan is not 2-dimensional");
    auto order = cyclic_ray_order(f);
    auto c = neighbor_coefficients(f);
    std::vector<IntVec> out;
    if (f.rays.size() <= 3)
        return out;
    for (std::size_t i = 0; i < order.size(); ++i)
        if (c[i] == 1)
            out.push_back(f.rays[order[i]]);
    std::sort(out.begin(), out.end());
    return out;
}

Fan blow_down(const Fan& f, const IntVec& ray)
{
    auto order = cyclic_ray_order(f);
    auto c = neighbor_coefficients(f);
    const std::size_t r = order.size();
    std::size_t pos = r;
    for (std::size_t i = 0; i < r; ++i)
        if (f.rays[order[i]] == ray)
            pos = i;
    if (pos == r)
        throw std::invalid_argument("blow_down: ray not in fan");
    if (c[pos] != 1 || r <= 3)
        throw std::invalid_argument("blow_down: ray is not contractible");
    std::size_t victim = order[pos];
    std::size_t prev = order[(pos + r - 1) % r];
    std::size_t next = order[(pos + 1) % r];
    auto remap = [&](std::size_t i) { return i > victim ? i - 1 : i; };
    Fan out;
    out.dim = 2;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        if (i != victim)
            out.rays.push_back(f.rays[i]);
    for (const auto& cone : f.max_cones) {
        if (std::find(cone.begin(), cone.end(), victim) != cone.end())
            continue;
        std::vector<std::size_t> nc;
        for (auto i : cone)
            nc.push_back(remap(i));
        out.max_cones.push_back(std::move(nc));
    }
    std::vector<std::size_t> merged = {remap(prev), remap(next)};
    std::sort(merged.begin(), merged.end());
    out.max_cones.push_back(merged);
    return out;
}

std::string to_string(const MinimalModelClass& c)
{
    switch (c.tag) {
    case MinimalTag::P2:
        return "P2";
    case MinimalTag::P1xP1:
        return "P1xP1";
    case MinimalTag::Hirzebruch:
        return "F" + std::to_string(c.a);
    }
    return "?";
}

MinimalModelClass classify_minimal(const Fan& f)
{
    if (!blow_down_candidates(f).empty())
        throw std::invalid_argument("not minimal");
    auto c = neighbor_coefficients(f);
    if (c.size() == 3)
        return {MinimalTag::P2, 0};
    if (c.size() == 4) {
        Int a = 0;
        for (const auto& x : c)
            if (abs(x) > a)
                a = abs(x);
        if (a == 0)
            return {MinimalTag::P1xP1, 0};
        return {MinimalTag::Hirzebruch, static_cast<int>(a.get_si())};
    }
    throw std::invalid_argument("not minimal");
}

MmpResult mmp_reduce(const Fan& f)
{
    MmpResult r;
    r.fans.push_back(f);
    while (true) {
        auto cands = blow_down_candidates(r.fans.back());
        if (cands.empty())
            break;
        r.trace.push_back(cands.front());
        r.fans.push_back(blow_down(r.fans.back(), cands.front()));
    }
    r.result = classify_minimal(r.fans.back());
    return r;
}

Fan mmp_replay(const MmpResult& r)
{
    Fan cur = r.fans.back();
    for (std::size_t i = r.trace.size(); i-- > 0;) {
        const IntVec& target = r.trace[i];
        std::size_t hit = cur.max_cones.size();
        for (std::size_t k = 0; k < cur.max_cones.size(); ++k) {
            const auto& c = cur.max_cones[k];
            IntVec s(2, Int(0));
            for (auto j : c)
                for (std::size_t d = 0; d < 2; ++d)
                    s[d] += cur.rays[j][d];
            if (s == target)
                hit = k;
        }
        if (hit == cur.max_cones.size())
            throw std::runtime_error("mmp_replay: no cone subdivides to the traced ray");
        cur = star_subdivide(cur, hit);
    }
    return cur;
}

bool is_zonotopal_unimodular(const Fan& f)
{
    std::set<IntVec> rays(f.rays.begin(), f.rays.end());
    for (const auto& r : f.rays) {
        IntVec neg = r;
        for (auto& x : neg)
            x = -x;
        if (!rays.count(neg))
            return false;
    }
    // maximal cones are exactly the chambers of the arrangement of wall hyperplanes
    std::vector<QVec> normals;
    for (const auto& c : f.all_cones()) {
        if (c.size() + 1 != f.dim)
            continue;
        auto ns = f.dim == 1 ? std::vector<QVec>{QVec{Q(1)}} : nullspace(QMatrix::from_rows(rows_of(f, c), f.dim));
        if (ns.size() == 1)
            normals.push_back(ns[0]);
    }
    for (const auto& c : f.max_cones)
        for (const auto& u : normals) {
            bool pos = false, neg = false;
            for (auto i : c) {
                int s = sgn(dot(u, to_qvec(f.rays[i])));
                pos |= s > 0;
                neg |= s < 0;
            }
            if (pos && neg)
                return false;
        }
    for (const auto& s : subsets_of(f.rays.size())) {
        if (s.empty() || s.size() > f.dim)
            continue;
        std::vector<IntVec> rows;
        for (auto i : s)
            rows.push_back(f.rays[i]);
        if (rank(QMatrix::from_rows(rows_of(f, s), f.dim)) != s.size())
            continue;
        if (minor_gcd(rows, f.dim) != 1)
            return false;
    }
    return true;
}

bool is_cragged(const Fan& f)
{
    const auto subsets = subsets_of(f.rays.size());
    for (const auto& s : subsets) {
        if (s.empty())
            continue;
        Cone hull = f.cone(s);
        for (const auto& mc : f.max_cones) {
            Cone sigma = f.cone(mc);
            std::vector<QVec> rows;
            for (const auto& x : sigma.facet_normals())
                rows.push_back(to_qvec(x));
            for (const auto& x : hull.facet_normals())
                rows.push_back(to_qvec(x));
            Cone meet(f.dim, Side::N, cone_generators_from_inequalities(f.dim, rows));
            std::vector<std::size_t> face;
            for (auto i : mc)
                if (meet.contains(to_qvec(f.rays[i])))
                    face.push_back(i);
            if (!(meet == f.cone(face)))
                return false;
        }
    }
    for (const auto& b : subsets) {
        if (b.empty() || b.size() > f.dim)
            continue;
        auto brows = rows_of(f, b);
        if (rank(QMatrix::from_rows(brows, f.dim)) != b.size())
            continue;
        Cone cb = f.cone(b);
        QMatrix m = QMatrix::from_rows(brows, f.dim).transpose();
        for (const auto& r : f.rays) {
            QVec rq = to_qvec(r);
            if (!cb.contains(rq))
                continue;
            auto coeff = solve(m, rq);
            if (!coeff || !std::all_of(coeff->begin(), coeff->end(), [](const Q& q) { return is_integer(q); }))
                return false;
        }
    }
    return true;
}

std::vector<Int> surface_key(const Fan& f)
{
    auto c = neighbor_coefficients(f);
    std::vector<Int> best;
    const std::size_t r = c.size();
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<Int> seq = c;
        if (dir == 1)
            std::reverse(seq.begin(), seq.end());
        for (std::size_t s = 0; s < r; ++s) {
            std::vector<Int> rot(r);
            for (std::size_t i = 0; i < r; ++i)
                rot[i] = seq[(i + s) % r];
            if (best.empty() || rot < best)
                best = rot;
        }
    }
    return best;
}

Fan surface_fan_from_coefficients(const std::vector<Int>& c)
{
    const std::size_t r = c.size();
    if (r < 3)
        throw std::invalid_argument("surface fan needs at least three rays");
    std::vector<IntVec> v = {{Int(1), Int(0)}, {Int(0), Int(1)}};
    for (std::size_t i = 1; i + 1 < r + 1; ++i) {
        const auto& a = v[i];
        const auto& b = v[i - 1];
        v.push_back({c[i] * a[0] - b[0], c[i] * a[1] - b[1]});
    }
    // v has r+1 entries; closure requires v[r] = v[0] and c[0] v[0] = v[r-1] + v[1]
    if (v[r] != v[0])
        throw std::invalid_argument("coefficient sequence does not close up");
    IntVec s = {v[r - 1][0] + v[1][0], v[r - 1][1] + v[1][1]};
    if (s != IntVec{c[0] * v[0][0], c[0] * v[0][1]})
        throw std::invalid_argument("coefficient sequence does not close up");
    // winding number one: the angle wraps exactly once
    Fan f;
    f.dim = 2;
    f.rays.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));
    std::set<IntVec> distinct(f.rays.begin(), f.rays.end());
    if (distinct.size() != r)
        throw std::invalid_argument("coefficient sequence winds more than once");
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::size_t> cone = {i, (i + 1) % r};
        std::sort(cone.begin(), cone.end());
        f.max_cones.push_back(cone);
    }
    auto order = cyclic_ray_order(f);
    for (std::size_t i = 0; i < r; ++i)
        if (order[i] != i)
            throw std::invalid_argument("coefficient sequence winds more than once");
    return f;
}

bool is_refinement(const Fan& coarse, const Fan& fine)
{
    if (coarse.dim != fine.dim)
        return false;
    for (const auto& r : coarse.rays)
        if (std::find(fine.rays.begin(), fine.rays.end(), r) == fine.rays.end())
            return false;
    for (const auto& fc : fine.max_cones) {
        bool inside = false;
        for (const auto& cc : coarse.max_cones) {
            Cone c = coarse.cone(cc);
            bool all = std::all_of(fc.begin(), fc.end(), [&](std::size_t i) { return c.contains(to_qvec(fine.rays[i])); });
            if (all) {
                inside = true;
                break;
            }
        }
        if (!inside)
            return false;
    }
    return true;
}

Fan fan_projective_space(std::size_t n)
{
    Fan f;
    f.dim = n;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        f.rays.push_back(e);
    }
    f.rays.push_back(IntVec(n, Int(-1)));
    for (std::size_t drop = 0; drop <= n; ++drop) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != drop)
                c.push_back(i);
        f.max_cones.push_back(c);
    }
    std::sort(f.max_cones.begin(), f.max_cones.end());
    return f;
}

Fan fan_p1xp1()
{
    Fan f;
    f.dim = 2;
    f.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(0)}, {Int(0), Int(-1)}};
    f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    return f;
}

Fan fan_hirzebruch(int a)
{
    Fan f;
    f.dim = 2;
    f.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(a)}, {Int(0), Int(-1)}};
    f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    return f;
}

std::vector<Fan> enumerate_surface_fans(std::size_t max_rays, int a_cap)
{
    if (max_rays > 8)
        throw std::invalid_argument("enumerate_surface_fans: bound exceeded (max 8 rays)");
    std::vector<Fan> seeds = {fan_projective_space(2), fan_p1xp1()};
    for (int a = 2; a <= a_cap; ++a)
        seeds.push_back(fan_hirzebruch(a));
    std::map<std::vector<Int>, Fan> found;
    std::vector<Fan> frontier;
    for (const auto& s : seeds)
        if (s.rays.size() <= max_rays && found.emplace(surface_key(s), s).second)
            frontier.push_back(s);
    while (!frontier.empty()) {
        std::vector<Fan> next;
        for (const auto& f : frontier) {
            if (f.rays.size() + 1 > max_rays)
                continue;
            for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
                Fan g = star_subdivide(f, k);
                if (found.emplace(surface_key(g), g).second)
                    next.push_back(g);
            }
        }
        frontier = std::move(next);
    }
    std::vector<std::vector<Int>> keys;
    for (const auto& [k, f] : found)
        keys.push_back(k);
    std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<Fan> out;
    for (const auto& k : keys)
        out.push_back(surface_fan_from_coefficients(k));
    return out;
}

}  // namespace nccc
