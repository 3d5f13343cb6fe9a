#include "nccc/coherent.hpp"

#include <algorithm>
#include <exception>

namespace nccc {

namespace {

void check_divisor(const Fan& f, const ToricDivisor& d)
{
    if (d.size() != f.rays.size())
        throw std::invalid_argument("divisor: one coefficient per ray expected");
}

// Lexicographic successor in [lo, hi]; false after the last point.
bool next_point(IntVec& m, const IntVec& lo, const IntVec& hi)
{
    std::size_t i = 0;
    while (i < m.size() && m[i] == hi[i]) {
        m[i] = lo[i];
        ++i;
    }
    if (i == m.size())
        return false;
    ++m[i];
    return true;
}

std::vector<IntVec> window_points(const IntVec& lo, const IntVec& hi)
{
    std::vector<IntVec> out;
    IntVec m = lo;
    do
        out.push_back(m);
    while (next_point(m, lo, hi));
    return out;
}

bool on_shell(const IntVec& m, const IntVec& lo, const IntVec& hi)
{
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] == lo[i] || m[i] == hi[i])
            return true;
    return false;
}

struct Prepared {
    std::vector<std::vector<std::size_t>> cones;  // all cones, including the empty one
    IntVec lo, hi;
};

Prepared prepare(const Fan& f, const ToricDivisor& d)
{
    check_divisor(f, d);
    auto rep = validate_fan(f);
    if (!rep.smooth || !rep.complete)
        throw std::invalid_argument("line_bundle_cohomology: fan must be smooth and complete");
    Prepared p;
    p.cones = f.all_cones();
    std::tie(p.lo, p.hi) = cohomology_window(f, d);
    return p;
}

GradedDims contribution(const Fan& f, const ToricDivisor& d, const std::vector<std::vector<std::size_t>>& cones,
                        const IntVec& m)
{
    const std::size_t n = f.dim;
    std::vector<bool> neg(f.rays.size());
    for (std::size_t r = 0; r < f.rays.size(); ++r) {
        Int s = 0;
        for (std::size_t i = 0; i < n; ++i)
            s += m[i] * f.rays[r][i];
        neg[r] = s < -d[r];
    }
    // augmented simplicial cochains of the full subcomplex, graded by cone size
    std::vector<std::vector<const std::vector<std::size_t>*>> by_size(n + 1);
    for (const auto& c : cones)
        if (std::all_of(c.begin(), c.end(), [&](std::size_t r) { return neg[r]; }))
            by_size[c.size()].push_back(&c);
    std::vector<std::size_t> dims(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        dims[k] = by_size[k].size();
    std::vector<SparseMatrix> ds;
    for (std::size_t k = 0; k < n; ++k) {
        SparseMatrix dm(dims[k + 1], dims[k]);
        for (std::size_t j = 0; j < by_size[k + 1].size(); ++j) {
            const auto& big = *by_size[k + 1][j];
            for (std::size_t drop = 0; drop < big.size(); ++drop) {
                std::vector<std::size_t> face;
                for (std::size_t t = 0; t < big.size(); ++t)
                    if (t != drop)
                        face.push_back(big[t]);
                auto it = std::find_if(by_size[k].begin(), by_size[k].end(),
                                       [&](const std::vector<std::size_t>* c) { return *c == face; });
                dm.add(j, static_cast<std::size_t>(it - by_size[k].begin()), Q(drop % 2 == 0 ? 1 : -1));
            }
        }
        ds.push_back(std::move(dm));
    }
    return ChainComplexQ(dims, std::move(ds)).cohomology();
}

void accumulate(GradedDims& total, const GradedDims& c)
{
    for (std::size_t i = 0; i < c.size(); ++i)
        total[i] += c[i];
}

}  // namespace

std::pair<IntVec, IntVec> cohomology_window(const Fan& f, const ToricDivisor& d)
{
    check_divisor(f, d);
    const std::size_t n = f.dim;
    const std::size_t r = f.rays.size();
    std::vector<Q> lo(n), hi(n);
    bool any = false;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i)
        pick[i] = i;
    while (n <= r) {
        QMatrix a(n, n);
        QVec b(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = Q(f.rays[pick[i]][j]);
            b[i] = Q(-d[pick[i]]);
        }
        if (sgn(determinant(a)) != 0) {
            QVec v = *solve(a, b);
            for (std::size_t i = 0; i < n; ++i) {
                if (!any || v[i] < lo[i])
                    lo[i] = v[i];
                if (!any || v[i] > hi[i])
                    hi[i] = v[i];
            }
            any = true;
        }
        // next n-subset
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == r - n + i - 1)
            --i;
        if (i == 0)
            break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    IntVec a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = any ? Int(floor_q(lo[i]) - 1) : Int(-1);
        b[i] = any ? Int(ceil_q(hi[i]) + 1) : Int(1);
    }
    return {a, b};
}

GradedDims character_contribution(const Fan& f, const ToricDivisor& d, const IntVec& m)
{
    check_divisor(f, d);
    return contribution(f, d, f.all_cones(), m);
}

GradedDims line_bundle_cohomology_serial(const Fan& f, const ToricDivisor& d)
{
    Prepared p = prepare(f, d);
    GradedDims total(f.dim + 1, 0);
    for (const auto& m : window_points(p.lo, p.hi)) {
        auto c = contribution(f, d, p.cones, m);
        if (on_shell(m, p.lo, p.hi) && !all_zero(c))
            throw WindowOverflow("line_bundle_cohomology: nonzero contribution on the window boundary");
        accumulate(total, c);
    }
    return total;
}

GradedDims line_bundle_cohomology(const Fan& f, const ToricDivisor& d)
{
    Prepared p = prepare(f, d);
    auto pts = window_points(p.lo, p.hi);
    std::vector<GradedDims> parts(pts.size());
    const long N = static_cast<long>(pts.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < N; ++i) {
        try {
            auto u = static_cast<std::size_t>(i);
            parts[u] = contribution(f, d, p.cones, pts[u]);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    GradedDims total(f.dim + 1, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (on_shell(pts[i], p.lo, p.hi) && !all_zero(parts[i]))
            throw WindowOverflow("line_bundle_cohomology: nonzero contribution on the window boundary");
        accumulate(total, parts[i]);
    }
    return total;
}

GradedDims projective_space_cohomology(std::size_t m, long d)
{
    Fan f = fan_projective_space(m);
    ToricDivisor div(f.rays.size(), 0);
    div[0] = d;
    return line_bundle_cohomology(f, div);
}

GradedDims ext_orlov(std::size_t n, int k, int l)
{
    if (n < 2)
        throw std::invalid_argument("ext_orlov: dimension must be at least 2");
    if (k < 1 || l < 1 || k > static_cast<int>(n) - 1 || l > static_cast<int>(n) - 1)
        throw std::out_of_range("ext_orlov: k and l must lie in [1, n-1]");
    // E = P^{n-1} with O_E(E) = O(-1). From 0 -> O((l-1)E) -> O(lE) -> O_E(lE) -> 0 the
    // section cutting E restricts to zero on E, so the long sequence splits.
    auto a = projective_space_cohomology(n - 1, k - l);
    auto b = projective_space_cohomology(n - 1, k - l - 1);
    GradedDims out(n + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i + 1] += b[i];
    return out;
}

long euler_pairing(const Fan& f, const ToricDivisor& d1, const ToricDivisor& d2)
{
    check_divisor(f, d1);
    check_divisor(f, d2);
    ToricDivisor diff(d1.size());
    for (std::size_t i = 0; i < d1.size(); ++i)
        diff[i] = d2[i] - d1[i];
    return euler_characteristic(line_bundle_cohomology(f, diff));
}

ToricDivisor canonical_divisor(const Fan& f) { return ToricDivisor(f.rays.size(), -1); }

}  // namespace nccc
