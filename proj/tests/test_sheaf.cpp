#include "doctest.h"
#include "oracles/bar_resolution.hpp"

#include "nccc/sheaf.hpp"

#include <random>

using namespace nccc;

namespace {

QVec qv(std::initializer_list<long> xs)
{
    QVec v;
    for (long x : xs)
        v.push_back(Q(x));
    return v;
}

Constraint ge(QVec a, Q b) { return {std::move(a), std::move(b), false}; }
Constraint gt(QVec a, Q b) { return {std::move(a), std::move(b), true}; }

Region z1_plane()
{
    return Region(NncPolyhedron(2, {ge(qv({1, 1}), Q(-1)), gt(qv({-1, 0}), Q(0)), gt(qv({0, -1}), Q(0))}));
}

ComplexPtr z1_complex() { return TorusCellComplex::build(2, {periodic_family(qv({1, 1}), Q(0))}); }

std::size_t origin(const TorusCellComplex& cx) { return cx.locate(QVec(cx.dim(), Q(0))); }

GradedDims trimmed(GradedDims d)
{
    while (!d.empty() && d.back() == 0)
        d.pop_back();
    return d;
}

}  // namespace

TEST_CASE("constant sheaf and skyscraper cohomology")
{
    auto cx = TorusCellComplex::build(2, {});
    CHECK(cohomology(constant_sheaf(cx)) == GradedDims{1, 2, 1});
    CHECK(cohomology(skyscraper(cx, origin(*cx))) == GradedDims{1, 0, 0});
    CHECK(ext_groups(constant_sheaf(cx), constant_sheaf(cx)) == GradedDims{1, 2, 1});
    auto c3 = TorusCellComplex::build(3, {});
    CHECK(cohomology(constant_sheaf(c3)) == GradedDims{1, 3, 3, 1});
    CHECK_THROWS_AS(skyscraper(cx, cx->cells_of_dim(1).front()), std::invalid_argument);
}

TEST_CASE("ext from the skyscraper at the origin matches local duality and the oracle")
{
    auto cx = TorusCellComplex::build(2, {});
    auto sky = skyscraper(cx, origin(*cx));
    auto k = constant_sheaf(cx);
    CHECK(ext_groups(sky, k) == GradedDims{0, 0, 1});
    CHECK(trimmed(ext_groups(sky, k)) == trimmed(oracle::bar_ext(sky.rep, k.rep)));
    CHECK(ext_groups(k, sky) == GradedDims{1, 0, 0});
}

TEST_CASE("compactly supported cohomology of the open square")
{
    auto cx = TorusCellComplex::build(2, {});
    std::vector<bool> open(cx->size());
    for (std::size_t c = 0; c < cx->size(); ++c) {
        const auto& p = cx->cell(c).point;
        open[c] = sgn(p[0]) != 0 && sgn(p[1]) != 0;
    }
    CHECK(compact_cohomology(constant_sheaf(cx), open) == GradedDims{0, 0, 1});
    std::vector<bool> closed = open;
    closed.flip();
    CHECK_THROWS_AS(shriek_restrict(constant_sheaf(cx), closed), std::invalid_argument);
}

TEST_CASE("tensor with the constant sheaf is the identity")
{
    auto cx = z1_complex();
    auto f = pushforward_indicator(cx, z1_plane());
    auto t = tensor(f, constant_sheaf(cx));
    CHECK(t.rep.dims == f.rep.dims);
    CHECK(t.rep.maps == f.rep.maps);
}

TEST_CASE("pushforward of Z_1 in the plane")
{
    auto cx = z1_complex();
    auto f = pushforward_indicator(cx, z1_plane());
    CHECK(f.is_valid());
    for (std::size_t c = 0; c < cx->size(); ++c) {
        const auto& p = cx->cell(c).point;
        // lift of the cell point into (-1, 0]^2
        QVec y{p[0] - 1, p[1] - 1};
        if (sgn(p[0]) == 0)
            y[0] = 0;
        if (sgn(p[1]) == 0)
            y[1] = 0;
        bool inside = y[0] < 0 && y[1] < 0 && y[0] + y[1] >= -1;
        CHECK(f.stalk_dim(c) == (inside ? 1u : 0u));
    }
    CHECK(cohomology(f) == GradedDims{0, 0, 0});
    CHECK(ext_groups(f, f) == GradedDims{1, 0, 0});
    auto sky = skyscraper(cx, origin(*cx));
    CHECK(tensor(sky, f).is_zero());
    // Euler characteristic of the half-open triangle
    CHECK(euler_characteristic(cohomology(f)) == 0);
    auto bad = Region(NncPolyhedron(2, {ge(qv({1, 2}), Q(-1)), gt(qv({-1, 0}), Q(0)), gt(qv({0, -1}), Q(0))}));
    CHECK_THROWS_AS(pushforward_indicator(cx, bad), NotAdapted);
}

TEST_CASE("Euler characteristic of Ext is additive along open-closed sequences")
{
    auto cx = z1_complex();
    std::mt19937 rng(11);
    const Poset& p = *cx->poset();
    auto g = pushforward_indicator(cx, z1_plane());
    for (int trial = 0; trial < 6; ++trial) {
        // closed set: closure of a few random cells
        std::uniform_int_distribution<std::size_t> pick(0, cx->size() - 1);
        std::vector<bool> closed(cx->size(), false);
        for (int k = 0; k < 3; ++k) {
            auto c = pick(rng);
            closed[c] = true;
            for (auto b : p.below(c))
                closed[b] = true;
        }
        std::vector<bool> open = closed;
        open.flip();
        auto all = constant_sheaf(cx);
        auto fz = indicator_sheaf(cx, closed);
        auto fu = indicator_sheaf(cx, open);
        for (const auto* G : {&all, &g}) {
            long whole = euler_characteristic(ext_groups(all, *G));
            CHECK(whole == euler_characteristic(ext_groups(fz, *G)) + euler_characteristic(ext_groups(fu, *G)));
            long whole2 = euler_characteristic(ext_groups(*G, all));
            CHECK(whole2 == euler_characteristic(ext_groups(*G, fz)) + euler_characteristic(ext_groups(*G, fu)));
        }
    }
}

TEST_CASE("Morse groups: constant sheaf and the one-dimensional calibration")
{
    auto cx = TorusCellComplex::build(2, {periodic_family(qv({1, 1}), Q(0))});
    auto k = constant_sheaf(cx);
    for (std::size_t c = 0; c < cx->size(); ++c)
        for (const auto& xi : {qv({1, 0}), qv({-1, 2}), qv({1, 1})})
            CHECK(all_zero(morse_group(k, c, xi)));
    CHECK_THROWS_AS(morse_group(k, 0, qv({0, 0})), std::invalid_argument);

    // closed arc [0, 1/2] on the circle looks like [0, infinity) at 0
    auto c1 = TorusCellComplex::build(1, {});
    std::vector<bool> arc(c1->size(), false);
    for (std::size_t c = 0; c < c1->size(); ++c) {
        const auto& p = c1->cell(c).point;
        arc[c] = p[0] <= make_q(1, 2);
    }
    auto f = indicator_sheaf(c1, arc);
    auto o = origin(*c1);
    auto gamma = NncPolyhedron(1, {ge(qv({1}), Q(0))});
    auto conormal = conormal_cone(gamma, qv({0}));
    for (long s : {1, -1}) {
        bool nonzero = !all_zero(morse_group(f, o, qv({s})));
        CHECK(nonzero == conormal.contains(qv({s})));
    }
    CHECK(!all_zero(morse_group(f, o, qv({1}))));
    CHECK(all_zero(morse_group(f, o, qv({-1}))));
    // the open arc has the opposite direction
    std::vector<bool> open_arc(c1->size(), false);
    for (std::size_t c = 0; c < c1->size(); ++c) {
        const auto& p = c1->cell(c).point;
        open_arc[c] = sgn(p[0]) > 0 && p[0] < make_q(1, 2);
    }
    auto g = indicator_sheaf(c1, open_arc);
    CHECK(all_zero(morse_group(g, o, qv({1}))));
    CHECK(!all_zero(morse_group(g, o, qv({-1}))));
}

TEST_CASE("Morse directions of a closed square corner are its conormal cone")
{
    auto cx = TorusCellComplex::build(2, {});
    std::vector<bool> sq(cx->size(), false);
    for (std::size_t c = 0; c < cx->size(); ++c) {
        const auto& p = cx->cell(c).point;
        sq[c] = p[0] <= make_q(1, 2) && p[1] <= make_q(1, 2);
    }
    auto f = indicator_sheaf(cx, sq);
    auto o = origin(*cx);
    auto gamma = NncPolyhedron(2, {ge(qv({1, 0}), Q(0)), ge(qv({0, 1}), Q(0))});
    auto conormal = conormal_cone(gamma, qv({0, 0}));
    Fan dummy = fan_projective_space(2);
    auto xis = test_covectors(*cx, o, dummy);
    CHECK(xis.size() >= 8);
    for (const auto& xi : xis) {
        bool nonzero = !all_zero(morse_group(f, o, xi));
        CHECK(nonzero == conormal.contains(xi));
    }
}

TEST_CASE("microsupport scan against fan skeleta")
{
    auto p2 = fan_projective_space(2);
    auto cx = TorusCellComplex::build(2, {periodic_family(qv({1, 1}), Q(0))});
    CHECK(ss_contained_in_skeleton(constant_sheaf(cx), p2).ok);
    auto sky = skyscraper(cx, origin(*cx));
    auto rep = ss_contained_in_skeleton(sky, p2);
    CHECK(rep.ok);
    CHECK(rep.tested > 0);
    auto half = cx->locate({make_q(1, 2), Q(0)});
    auto off = ss_contained_in_skeleton(skyscraper(cx, half), p2);
    CHECK_FALSE(off.ok);
    auto serial = ss_contained_in_skeleton_serial(skyscraper(cx, half), p2);
    CHECK(serial.violations.size() == off.violations.size());
    CHECK(serial.tested == off.tested);
}

TEST_CASE("a complex missing a skeleton stratum is reported as too coarse")
{
    // the carrier of -e2 has the ray (2, -1), whose integer level lines cut the edges at height 1/2
    Fan f{2, {{Int(2), Int(-1)}, {Int(-1), Int(-1)}, {Int(0), Int(1)}}, {{0, 1}, {1, 2}, {2, 0}}};
    auto cx = TorusCellComplex::build(2, {});
    std::vector<bool> strip(cx->size(), false);
    for (std::size_t c = 0; c < cx->size(); ++c) {
        const Q& y = cx->cell(c).point[1];
        strip[c] = y >= make_q(1, 2) || sgn(y) == 0;
    }
    CHECK_THROWS_AS(ss_contained_in_skeleton(indicator_sheaf(cx, strip), f), ComplexTooCoarse);
}

TEST_CASE("local model sides agree with an elimination-based oracle")
{
    // sides of xi met by the open tangent cone of each star cell, decided by FM elimination
    auto cx = TorusCellComplex::build(2, {periodic_family(qv({1, 1}), Q(0)), periodic_family(qv({1, -2}), Q(0))});
    const std::size_t n = 2;
    for (std::size_t c : cx->cells_of_dim(0)) {
        const QVec& x = cx->cell(c).point;
        for (const auto& xi : {qv({1, 0}), qv({1, 1}), qv({-2, 1}), qv({0, -1}), qv({1, -2})}) {
            std::vector<std::pair<std::size_t, int>> want;
            std::vector<std::size_t> star{c};
            for (auto b : cx->poset()->above(c))
                star.push_back(b);
            for (auto c2 : star) {
                const Cell& cell = cx->cell(c2);
                QVec s(n);
                if (c2 != c)
                    for (std::size_t i = 0; i < n; ++i)
                        s[i] = Q(cx->relation(c, c2).shift[i]);
                std::vector<LinearEquation> eqs;
                std::vector<Constraint> strict;
                for (const auto& e : cell.eqs)
                    eqs.push_back({e.normal, Q(0)});
                for (const auto& k : cell.strict)
                    if (dot(k.normal, x) == k.offset - dot(k.normal, s))
                        strict.push_back({k.normal, Q(0), true});
                for (int side : {0, 1, -1}) {
                    auto st = strict;
                    auto eq = eqs;
                    if (side == 0)
                        eq.push_back({xi, Q(0)});
                    else
                        st.push_back({side > 0 ? xi : QVec{-xi[0], -xi[1]}, Q(0), true});
                    if (fm_find_point(n, st, eq))
                        want.emplace_back(c2, side);
                }
            }
            auto lm = local_model(*cx, c, xi);
            std::vector<std::pair<std::size_t, int>> got;
            for (const auto& p : lm.pieces)
                got.emplace_back(p.cell, p.side);
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            CHECK(got == want);
        }
    }
}
