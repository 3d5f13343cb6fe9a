#include "doctest.h"

#include "nccc/regions.hpp"
#include "oracles/bar_resolution.hpp"

using namespace nccc;

namespace {

QVec qv(std::initializer_list<Q> xs) { return QVec(xs); }

}  // namespace

TEST_CASE("region Z and its dilates")
{
    auto ctx = standard_context("P2");
    CHECK(ctx.basis == std::vector<IntVec>{{Int(1), Int(0)}, {Int(0), Int(1)}});
    auto z = region_Z(ctx);
    CHECK(z.contains(qv({make_q(-1, 2), make_q(-1, 2)})));
    CHECK_FALSE(z.contains(qv({Q(0), Q(0)})));
    CHECK_FALSE(z.contains(qv({Q(-1), Q(0)})));
    CHECK_FALSE(z.contains(qv({Q(0), Q(-1)})));
    CHECK(z.contains(qv({make_q(-1, 3), make_q(-2, 3)})));
    std::size_t strict = 0;
    for (const auto& c : z.constraints())
        strict += c.strict;
    CHECK(strict == 2);
    CHECK(z.constraints().size() == 3);

    auto c3 = standard_context("P3");
    auto z2 = region_Zk(c3, 2);
    CHECK(z2.contains(qv({make_q(-3, 2), make_q(-1, 4), make_q(-1, 4)})));
    CHECK_FALSE(z2.contains(qv({make_q(-3, 2), make_q(-1, 2), make_q(-1, 2)})));
    // Z_k avoids the lattice and sits in (-k, 0)^n
    for (int k = 1; k <= 2; ++k) {
        auto zk = region_Zk(c3, k);
        for (std::size_t i = 0; i < 3; ++i) {
            QVec e(3);
            e[i] = 1;
            auto r = zk.range_of(e);
            CHECK(*r.lower >= Q(-k));
            CHECK(*r.upper <= Q(0));
            CHECK(r.upper_strict);
        }
        for (long a = -k; a <= 0; ++a)
            for (long b = -k; b <= 0; ++b)
                for (long c = -k; c <= 0; ++c)
                    CHECK_FALSE(zk.contains(qv({Q(a), Q(b), Q(c)})));
    }
}

TEST_CASE("F, hat Z, tilde Z and U in the plane")
{
    auto ctx = standard_context("P2");
    auto f = region_F(ctx);
    CHECK(f.contains(qv({Q(-1), make_q(-1, 2)})));
    CHECK_FALSE(f.contains(qv({Q(-1), Q(-1)})));
    CHECK_FALSE(f.contains(qv({Q(0), make_q(-1, 2)})));
    Region z1(region_Zk(ctx, 1));
    CHECK(symmetric_difference_empty(hat_Zk(ctx, 1), z1));
    CHECK(symmetric_difference_empty(tilde_Zk(ctx, 1), z1));
    CHECK(hat_Zk(ctx, 0).is_empty());

    auto cx = context_complex(ctx);
    auto u1 = image_Uk(*cx, ctx, 1);
    auto u2 = image_Uk(*cx, ctx, 2);
    std::size_t n1 = 0, n2 = 0;
    for (std::size_t c = 0; c < cx->size(); ++c) {
        const auto& p = cx->cell(c).point;
        bool interior = sgn(p[0]) != 0 && sgn(p[1]) != 0;
        CHECK(u1[c] == interior);
        // lift into (-1, 0)^2: a = p - 1
        bool below = interior && (p[0] - 1) + (p[1] - 1) < -1;
        CHECK(u2[c] == below);
        n1 += u1[c];
        n2 += u2[c];
    }
    CHECK(n2 < n1);
    auto k = constant_sheaf(cx);
    CHECK(compact_cohomology(k, u1) == GradedDims{0, 0, 1});
    CHECK(compact_cohomology(k, u2) == GradedDims{0, 0, 1});
    CHECK_THROWS_AS(tilde_Zk(ctx, 3), std::out_of_range);
}

TEST_CASE("tilde Z_k partition hat Z_{n-1} in dimension three")
{
    auto ctx = standard_context("P3");
    auto t1 = tilde_Zk(ctx, 1), t2 = tilde_Zk(ctx, 2);
    CHECK(t1.intersect(t2).is_empty());
    CHECK(symmetric_difference_empty(t1.unite(t2), hat_Zk(ctx, 2)));
    CHECK(hat_Zk(ctx, 2).contains(qv({Q(-1), make_q(-1, 2), make_q(-1, 4)})));
    auto cx = context_complex(ctx);
    auto u2 = image_Uk(*cx, ctx, 2);
    auto u3 = image_Uk(*cx, ctx, 3);
    for (std::size_t c = 0; c < cx->size(); ++c)
        if (u3[c])
            CHECK(u2[c]);
}

TEST_CASE("box partition of Z_k minus hat Z_k")
{
    auto p2 = standard_context("P2");
    CHECK(verify_box_partition(p2, 1));
    CHECK(box_partition(p2, 1).empty());
    auto p3 = standard_context("P3");
    CHECK(verify_box_partition(p3, 1));
    CHECK(verify_box_partition(p3, 2));
    CHECK(box_partition(p3, 2).size() == 3);
}

TEST_CASE("Cech system of the exceptional ray")
{
    for (const char* name : {"P2", "P1xP1", "P3"}) {
        CAPTURE(name);
        auto ctx = standard_context(name);
        auto cs = build_cech_system(ctx);
        CHECK(cs.choice_independent);
        CHECK(cs.covers);
        const std::size_t n = ctx.dim();
        // Z_{rho_E} is the slab -1 <= sum a < 0
        QVec one(n, Q(1)), neg(n, Q(-1));
        Region slab(NncPolyhedron(n, {{one, Q(-1), false}, {neg, Q(0), true}}));
        CHECK(symmetric_difference_empty(cs.cones.front().region, slab));
        std::size_t maximal = 0;
        for (const auto& cc : cs.cones)
            maximal += cc.rays.size() == n;
        CHECK(maximal == n);
        long lo = -static_cast<long>(n) - 1;
        auto res = check_cech_cells(ctx, cs, lo, 1);
        CHECK(res.ok);
        CHECK(res.cells > 10);
        if (n == 2) {
            auto serial = check_cech_cells_serial(ctx, cs, lo, 1);
            CHECK(serial.cells == res.cells);
            CHECK(serial.ok);
        }
    }
    auto ctx = standard_context("P2");
    CHECK_THROWS_AS(check_cech_cells(ctx, build_cech_system(ctx), -1, 1), std::invalid_argument);
}

TEST_CASE("shells of the dilates of Z")
{
    auto ctx = standard_context("P3");
    CHECK(symmetric_difference_empty(Region(region_shell(ctx, 1)), Region(region_Z(ctx))));
    for (int k = 2; k <= 3; ++k) {
        Region shell(region_shell(ctx, k));
        Region prev(region_Zk(ctx, k - 1));
        CHECK(shell.intersect(prev).is_empty());
        CHECK(symmetric_difference_empty(shell.unite(prev), Region(region_Zk(ctx, k))));
    }
    CHECK_THROWS_AS(region_shell(ctx, 0), std::out_of_range);
}

TEST_CASE("literal dilate objects fail exceptionality beyond k = 1")
{
    // C_{Z_2} maps onto C_{Z_1} and Z_1 sits in Z_2 + e_i as an open subset, so
    // Hom(C_{Z_2}, C_{Z_2 + e_i}) is nonzero for each i and the pushforward picks up 3 extra maps.
    auto ctx = standard_context("P3");
    auto cx = context_complex(ctx);
    auto z1 = literal_object(cx, ctx, 1), z2 = literal_object(cx, ctx, 2);
    auto e22 = ext_groups(z2, z2);
    CHECK(e22 == GradedDims{4, 0, 0, 0});
    CHECK(pad_dims(oracle::bar_ext(z2.rep, z2.rep), 4) == e22);
    CHECK(ext_groups(z2, z1) == GradedDims{1, 0, 0, 0});
    CHECK(ext_groups(z1, z2) == GradedDims{3, 0, 0, 0});
}

TEST_CASE("shell objects reproduce the exceptional collection on E")
{
    auto ctx = standard_context("P3");
    auto cx = context_complex(ctx);
    auto w1 = shell_object(cx, ctx, 1), w2 = shell_object(cx, ctx, 2);
    for (auto [a, b, want] : {std::tuple{&w1, &w1, GradedDims{1, 0, 0, 0}}, std::tuple{&w2, &w2, GradedDims{1, 0, 0, 0}},
                              std::tuple{&w1, &w2, GradedDims{3, 1, 0, 0}}, std::tuple{&w2, &w1, GradedDims{0, 0, 0, 0}}}) {
        auto got = ext_groups(*a, *b);
        CHECK(got == want);
        CHECK(pad_dims(oracle::bar_ext(a->rep, b->rep), 4) == got);
    }
    auto sky = skyscraper(cx, cx->locate(QVec(3, Q(0))));
    CHECK(all_zero(cohomology(tensor(sky, w2))));
    CHECK(all_zero(cohomology(w2)));
}
