#include "doctest.h"

#include "nccc/skeleton.hpp"
#include "nccc/theta.hpp"

#include <random>

using namespace nccc;

namespace {

QVec qv(std::initializer_list<long> xs)
{
    QVec v;
    for (auto x : xs)
        v.push_back(Q(x));
    return v;
}

std::size_t find_cone(const Fan& f, std::vector<std::size_t> c)
{
    for (std::size_t k = 0; k < f.max_cones.size(); ++k)
        if (f.max_cones[k] == c)
            return k;
    FAIL("cone not found");
    return 0;
}

}  // namespace

TEST_CASE("skeleton membership")
{
    Fan p2 = fan_projective_space(2);
    auto zero = skeleton_member(p2, QVec{make_q(1, 3), make_q(2, 7)}, qv({0, 0}));
    CHECK(zero.member);
    CHECK(zero.witness->empty());

    auto m = skeleton_member(p2, qv({0, 0}), qv({-1, -1}));
    CHECK(m.member);
    CHECK(*m.witness == std::vector<std::size_t>{0, 1});

    auto nm = skeleton_member(p2, QVec{make_q(1, 2), Q(0)}, qv({-1, -1}));
    CHECK_FALSE(nm.member);
    // exhaustive scan over all seven cones agrees
    int hits = 0;
    for (const auto& c : p2.all_cones()) {
        bool xi_ok = p2.cone(c).contains(qv({1, 1}));
        if (xi_ok && in_perp_plus_lattice(p2, c, QVec{make_q(1, 2), Q(0)}))
            ++hits;
    }
    CHECK(hits == 0);
    CHECK(p2.all_cones().size() == 7);
}

TEST_CASE("skeleton membership is lattice invariant and refines under blow-up")
{
    Fan p2 = fan_projective_space(2);
    Fan bl = star_subdivide(p2, find_cone(p2, {0, 1}));
    CHECK(skeleton_refines(p2, bl));
    CHECK(skeleton_refines(p2, p2));
    CHECK_THROWS_AS(skeleton_refines(bl, p2), std::invalid_argument);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    for (int t = 0; t < 300; ++t) {
        QVec x = {make_q(num(rng), den(rng)), make_q(num(rng), den(rng))};
        QVec xi = {Q(num(rng)), Q(num(rng))};
        if (t % 3 == 0)
            x = {Q(num(rng)), make_q(num(rng), 2)};
        auto a = skeleton_member(p2, x, xi);
        QVec shifted = {x[0] + 3, x[1] - 2};
        CHECK(skeleton_member(p2, shifted, xi).member == a.member);
        if (a.member)
            CHECK(skeleton_member(bl, x, xi).member);
    }
}

TEST_CASE("r_tau strata of the quadrant")
{
    Cone quad(2, Side::N, {{Int(1), Int(0)}, {Int(0), Int(1)}});
    auto strata = r_tau_strata(quad);
    CHECK(strata.size() == 3);
    for (const auto& s : strata) {
        if (s.tau.generators() == std::vector<IntVec>{{Int(1), Int(0)}}) {
            // x1 = 0 and x2 != 0, checked on a sample grid
            for (long a = -2; a <= 2; ++a)
                for (long b = -2; b <= 2; ++b)
                    CHECK(s.region.contains(qv({a, b})) == (a == 0 && b != 0));
        }
        if (s.tau.dimension() == 2) {
            CHECK(s.region.contains(qv({0, 0})));
            CHECK_FALSE(s.region.contains(qv({1, 0})));
        }
    }
    CHECK_THROWS_AS(r_tau_strata(Cone(2, Side::N, {{Int(1), Int(0)}})), std::invalid_argument);
}

TEST_CASE("theta hom bases and composition")
{
    Fan p2 = fan_projective_space(2);
    LatticeBox box = {{0, 2}, {-2, 2}};
    auto b = hom_basis(p2, {0, 1}, {0}, box);
    CHECK(b.size() == 15);
    CHECK(hom_basis(p2, {0}, {1}, box).empty());
    CHECK(hom_basis(p2, {0, 1}, {}, box).size() == 15);
    CHECK(hom_basis(p2, {}, {}, {{-1, 1}, {-1, 1}}).size() == 9);

    // identity character and monoid closure
    for (const auto& c : p2.all_cones()) {
        auto basis = hom_basis(p2, c, c, {{-2, 2}, {-2, 2}});
        CHECK(std::find(basis.begin(), basis.end(), IntVec{Int(0), Int(0)}) != basis.end());
        for (const auto& u : basis)
            for (const auto& v : basis) {
                IntVec w = {u[0] + v[0], u[1] + v[1]};
                if (abs(w[0]) <= 2 && abs(w[1]) <= 2)
                    CHECK(std::find(basis.begin(), basis.end(), w) != basis.end());
            }
    }

    ThetaHom f{{0, 1}, {0}, {{{Int(1), Int(-1)}, Int(2)}}};
    ThetaHom g{{0}, {}, {{{Int(-1), Int(3)}, Int(1)}, {{Int(0), Int(0)}, Int(-1)}}};
    ThetaHom h{{}, {}, {{{Int(2), Int(2)}, Int(1)}}};
    auto gf = compose(p2, g, f);
    CHECK(gf.source == std::vector<std::size_t>{0, 1});
    CHECK(gf.terms.size() == 2);
    CHECK(compose(p2, h, gf) == compose(p2, compose(p2, h, g), f));
    CHECK_THROWS_AS(compose(p2, f, g), std::invalid_argument);
    ThetaHom bad{{0, 1}, {0}, {{{Int(-1), Int(0)}, Int(1)}}};
    CHECK_THROWS_AS(check_theta_hom(p2, bad), std::invalid_argument);
}
