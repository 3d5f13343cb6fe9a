#include "doctest.h"

#include "nccc/fan.hpp"

#include <functional>
#include <map>
#include <set>

using namespace nccc;

namespace {

IntVec iv(std::initializer_list<long> xs)
{
    IntVec v;
    for (auto x : xs)
        v.push_back(Int(x));
    return v;
}

Fan surface(std::initializer_list<std::initializer_list<long>> rays)
{
    Fan f;
    f.dim = 2;
    for (auto r : rays)
        f.rays.push_back(iv(r));
    auto order = cyclic_ray_order(f);
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::vector<std::size_t> c = {order[i], order[(i + 1) % order.size()]};
        std::sort(c.begin(), c.end());
        f.max_cones.push_back(c);
    }
    return f;
}

// Independent generator: coefficient sequences with bounded entries whose recurrence
// closes up after one turn.
std::set<std::vector<Int>> brute_surface_keys(std::size_t r, long bound)
{
    std::set<std::vector<Int>> keys;
    std::vector<Int> c(r);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long sum) {
        if (i == r) {
            if (sum != 3 * static_cast<long>(r) - 12)
                return;
            try {
                Fan f = surface_fan_from_coefficients(c);
                keys.insert(surface_key(f));
            } catch (const std::invalid_argument&) {
            }
            return;
        }
        for (long x = -bound; x <= bound; ++x) {
            c[i] = x;
            rec(i + 1, sum + x);
        }
    };
    rec(0, 0);
    return keys;
}

bool reaches_allowed_minimal(const Fan& f, int a_cap, std::map<std::vector<Int>, bool>& memo)
{
    auto key = surface_key(f);
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    auto cands = blow_down_candidates(f);
    bool ok = false;
    if (cands.empty()) {
        auto cls = classify_minimal(f);
        ok = cls.tag != MinimalTag::Hirzebruch || cls.a <= a_cap;
    } else {
        for (const auto& r : cands)
            if (reaches_allowed_minimal(blow_down(f, r), a_cap, memo)) {
                ok = true;
                break;
            }
    }
    memo[key] = ok;
    return ok;
}

}  // namespace

TEST_CASE("validate_fan")
{
    Fan p2 = fan_projective_space(2);
    auto rep = validate_fan(p2);
    CHECK(rep.smooth);
    CHECK(rep.complete);

    Fan missing = p2;
    missing.max_cones.pop_back();
    CHECK_FALSE(validate_fan(missing).complete);

    Fan bad = surface({{1, 0}, {1, 2}, {-1, -1}});
    auto r2 = validate_fan(bad);
    CHECK_FALSE(r2.smooth);

    Fan dup = p2;
    dup.rays[1] = dup.rays[0];
    CHECK_THROWS_AS(validate_fan(dup), std::invalid_argument);
    Fan empty = p2;
    empty.max_cones.clear();
    CHECK_THROWS_AS(validate_fan(empty), std::invalid_argument);
}

TEST_CASE("star subdivision")
{
    Fan p2 = fan_projective_space(2);
    std::size_t k = 0;
    while (p2.max_cones[k] != std::vector<std::size_t>{0, 1})
        ++k;
    Fan bl = star_subdivide(p2, k);
    std::set<IntVec> rays(bl.rays.begin(), bl.rays.end());
    CHECK(rays == std::set<IntVec>{iv({1, 0}), iv({1, 1}), iv({0, 1}), iv({-1, -1})});
    CHECK(validate_fan(bl).smooth);
    CHECK(validate_fan(bl).complete);

    Fan p3 = fan_projective_space(3);
    std::size_t k3 = 0;
    while (p3.max_cones[k3] != std::vector<std::size_t>{0, 1, 2})
        ++k3;
    Fan bl3 = star_subdivide(p3, k3);
    CHECK(bl3.rays.back() == iv({1, 1, 1}));
    CHECK(bl3.max_cones.size() == 6);
    auto rep = validate_fan(bl3);
    CHECK(rep.smooth);
    CHECK(rep.complete);
    CHECK(is_refinement(p3, bl3));
    CHECK_FALSE(is_refinement(bl3, p3));

    Fan q = star_subdivide(fan_p1xp1(), 0);
    CHECK(q.rays.size() == 5);
    CHECK(std::find(q.rays.begin(), q.rays.end(), iv({1, 1})) != q.rays.end());
}

TEST_CASE("blow-down candidates and classification")
{
    Fan bl = surface({{1, 0}, {1, 1}, {0, 1}, {-1, -1}});
    CHECK(blow_down_candidates(bl) == std::vector<IntVec>{iv({1, 1})});
    CHECK(blow_down_candidates(fan_p1xp1()).empty());
    CHECK(blow_down_candidates(fan_projective_space(2)).empty());

    CHECK(classify_minimal(fan_projective_space(2)) == MinimalModelClass{MinimalTag::P2, 0});
    CHECK(classify_minimal(fan_p1xp1()) == MinimalModelClass{MinimalTag::P1xP1, 0});
    Fan f2 = surface({{1, 0}, {0, 1}, {-1, 2}, {0, -1}});
    CHECK(classify_minimal(f2) == MinimalModelClass{MinimalTag::Hirzebruch, 2});
    // neighbour sums at (0,1) and (0,-1) are the only nonzero coefficients
    auto c = neighbor_coefficients(f2);
    std::multiset<Int> cs(c.begin(), c.end());
    CHECK(cs == std::multiset<Int>{Int(-2), Int(0), Int(0), Int(2)});
    CHECK_THROWS_AS(classify_minimal(bl), std::invalid_argument);
}

TEST_CASE("mmp reduction and replay")
{
    Fan bl = surface({{1, 0}, {1, 1}, {0, 1}, {-1, -1}});
    auto r = mmp_reduce(bl);
    CHECK(r.trace.size() == 1);
    CHECK(r.result.tag == MinimalTag::P2);
    CHECK(canonical_fan(mmp_replay(r)) == canonical_fan(bl));

    Fan hex = surface({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}});
    auto rh = mmp_reduce(hex);
    CHECK(rh.trace.size() == 3);
    CHECK(canonical_fan(mmp_replay(rh)) == canonical_fan(hex));

    // every blow-down order terminates in a minimal model
    std::function<void(const Fan&, int)> explore = [&](const Fan& f, int depth) {
        auto cands = blow_down_candidates(f);
        if (cands.empty()) {
            CHECK_NOTHROW(classify_minimal(f));
            CHECK(depth <= 4);
            return;
        }
        for (const auto& v : cands)
            explore(blow_down(f, v), depth + 1);
    };
    explore(hex, 0);

    CHECK(mmp_reduce(fan_p1xp1()).trace.empty());
}

TEST_CASE("blow up then blow down is the identity")
{
    for (const auto& f : enumerate_surface_fans(6)) {
        for (std::size_t k = 0; k < f.max_cones.size(); ++k) {
            Fan g = star_subdivide(f, k);
            Fan h = blow_down(g, g.rays.back());
            CHECK(canonical_fan(h) == canonical_fan(f));
            CHECK(g.rays.size() == g.max_cones.size());
        }
    }
}

TEST_CASE("zonotopal and cragged predicates")
{
    CHECK(is_zonotopal_unimodular(fan_p1xp1()));
    CHECK_FALSE(is_zonotopal_unimodular(fan_projective_space(2)));
    CHECK(is_cragged(fan_p1xp1()));
    Fan hex = surface({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}});
    CHECK(is_zonotopal_unimodular(hex));
}

TEST_CASE("surface fan enumeration")
{
    auto three = enumerate_surface_fans(3);
    REQUIRE(three.size() == 1);
    CHECK(three[0].rays.size() == 3);

    auto four = enumerate_surface_fans(4);
    std::set<std::vector<Int>> keys;
    for (const auto& f : four)
        keys.insert(surface_key(f));
    std::set<std::vector<Int>> expected = {surface_key(fan_projective_space(2)), surface_key(fan_p1xp1()),
                                           surface_key(fan_hirzebruch(1))};
    for (int a = 2; a <= 4; ++a)
        expected.insert(surface_key(fan_hirzebruch(a)));
    CHECK(keys == expected);

    for (std::size_t r = 3; r <= 6; ++r) {
        std::set<std::vector<Int>> gen;
        for (const auto& f : enumerate_surface_fans(r))
            if (f.rays.size() == r)
                gen.insert(surface_key(f));
        std::map<std::vector<Int>, bool> memo;
        std::set<std::vector<Int>> brute;
        for (const auto& k : brute_surface_keys(r, 7))
            if (reaches_allowed_minimal(surface_fan_from_coefficients(k), 4, memo))
                brute.insert(k);
        CHECK_MESSAGE(gen == brute, "ray count ", r);
    }
    for (const auto& f : enumerate_surface_fans(6)) {
        auto rep = validate_fan(f);
        CHECK(rep.smooth);
        CHECK(rep.complete);
    }
}
