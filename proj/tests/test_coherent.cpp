#include "doctest.h"

#include "nccc/coherent.hpp"

#include <random>

using namespace nccc;

namespace {

long binom(long n, long k)
{
    if (k < 0 || n < k)
        return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// h^i(P^m, O(d)) from the closed formula.
GradedDims pm_formula(std::size_t m, long d)
{
    GradedDims out(m + 1, 0);
    out[0] = static_cast<std::size_t>(binom(d + static_cast<long>(m), static_cast<long>(m)));
    out[m] = static_cast<std::size_t>(binom(-d - 1, static_cast<long>(m)));
    if (m == 0)
        out[0] = 1;
    return out;
}

ToricDivisor negate_plus_canonical(const Fan& f, const ToricDivisor& d)
{
    ToricDivisor out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        out[i] = -d[i] - 1;
    return out;
}

}  // namespace

TEST_CASE("projective space line bundles match the closed formula")
{
    for (std::size_t m : {1u, 2u, 3u})
        for (long d = -6; d <= 4; ++d) {
            auto got = projective_space_cohomology(m, d);
            auto want = pad_dims(pm_formula(m, d), m + 1);
            CHECK_MESSAGE(got == want, "m=" << m << " d=" << d);
        }
    CHECK(projective_space_cohomology(2, -3) == GradedDims{0, 0, 1});
    CHECK(projective_space_cohomology(2, 0) == GradedDims{1, 0, 0});
}

TEST_CASE("P1xP1 bidegree cohomology")
{
    Fan f = fan_p1xp1();
    auto find = [&](std::vector<long> r) { return f.ray_index(IntVec(r.begin(), r.end())); };
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b) {
            ToricDivisor d(4, 0);
            d[find({1, 0})] = a;
            d[find({0, 1})] = b;
            auto h = line_bundle_cohomology(f, d);
            CHECK(h[0] == static_cast<std::size_t>((a + 1) * (b + 1)));
            CHECK(h[1] == 0);
            CHECK(h[2] == 0);
        }
    ToricDivisor d(4, 0);
    d[find({1, 0})] = -2;
    d[find({0, 1})] = 1;
    CHECK(line_bundle_cohomology(f, d) == GradedDims{0, 2, 0});
}

TEST_CASE("Serre duality on P2 and a blow-up")
{
    std::vector<Fan> fans{fan_projective_space(2), star_subdivide(fan_projective_space(2), 0), fan_hirzebruch(2)};
    for (const Fan& f : fans) {
        std::vector<long> range{-3, -1, 0, 2, 3};
        std::mt19937 rng(7);
        for (int trial = 0; trial < 25; ++trial) {
            ToricDivisor d(f.rays.size());
            for (auto& x : d)
                x = range[rng() % range.size()];
            auto h = line_bundle_cohomology(f, d);
            auto dual = line_bundle_cohomology(f, negate_plus_canonical(f, d));
            CHECK(h[0] == dual[2]);
            CHECK(h[1] == dual[1]);
            CHECK(h[2] == dual[0]);
        }
    }
}

TEST_CASE("serial and parallel line bundle cohomology agree")
{
    Fan f = star_subdivide(fan_projective_space(3), 0);
    for (long a : {-3, 0, 2}) {
        ToricDivisor d(f.rays.size(), 0);
        d[0] = a;
        d.back() = 1;
        CHECK(line_bundle_cohomology(f, d) == line_bundle_cohomology_serial(f, d));
    }
}

TEST_CASE("Euler characteristic is additive along the exceptional divisor")
{
    // chi(O(kE)) - chi(O((k-1)E)) = chi(P^{n-1}, O(-k))
    for (std::size_t n : {2u, 3u}) {
        Fan f = star_subdivide(fan_projective_space(n), 0);
        std::size_t e = f.rays.size() - 1;
        for (long k = -2; k <= 3; ++k) {
            ToricDivisor a(f.rays.size(), 0), b(f.rays.size(), 0);
            a[e] = k;
            b[e] = k - 1;
            long lhs = euler_characteristic(line_bundle_cohomology(f, a)) - euler_characteristic(line_bundle_cohomology(f, b));
            CHECK(lhs == euler_characteristic(pm_formula(n - 1, -k)));
        }
    }
    Fan f = fan_projective_space(2);
    CHECK(euler_pairing(f, ToricDivisor{0, 0, 0}, ToricDivisor{1, 0, 0}) == 3);
    CHECK(euler_pairing(f, ToricDivisor{1, 0, 0}, ToricDivisor{0, 0, 0}) == 0);
}

TEST_CASE("ext between exceptional line bundles restricted to E")
{
    CHECK(ext_orlov(2, 1, 1) == GradedDims{1, 0, 0});
    CHECK(ext_orlov(3, 1, 1) == GradedDims{1, 0, 0, 0});
    CHECK(ext_orlov(3, 2, 2) == GradedDims{1, 0, 0, 0});
    CHECK(ext_orlov(3, 1, 2) == GradedDims{0, 0, 0, 0});
    CHECK(ext_orlov(3, 2, 1) == GradedDims{3, 1, 0, 0});
    // Ext(O_E(lE), O_E(kE)) for k > l vanishes: semiorthogonality in every dimension
    for (std::size_t n = 2; n <= 4; ++n)
        for (int k = 1; k < static_cast<int>(n); ++k)
            for (int l = k + 1; l < static_cast<int>(n); ++l)
                CHECK(all_zero(ext_orlov(n, k, l)));
    CHECK_THROWS_AS(ext_orlov(3, 0, 1), std::out_of_range);
    CHECK_THROWS_AS(ext_orlov(3, 3, 1), std::out_of_range);
}

TEST_CASE("cohomology window rejects malformed divisors")
{
    CHECK_THROWS_AS(line_bundle_cohomology(fan_projective_space(2), ToricDivisor{1, 0}), std::invalid_argument);
    auto [lo, hi] = cohomology_window(fan_projective_space(2), ToricDivisor{2, 0, 0});
    CHECK(lo == IntVec{-3, -1});
    CHECK(hi == IntVec{1, 3});
}
