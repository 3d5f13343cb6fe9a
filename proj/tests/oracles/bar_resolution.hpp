#pragma once

// Independent Ext computation over a finite poset: the normalized cobar complex
// C^k = prod over strict chains x0 < ... < xk of Hom(F(x0), G(xk)).

#include "nccc/poset.hpp"

#include <functional>
#include <map>
#include <vector>

namespace oracle {

using namespace nccc;

inline std::vector<std::vector<std::vector<std::size_t>>> strict_chains(const Poset& p, std::size_t max_len)
{
    std::vector<std::vector<std::vector<std::size_t>>> by_len(1);
    for (std::size_t x = 0; x < p.size(); ++x)
        by_len[0].push_back({x});
    while (by_len.size() < max_len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& c : by_len.back())
            for (auto y : p.above(c.back())) {
                auto d = c;
                d.push_back(y);
                next.push_back(std::move(d));
            }
        if (next.empty())
            break;
        by_len.push_back(std::move(next));
    }
    return by_len;
}

inline GradedDims bar_ext(const Representation& F, const Representation& G)
{
    const Poset& p = *F.poset;
    auto chains = strict_chains(p, p.size() + 1);
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(chains.size());
    std::vector<std::size_t> dims(chains.size(), 0);
    std::vector<std::vector<std::size_t>> offs(chains.size());
    for (std::size_t k = 0; k < chains.size(); ++k)
        for (const auto& c : chains[k]) {
            index[k][c] = offs[k].size();
            offs[k].push_back(dims[k]);
            dims[k] += F.dims[c.front()] * G.dims[c.back()];
        }
    // Hom(F(a), G(b)) flattened row-major: entry (r, s) -> r * dimF + s
    std::vector<SparseMatrix> ds;
    for (std::size_t k = 0; k + 1 < chains.size(); ++k) {
        SparseMatrix d(dims[k + 1], dims[k]);
        for (std::size_t ci = 0; ci < chains[k + 1].size(); ++ci) {
            const auto& c = chains[k + 1][ci];
            std::size_t a = c.front(), b = c.back();
            std::size_t fa = F.dims[a], gb = G.dims[b];
            std::size_t row0 = offs[k + 1][ci];
            auto add_face = [&](std::size_t i, int sign) {
                std::vector<std::size_t> face = c;
                face.erase(face.begin() + static_cast<long>(i));
                std::size_t col0 = offs[k][index[k].at(face)];
                std::size_t a2 = face.front(), b2 = face.back();
                // phi in Hom(F(a2), G(b2)); pre/post compose to Hom(F(a), G(b))
                QMatrix pre = F.map(a, a2);   // F(a) -> F(a2)
                QMatrix post = G.map(b2, b);  // G(b2) -> G(b)
                for (std::size_t r = 0; r < gb; ++r)
                    for (std::size_t s = 0; s < fa; ++s)
                        for (std::size_t r2 = 0; r2 < G.dims[b2]; ++r2)
                            for (std::size_t s2 = 0; s2 < F.dims[a2]; ++s2) {
                                Q v = post(r, r2) * pre(s2, s);
                                if (sgn(v) != 0)
                                    d.add(row0 + r * fa + s, col0 + r2 * F.dims[a2] + s2, sign * v);
                            }
            };
            const std::size_t m = c.size();  // k + 2 elements
            for (std::size_t i = 0; i < m; ++i)
                add_face(i, i % 2 == 0 ? 1 : -1);
        }
        ds.push_back(std::move(d));
    }
    return ChainComplexQ(dims, std::move(ds)).cohomology();
}

}  // namespace oracle
