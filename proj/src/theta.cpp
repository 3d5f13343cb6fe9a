#include "nccc/theta.hpp"

#include <algorithm>
#include <stdexcept>

namespace nccc {

namespace {

bool is_face_subset(const std::vector<std::size_t>& big, const std::vector<std::size_t>& small)
{
    return std::all_of(small.begin(), small.end(),
                       [&](std::size_t i) { return std::find(big.begin(), big.end(), i) != big.end(); });
}

void check_cone(const Fan& f, const std::vector<std::size_t>& c)
{
    std::vector<std::size_t> s = c;
    std::sort(s.begin(), s.end());
    auto all = f.all_cones();
    if (std::find(all.begin(), all.end(), s) == all.end())
        throw std::invalid_argument("cone not in the fan");
}

}  // namespace

std::vector<IntVec> hom_basis(const Fan& f, const std::vector<std::size_t>& sigma,
                              const std::vector<std::size_t>& tau, const LatticeBox& box)
{
    check_cone(f, sigma);
    check_cone(f, tau);
    if (box.size() != f.dim)
        throw std::invalid_argument("hom_basis: box dimension mismatch");
    std::vector<IntVec> out;
    if (!is_face_subset(sigma, tau))
        return out;
    IntVec m(f.dim);
    for (std::size_t i = 0; i < f.dim; ++i)
        m[i] = box[i].first;
    if (std::any_of(box.begin(), box.end(), [](const auto& b) { return b.first > b.second; }))
        return out;
    while (true) {
        bool ok = std::all_of(tau.begin(), tau.end(), [&](std::size_t r) {
            Int s = 0;
            for (std::size_t i = 0; i < f.dim; ++i)
                s += m[i] * f.rays[r][i];
            return sgn(s) >= 0;
        });
        if (ok)
            out.push_back(m);
        std::size_t i = 0;
        while (i < f.dim && m[i] == box[i].second) {
            m[i] = box[i].first;
            ++i;
        }
        if (i == f.dim)
            break;
        m[i] += 1;
    }
    return out;
}

void check_theta_hom(const Fan& f, const ThetaHom& h)
{
    check_cone(f, h.source);
    check_cone(f, h.target);
    if (!is_face_subset(h.source, h.target))
        throw std::invalid_argument("theta hom: source does not contain target");
    for (const auto& [m, c] : h.terms) {
        for (auto r : h.target) {
            Int s = 0;
            for (std::size_t i = 0; i < f.dim; ++i)
                s += m[i] * f.rays[r][i];
            if (sgn(s) < 0)
                throw std::invalid_argument("theta hom: character outside the dual cone");
        }
    }
}

ThetaHom compose(const Fan& f, const ThetaHom& g, const ThetaHom& h)
{
    if (h.target != g.source)
        throw std::invalid_argument("compose: morphisms are not composable");
    check_theta_hom(f, g);
    check_theta_hom(f, h);
    ThetaHom out{h.source, g.target, {}};
    for (const auto& [a, ca] : g.terms)
        for (const auto& [b, cb] : h.terms) {
            IntVec m(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                m[i] = a[i] + b[i];
            out.terms[m] += ca * cb;
        }
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        if (sgn(it->second) == 0)
            it = out.terms.erase(it);
        else
            ++it;
    }
    check_theta_hom(f, out);
    return out;
}

}  // namespace nccc
