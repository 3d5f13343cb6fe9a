#include "nccc/poset.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nccc {

Poset::Poset(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& strict_relations)
    : n_(n), bits_(n * n, false), above_(n), below_(n), covers_below_(n), rel_index_(n)
{
    for (const auto& [a, b] : strict_relations) {
        if (a >= n || b >= n || a == b)
            throw std::invalid_argument("Poset: bad relation");
        if (bits_[a * n + b])
            continue;
        bits_[a * n + b] = true;
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (bits_[a * n + b]) {
                if (bits_[b * n + a])
                    throw std::invalid_argument("Poset: relation is not antisymmetric");
                above_[a].push_back(b);
                below_[b].push_back(a);
            }
    for (std::size_t a = 0; a < n; ++a)
        for (auto b : above_[a])
            for (auto c : above_[b])
                if (!bits_[a * n + c])
                    throw std::invalid_argument("Poset: relation is not transitive");
    for (std::size_t a = 0; a < n; ++a)
        for (auto b : above_[a]) {
            rel_index_[a].emplace_back(b, relations_.size());
            relations_.emplace_back(a, b);
        }
    for (std::size_t b = 0; b < n; ++b)
        for (auto a : below_[b]) {
            bool cover = true;
            for (auto c : above_[a])
                if (bits_[c * n + b]) {
                    cover = false;
                    break;
                }
            if (cover)
                covers_below_[b].push_back(a);
        }
    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return below_[a].size() < below_[b].size(); });
}

std::size_t Poset::relation_index(std::size_t a, std::size_t b) const
{
    const auto& v = rel_index_[a];
    auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(b, std::size_t{0}));
    if (it == v.end() || it->first != b)
        throw std::out_of_range("Poset::relation_index: not related");
    return it->second;
}

std::size_t Poset::longest_chain() const
{
    std::vector<std::size_t> len(n_, 1);
    std::size_t best = n_ ? 1 : 0;
    for (auto b : order_) {
        for (auto a : below_[b])
            len[b] = std::max(len[b], len[a] + 1);
        best = std::max(best, len[b]);
    }
    return best;
}

bool Poset::is_up_closed(const std::vector<bool>& s) const
{
    for (std::size_t a = 0; a < n_; ++a)
        if (s[a])
            for (auto b : above_[a])
                if (!s[b])
                    return false;
    return true;
}

bool Poset::is_down_closed(const std::vector<bool>& s) const
{
    for (std::size_t a = 0; a < n_; ++a)
        if (s[a])
            for (auto b : below_[a])
                if (!s[b])
                    return false;
    return true;
}

bool Poset::is_convex(const std::vector<bool>& s) const
{
    for (std::size_t a = 0; a < n_; ++a) {
        if (!s[a])
            continue;
        for (auto y : above_[a]) {
            if (s[y])
                continue;
            for (auto z : above_[y])
                if (s[z])
                    return false;
        }
    }
    return true;
}

Representation::Representation(PosetPtr p) : poset(std::move(p))
{
    dims.assign(poset->size(), 0);
    maps.assign(poset->relation_count(), QMatrix());
}

QMatrix Representation::map(std::size_t a, std::size_t b) const
{
    if (a == b)
        return QMatrix::identity(dims[a]);
    return maps[poset->relation_index(a, b)];
}

void Representation::set_map(std::size_t a, std::size_t b, QMatrix m)
{
    if (m.rows() != dims[b] || m.cols() != dims[a])
        throw std::invalid_argument("Representation::set_map: shape mismatch");
    maps[poset->relation_index(a, b)] = std::move(m);
}

bool Representation::is_functorial() const
{
    const Poset& p = *poset;
    for (std::size_t r = 0; r < p.relation_count(); ++r) {
        auto [a, b] = p.relations()[r];
        const QMatrix& m = maps[r];
        if (m.rows() != dims[b] || m.cols() != dims[a])
            return false;
        for (auto c : p.above(b))
            if (!(map(b, c) * m == map(a, c)))
                return false;
    }
    return true;
}

std::size_t Representation::total_dim() const
{
    std::size_t s = 0;
    for (auto d : dims)
        s += d;
    return s;
}

bool Representation::is_zero() const { return total_dim() == 0; }

Representation constant(PosetPtr p)
{
    return indicator(p, std::vector<bool>(p->size(), true));
}

Representation indicator(PosetPtr p, const std::vector<bool>& s)
{
    if (s.size() != p->size())
        throw std::invalid_argument("indicator: size mismatch");
    if (!p->is_convex(s))
        throw std::invalid_argument("indicator: set is not locally closed");
    Representation r(p);
    for (std::size_t a = 0; a < p->size(); ++a)
        r.dims[a] = s[a] ? 1 : 0;
    for (std::size_t i = 0; i < p->relation_count(); ++i) {
        auto [a, b] = p->relations()[i];
        QMatrix m(r.dims[b], r.dims[a]);
        if (s[a] && s[b])
            m(0, 0) = 1;
        r.maps[i] = std::move(m);
    }
    return r;
}

namespace {

using SparseVec = std::vector<std::pair<std::size_t, Q>>;  // sorted by index

// Column indices of the generators living at or below y, sorted.
std::vector<std::size_t> active_generators(const Poset& p, const std::vector<ProjectiveResolution::Generator>& gens,
                                           std::size_t y)
{
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < gens.size(); ++g)
        if (p.leq(gens[g].at, y))
            out.push_back(g);
    return out;
}

QVec densify(const SparseVec& v, const std::vector<std::size_t>& coords)
{
    QVec out(coords.size());
    for (const auto& [i, q] : v) {
        auto it = std::lower_bound(coords.begin(), coords.end(), i);
        if (it == coords.end() || *it != i)
            throw std::logic_error("resolution: vector outside its support");
        out[static_cast<std::size_t>(it - coords.begin())] = q;
    }
    return out;
}

SparseVec sparsify(const QVec& v, const std::vector<std::size_t>& coords)
{
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            out.emplace_back(coords[i], v[i]);
    return out;
}

// Indices of `candidates` independent modulo span(spanning).
std::vector<std::size_t> new_generators(const std::vector<QVec>& spanning, const std::vector<QVec>& candidates,
                                        std::size_t dim)
{
    if (candidates.empty())
        return {};
    return complete_basis(spanning, candidates, dim);
}

}  // namespace

ProjectiveResolution minimal_resolution(const Representation& F)
{
    const Poset& p = *F.poset;
    const std::size_t n = p.size();
    ProjectiveResolution R;

    // Stage 0: cover F itself.
    std::vector<ProjectiveResolution::Generator> gens0;
    for (auto x : p.linear_order()) {
        if (F.dims[x] == 0)
            continue;
        std::vector<QVec> image;
        for (auto y : p.covers_below(x)) {
            if (F.dims[y] == 0)
                continue;
            QMatrix m = F.map(y, x);
            for (std::size_t c = 0; c < m.cols(); ++c)
                image.push_back(m.col(c));
        }
        std::vector<QVec> basis;
        for (std::size_t i = 0; i < F.dims[x]; ++i) {
            QVec e(F.dims[x]);
            e[i] = 1;
            basis.push_back(e);
        }
        for (auto i : new_generators(image, basis, F.dims[x])) {
            gens0.push_back({x});
            R.images.push_back(basis[i]);
        }
    }
    R.generators.push_back(gens0);

    // kernel of P_0 -> F, per element, as sparse vectors over degree-0 generators
    std::vector<std::vector<SparseVec>> kernel(n);
    for (std::size_t y = 0; y < n; ++y) {
        auto act = active_generators(p, gens0, y);
        if (act.empty())
            continue;
        QMatrix m(F.dims[y], act.size());
        for (std::size_t j = 0; j < act.size(); ++j) {
            std::size_t g = act[j];
            QVec col = F.map(gens0[g].at, y) * R.images[g];
            for (std::size_t r = 0; r < F.dims[y]; ++r)
                m(r, j) = col[r];
        }
        for (const auto& v : nullspace(m))
            kernel[y].push_back(sparsify(v, act));
    }

    const std::size_t cap = p.longest_chain() + 1;
    while (true) {
        bool any = std::any_of(kernel.begin(), kernel.end(), [](const auto& k) { return !k.empty(); });
        if (!any)
            break;
        if (R.generators.size() > cap)
            throw std::logic_error("minimal_resolution: resolution longer than the longest chain");
        const auto& prev = R.generators.back();
        std::vector<ProjectiveResolution::Generator> gens;
        std::vector<std::vector<std::pair<std::size_t, Q>>> coeff;
        for (auto x : p.linear_order()) {
            if (kernel[x].empty())
                continue;
            auto coords = active_generators(p, prev, x);
            std::vector<QVec> image;
            for (auto y : p.covers_below(x))
                for (const auto& v : kernel[y])
                    image.push_back(densify(v, coords));
            std::vector<QVec> basis;
            for (const auto& v : kernel[x])
                basis.push_back(densify(v, coords));
            for (auto i : new_generators(image, basis, coords.size())) {
                gens.push_back({x});
                coeff.push_back(kernel[x][i]);
            }
        }
        // next kernel: P_new(y) -> P_prev(y)
        std::vector<std::vector<SparseVec>> next(n);
        for (std::size_t y = 0; y < n; ++y) {
            auto act = active_generators(p, gens, y);
            if (act.empty())
                continue;
            auto coords = active_generators(p, prev, y);
            QMatrix m(coords.size(), act.size());
            for (std::size_t j = 0; j < act.size(); ++j) {
                QVec col = densify(coeff[act[j]], coords);
                for (std::size_t r = 0; r < coords.size(); ++r)
                    m(r, j) = col[r];
            }
            for (const auto& v : nullspace(m))
                next[y].push_back(sparsify(v, act));
        }
        R.generators.push_back(std::move(gens));
        R.coeff.push_back(std::move(coeff));
        kernel = std::move(next);
    }
    return R;
}

ChainComplexQ hom_complex(const ProjectiveResolution& R, const Representation& G)
{
    const std::size_t len = R.generators.size();
    std::vector<std::vector<std::size_t>> offset(len);
    std::vector<std::size_t> dims(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        for (const auto& g : R.generators[i]) {
            offset[i].push_back(dims[i]);
            dims[i] += G.dims[g.at];
        }
    }
    std::vector<SparseMatrix> ds;
    for (std::size_t i = 0; i + 1 < len; ++i) {
        SparseMatrix d(dims[i + 1], dims[i]);
        for (std::size_t h = 0; h < R.generators[i + 1].size(); ++h) {
            std::size_t xh = R.generators[i + 1][h].at;
            for (const auto& [g, a] : R.coeff[i][h]) {
                std::size_t xg = R.generators[i][g].at;
                QMatrix block = G.map(xg, xh);
                for (std::size_t r = 0; r < block.rows(); ++r)
                    for (std::size_t c = 0; c < block.cols(); ++c)
                        if (sgn(block(r, c)) != 0)
                            d.add(offset[i + 1][h] + r, offset[i][g] + c, a * block(r, c));
            }
        }
        ds.push_back(std::move(d));
    }
    if (len == 0)
        return ChainComplexQ({0}, {});
    return ChainComplexQ(dims, std::move(ds));
}

GradedDims ext(const Representation& F, const Representation& G)
{
    if (F.poset != G.poset && (F.poset->size() != G.poset->size()))
        throw std::invalid_argument("ext: representations over different posets");
    auto R = minimal_resolution(F);
    return hom_complex(R, G).cohomology();
}

}  // namespace nccc
