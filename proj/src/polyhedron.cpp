#include "nccc/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nccc {

Int pairing(const LatticeVector& a, const LatticeVector& b)
{
    if (a.side == b.side)
        throw std::invalid_argument("pairing: both vectors on the same side");
    if (a.dim() != b.dim())
        throw std::invalid_argument("pairing: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += a.coords[i] * b.coords[i];
    return s;
}

LatticeVector primitive(const LatticeVector& v)
{
    return {primitive_integer(v.coords), v.side};
}

bool Constraint::satisfied_by(const QVec& x) const
{
    Q v = dot(normal, x);
    return strict ? v > offset : v >= offset;
}

Constraint Constraint::normalized() const
{
    bool zero = std::all_of(normal.begin(), normal.end(), [](const Q& q) { return sgn(q) == 0; });
    if (zero)
        return *this;
    IntVec prim = primitive_integer(normal);
    // the scale factor is prim[i] / normal[i] for any nonzero entry
    std::size_t i = 0;
    while (sgn(normal[i]) == 0)
        ++i;
    Q factor = Q(prim[i]) / normal[i];
    Constraint out;
    out.normal = to_qvec(prim);
    out.offset = offset * factor;
    out.strict = strict;
    return out;
}

Constraint Constraint::negated() const
{
    Constraint out;
    out.normal.resize(normal.size());
    for (std::size_t i = 0; i < normal.size(); ++i)
        out.normal[i] = -normal[i];
    out.offset = -offset;
    out.strict = !strict;
    return out;
}

bool constraint_less(const Constraint& a, const Constraint& b)
{
    if (a.normal != b.normal)
        return std::lexicographical_compare(a.normal.begin(), a.normal.end(), b.normal.begin(),
                                            b.normal.end());
    if (a.offset != b.offset)
        return a.offset < b.offset;
    return a.strict < b.strict;
}

namespace {

bool is_zero_vec(const QVec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Q& q) { return sgn(q) == 0; });
}

struct System {
    std::vector<Constraint> rows;
    bool infeasible = false;
};

// Keeps only the tightest constraint per normal direction; drops trivial rows.
void tidy(System& s)
{
    std::map<QVec, std::pair<Q, bool>> best;
    for (const auto& c : s.rows) {
        if (is_zero_vec(c.normal)) {
            bool ok = c.strict ? sgn(c.offset) < 0 : sgn(c.offset) <= 0;
            if (!ok) {
                s.infeasible = true;
                s.rows.clear();
                return;
            }
            continue;
        }
        Constraint n = c.normalized();
        auto it = best.find(n.normal);
        if (it == best.end()) {
            best.emplace(n.normal, std::make_pair(n.offset, n.strict));
        } else if (n.offset > it->second.first) {
            it->second = {n.offset, n.strict};
        } else if (n.offset == it->second.first && n.strict) {
            it->second.second = true;
        }
    }
    s.rows.clear();
    for (auto& [normal, bound] : best)
        s.rows.push_back({normal, bound.first, bound.second});
}

struct Substitution {
    std::size_t var;
    QVec coeffs;  // x_var = coeffs . x + constant, coeffs[var] = 0
    Q constant;
};

void substitute(Constraint& c, const Substitution& s)
{
    Q a = c.normal[s.var];
    if (sgn(a) == 0)
        return;
    c.normal[s.var] = 0;
    for (std::size_t i = 0; i < c.normal.size(); ++i)
        if (sgn(s.coeffs[i]) != 0)
            c.normal[i] += a * s.coeffs[i];
    c.offset -= a * s.constant;
}

void substitute(LinearEquation& e, const Substitution& s)
{
    Q a = e.normal[s.var];
    if (sgn(a) == 0)
        return;
    e.normal[s.var] = 0;
    for (std::size_t i = 0; i < e.normal.size(); ++i)
        if (sgn(s.coeffs[i]) != 0)
            e.normal[i] += a * s.coeffs[i];
    e.offset -= a * s.constant;
}

struct Elimination {
    bool infeasible = false;
    std::vector<Substitution> subs;
    std::vector<std::size_t> order;       // eliminated variables, in order
    std::vector<System> stages;           // stages[i] is the system before eliminating order[i]
    System final_system;
};

Elimination eliminate(std::size_t dim, std::vector<Constraint> ineqs, std::vector<LinearEquation> eqs,
                      const std::vector<bool>& keep)
{
    Elimination out;
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        LinearEquation eq = eqs[e];
        if (eq.normal.size() != dim)
            throw std::invalid_argument("fm: equation dimension mismatch");
        std::size_t j = dim;
        for (std::size_t i = 0; i < dim; ++i)
            if (sgn(eq.normal[i]) != 0 && !keep[i]) {
                j = i;
                break;
            }
        if (j == dim) {
            // only kept variables remain: keep it as two inequalities
            if (is_zero_vec(eq.normal)) {
                if (sgn(eq.offset) != 0) {
                    out.infeasible = true;
                    return out;
                }
                continue;
            }
            ineqs.push_back({eq.normal, eq.offset, false});
            Constraint neg{eq.normal, eq.offset, false};
            ineqs.push_back(neg.negated());
            ineqs.back().strict = false;
            continue;
        }
        Substitution s;
        s.var = j;
        s.coeffs.assign(dim, Q(0));
        for (std::size_t i = 0; i < dim; ++i)
            if (i != j)
                s.coeffs[i] = -eq.normal[i] / eq.normal[j];
        s.constant = eq.offset / eq.normal[j];
        for (std::size_t f = e + 1; f < eqs.size(); ++f)
            substitute(eqs[f], s);
        for (auto& c : ineqs)
            substitute(c, s);
        out.subs.push_back(std::move(s));
    }
    for (const auto& c : ineqs)
        if (c.normal.size() != dim)
            throw std::invalid_argument("fm: constraint dimension mismatch");

    std::vector<bool> gone(dim, false);
    for (const auto& s : out.subs)
        gone[s.var] = true;

    System sys{std::move(ineqs), false};
    tidy(sys);
    if (sys.infeasible) {
        out.infeasible = true;
        return out;
    }
    while (true) {
        // choose the variable with the fewest generated combinations
        std::size_t best = dim;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < dim; ++v) {
            if (gone[v] || keep[v])
                continue;
            std::size_t pos = 0, neg = 0, any = 0;
            for (const auto& c : sys.rows) {
                int sg = sgn(c.normal[v]);
                pos += sg > 0;
                neg += sg < 0;
                any += sg != 0;
            }
            if (any == 0) {
                gone[v] = true;
                continue;
            }
            std::size_t cost = pos * neg;
            if (best == dim || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        if (best == dim)
            break;
        out.order.push_back(best);
        out.stages.push_back(sys);
        System next;
        std::vector<const Constraint*> pos, neg;
        for (const auto& c : sys.rows) {
            int sg = sgn(c.normal[best]);
            if (sg > 0)
                pos.push_back(&c);
            else if (sg < 0)
                neg.push_back(&c);
            else
                next.rows.push_back(c);
        }
        for (const auto* p : pos)
            for (const auto* n : neg) {
                Q lp = -n->normal[best];
                Q ln = p->normal[best];
                Constraint comb;
                comb.normal.resize(dim);
                for (std::size_t i = 0; i < dim; ++i)
                    comb.normal[i] = lp * p->normal[i] + ln * n->normal[i];
                comb.normal[best] = 0;
                comb.offset = lp * p->offset + ln * n->offset;
                comb.strict = p->strict || n->strict;
                next.rows.push_back(std::move(comb));
            }
        tidy(next);
        gone[best] = true;
        if (next.infeasible) {
            out.infeasible = true;
            return out;
        }
        sys = std::move(next);
    }
    out.final_system = std::move(sys);
    return out;
}

// Picks a value for x[v] satisfying every row of the system given the other coordinates.
Q choose_value(const System& sys, std::size_t v, const QVec& x)
{
    std::optional<Q> lo, hi;
    for (const auto& c : sys.rows) {
        Q a = c.normal[v];
        if (sgn(a) == 0)
            continue;
        Q rest = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (i != v && sgn(c.normal[i]) != 0)
                rest += c.normal[i] * x[i];
        Q bound = (c.offset - rest) / a;
        if (sgn(a) > 0) {
            if (!lo || bound > *lo)
                lo = bound;
        } else {
            if (!hi || bound < *hi)
                hi = bound;
        }
    }
    if (lo && hi)
        return (*lo + *hi) / 2;
    if (lo)
        return *lo + 1;
    if (hi)
        return *hi - 1;
    return 0;
}

QVec back_substitute(const Elimination& el, std::size_t dim, QVec x)
{
    for (std::size_t i = el.order.size(); i-- > 0;)
        x[el.order[i]] = choose_value(el.stages[i], el.order[i], x);
    for (std::size_t i = el.subs.size(); i-- > 0;) {
        const auto& s = el.subs[i];
        Q v = s.constant;
        for (std::size_t j = 0; j < dim; ++j)
            if (sgn(s.coeffs[j]) != 0)
                v += s.coeffs[j] * x[j];
        x[s.var] = v;
    }
    return x;
}

}  // namespace

std::optional<QVec> fm_find_point(std::size_t dim, const std::vector<Constraint>& ineqs,
                                  const std::vector<LinearEquation>& eqs)
{
    std::vector<bool> keep(dim, false);
    Elimination el = eliminate(dim, ineqs, eqs, keep);
    if (el.infeasible)
        return std::nullopt;
    return back_substitute(el, dim, QVec(dim));
}

bool FunctionalRange::interior_contains_integer() const
{
    if (!feasible)
        return false;
    if (!lower || !upper)
        return true;
    if (*lower == *upper)
        return false;
    Int f = floor_q(*lower) + 1;
    return Q(f) < *upper;
}

bool FunctionalRange::contains_integer() const
{
    if (!feasible)
        return false;
    if (interior_contains_integer())
        return true;
    if (lower && !lower_strict && is_integer(*lower))
        return true;
    if (upper && !upper_strict && is_integer(*upper))
        return true;
    return false;
}

FunctionalRange fm_functional_range(std::size_t dim, const std::vector<Constraint>& ineqs,
                                    const std::vector<LinearEquation>& eqs, const QVec& functional)
{
    // extra variable t = <functional, x>
    std::vector<Constraint> rows;
    for (const auto& c : ineqs) {
        Constraint r = c;
        r.normal.push_back(0);
        rows.push_back(std::move(r));
    }
    std::vector<LinearEquation> equations;
    for (const auto& e : eqs) {
        LinearEquation r = e;
        r.normal.push_back(0);
        equations.push_back(std::move(r));
    }
    LinearEquation te;
    te.normal = functional;
    te.normal.push_back(-1);
    te.offset = 0;
    equations.push_back(std::move(te));
    std::vector<bool> keep(dim + 1, false);
    keep[dim] = true;
    Elimination el = eliminate(dim + 1, rows, equations, keep);
    FunctionalRange r;
    if (el.infeasible)
        return r;
    r.feasible = true;
    for (const auto& c : el.final_system.rows) {
        Q a = c.normal[dim];
        Q bound = c.offset / a;
        if (sgn(a) > 0) {
            if (!r.lower || bound > *r.lower || (bound == *r.lower && c.strict)) {
                r.lower = bound;
                r.lower_strict = c.strict;
            }
        } else {
            if (!r.upper || bound < *r.upper || (bound == *r.upper && c.strict)) {
                r.upper = bound;
                r.upper_strict = c.strict;
            }
        }
    }
    return r;
}

NncPolyhedron::NncPolyhedron(std::size_t dim, std::vector<Constraint> constraints)
    : dim_(dim), constraints_(std::move(constraints))
{
    for (const auto& c : constraints_)
        if (c.normal.size() != dim_)
            throw std::invalid_argument("NncPolyhedron: constraint dimension mismatch");
}

NncPolyhedron NncPolyhedron::empty(std::size_t dim)
{
    return NncPolyhedron(dim, {Constraint{QVec(dim), Q(0), true}});
}

NncPolyhedron NncPolyhedron::point(const QVec& p)
{
    std::vector<Constraint> cs;
    for (std::size_t i = 0; i < p.size(); ++i) {
        QVec e(p.size());
        e[i] = 1;
        cs.push_back({e, p[i], false});
        e[i] = -1;
        cs.push_back({e, -p[i], false});
    }
    return NncPolyhedron(p.size(), std::move(cs));
}

bool NncPolyhedron::contains(const QVec& x) const
{
    if (x.size() != dim_)
        throw std::invalid_argument("NncPolyhedron::contains: dimension mismatch");
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const Constraint& c) { return c.satisfied_by(x); });
}

std::optional<QVec> NncPolyhedron::find_point() const { return fm_find_point(dim_, constraints_); }

bool NncPolyhedron::is_empty() const { return !find_point().has_value(); }

bool NncPolyhedron::is_singleton() const
{
    auto p = find_point();
    if (!p)
        return false;
    for (std::size_t i = 0; i < dim_; ++i) {
        QVec e(dim_);
        e[i] = 1;
        for (int s : {1, -1}) {
            QVec n = e;
            n[i] = s;
            auto cs = constraints_;
            cs.push_back({n, s * (*p)[i], true});
            if (fm_find_point(dim_, cs))
                return false;
        }
    }
    return true;
}

NncPolyhedron NncPolyhedron::canonical() const
{
    if (is_empty())
        return empty(dim_);
    std::vector<Constraint> kept;
    for (const auto& c : constraints_)
        kept.push_back(c.normalized());
    for (std::size_t i = 0; i < kept.size();) {
        if (is_zero_vec(kept[i].normal)) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        std::vector<Constraint> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i)
                others.push_back(kept[j]);
        others.push_back(kept[i].negated());
        if (!fm_find_point(dim_, others))
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    std::sort(kept.begin(), kept.end(), constraint_less);
    return NncPolyhedron(dim_, std::move(kept));
}

NncPolyhedron NncPolyhedron::closure() const
{
    auto cs = constraints_;
    for (auto& c : cs)
        c.strict = false;
    return NncPolyhedron(dim_, std::move(cs));
}

NncPolyhedron NncPolyhedron::intersect(const NncPolyhedron& other) const
{
    if (other.dim_ != dim_)
        throw std::invalid_argument("intersect: dimension mismatch");
    auto cs = constraints_;
    cs.insert(cs.end(), other.constraints_.begin(), other.constraints_.end());
    return NncPolyhedron(dim_, std::move(cs));
}

NncPolyhedron NncPolyhedron::translate(const QVec& v) const
{
    if (v.size() != dim_)
        throw std::invalid_argument("translate: dimension mismatch");
    auto cs = constraints_;
    for (auto& c : cs)
        c.offset += dot(c.normal, v);
    return NncPolyhedron(dim_, std::move(cs));
}

NncPolyhedron NncPolyhedron::scale(const Q& k) const
{
    if (sgn(k) <= 0)
        throw std::invalid_argument("scale: factor must be positive");
    auto cs = constraints_;
    for (auto& c : cs)
        c.offset *= k;
    return NncPolyhedron(dim_, std::move(cs));
}

NncPolyhedron NncPolyhedron::recession_cone() const
{
    if (is_empty())
        throw std::invalid_argument("recession_cone: empty polyhedron");
    auto cs = constraints_;
    for (auto& c : cs) {
        c.offset = 0;
        c.strict = false;
    }
    return NncPolyhedron(dim_, std::move(cs));
}

FunctionalRange NncPolyhedron::range_of(const QVec& functional) const
{
    return fm_functional_range(dim_, constraints_, {}, functional);
}

Region::Region(std::size_t dim, std::vector<NncPolyhedron> pieces, std::vector<QVec> excluded)
    : dim_(dim), pieces_(std::move(pieces)), excluded_(std::move(excluded))
{
    for (const auto& p : pieces_)
        if (p.dim() != dim_)
            throw std::invalid_argument("Region: piece dimension mismatch");
}

bool Region::contains(const QVec& x) const
{
    if (std::find(excluded_.begin(), excluded_.end(), x) != excluded_.end())
        return false;
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const NncPolyhedron& p) { return p.contains(x); });
}

bool Region::is_empty() const
{
    for (const auto& p : pieces_) {
        auto pt = p.find_point();
        if (!pt)
            continue;
        if (!p.is_singleton())
            return false;
        if (std::find(excluded_.begin(), excluded_.end(), *pt) == excluded_.end())
            return false;
    }
    return true;
}

Region Region::unite(const Region& other) const
{
    if (other.dim_ != dim_)
        throw std::invalid_argument("unite: dimension mismatch");
    // points excluded from one side but covered by the other come back
    std::vector<QVec> excl;
    for (const auto& x : excluded_)
        if (!other.contains(x))
            excl.push_back(x);
    for (const auto& x : other.excluded_)
        if (!contains(x) && std::find(excl.begin(), excl.end(), x) == excl.end())
            excl.push_back(x);
    auto pieces = pieces_;
    pieces.insert(pieces.end(), other.pieces_.begin(), other.pieces_.end());
    return Region(dim_, std::move(pieces), std::move(excl));
}

Region Region::intersect(const Region& other) const
{
    if (other.dim_ != dim_)
        throw std::invalid_argument("intersect: dimension mismatch");
    std::vector<NncPolyhedron> pieces;
    for (const auto& a : pieces_)
        for (const auto& b : other.pieces_) {
            auto c = a.intersect(b);
            if (!c.is_empty())
                pieces.push_back(std::move(c));
        }
    auto excl = excluded_;
    for (const auto& x : other.excluded_)
        if (std::find(excl.begin(), excl.end(), x) == excl.end())
            excl.push_back(x);
    return Region(dim_, std::move(pieces), std::move(excl));
}

Region Region::minus(const Region& other) const
{
    if (other.dim_ != dim_)
        throw std::invalid_argument("minus: dimension mismatch");
    std::vector<NncPolyhedron> current;
    for (const auto& p : pieces_)
        if (!p.is_empty())
            current.push_back(p);
    for (const auto& q : other.pieces_) {
        std::vector<NncPolyhedron> next;
        for (const auto& p : current) {
            if (p.intersect(q).is_empty()) {
                next.push_back(p);
                continue;
            }
            // p \ q as a disjoint union over the first violated constraint of q
            std::vector<Constraint> prefix = p.constraints();
            for (const auto& c : q.constraints()) {
                auto cs = prefix;
                cs.push_back(c.negated());
                NncPolyhedron piece(dim_, std::move(cs));
                if (!piece.is_empty())
                    next.push_back(std::move(piece));
                prefix.push_back(c);
            }
        }
        current = std::move(next);
    }
    // excluded points of `other` lying in this region are not removed
    std::vector<QVec> excl = excluded_;
    for (const auto& x : other.excluded_)
        if (contains(x)) {
            current.push_back(NncPolyhedron::point(x));
        }
    return Region(dim_, std::move(current), std::move(excl));
}

Region Region::minus_points(const std::vector<QVec>& pts) const
{
    auto excl = excluded_;
    for (const auto& x : pts)
        if (std::find(excl.begin(), excl.end(), x) == excl.end())
            excl.push_back(x);
    return Region(dim_, pieces_, std::move(excl));
}

Region Region::translate(const QVec& v) const
{
    std::vector<NncPolyhedron> pieces;
    for (const auto& p : pieces_)
        pieces.push_back(p.translate(v));
    std::vector<QVec> excl;
    for (auto x : excluded_) {
        for (std::size_t i = 0; i < dim_; ++i)
            x[i] += v[i];
        excl.push_back(std::move(x));
    }
    return Region(dim_, std::move(pieces), std::move(excl));
}

Region Region::scale(const Q& k) const
{
    std::vector<NncPolyhedron> pieces;
    for (const auto& p : pieces_)
        pieces.push_back(p.scale(k));
    std::vector<QVec> excl;
    for (auto x : excluded_) {
        for (auto& c : x)
            c *= k;
        excl.push_back(std::move(x));
    }
    return Region(dim_, std::move(pieces), std::move(excl));
}

std::vector<Constraint> Region::boundary_hyperplanes() const
{
    std::set<std::pair<QVec, Q>> seen;
    std::vector<Constraint> out;
    for (const auto& p : pieces_)
        for (const auto& c : p.constraints()) {
            if (is_zero_vec(c.normal))
                continue;
            Constraint n = c.normalized();
            n.strict = false;
            if (seen.insert({n.normal, n.offset}).second)
                out.push_back(n);
        }
    for (const auto& x : excluded_)
        for (std::size_t i = 0; i < dim_; ++i) {
            QVec e(dim_);
            e[i] = 1;
            if (seen.insert({e, x[i]}).second)
                out.push_back({e, x[i], false});
        }
    return out;
}

bool symmetric_difference_empty(const Region& a, const Region& b)
{
    return a.minus(b).is_empty() && b.minus(a).is_empty();
}

std::vector<IntVec> cone_generators_from_inequalities(std::size_t dim, const std::vector<QVec>& rows)
{
    for (const auto& r : rows)
        if (r.size() != dim)
            throw std::invalid_argument("cone generators: dimension mismatch");
    std::vector<QVec> lin;
    if (rows.empty()) {
        for (std::size_t i = 0; i < dim; ++i) {
            QVec e(dim);
            e[i] = 1;
            lin.push_back(e);
        }
    } else {
        lin = nullspace(QMatrix::from_rows(rows, dim));
    }
    if (!lin.empty()) {
        QMatrix l = QMatrix::from_rows(lin, dim);
        auto piv = rref(l);
        lin.clear();
        for (std::size_t i = 0; i < piv.size(); ++i)
            lin.push_back(l.row(i));
    }
    std::size_t d = dim - lin.size();
    std::set<IntVec> rays;
    if (d > 0) {
        // candidate rays: 1-dimensional solution sets of d-1 active rows plus x in lin-perp
        std::vector<std::size_t> idx(d - 1);
        const std::size_t m = rows.size();
        std::vector<std::vector<std::size_t>> subsets;
        if (d - 1 <= m) {
            std::vector<bool> pick(m, false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(d - 1), true);
            do {
                std::vector<std::size_t> s;
                for (std::size_t i = 0; i < m; ++i)
                    if (pick[i])
                        s.push_back(i);
                subsets.push_back(std::move(s));
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        for (const auto& s : subsets) {
            std::vector<QVec> sys = lin;
            for (auto i : s)
                sys.push_back(rows[i]);
            std::vector<QVec> sol = sys.empty() ? std::vector<QVec>{} : nullspace(QMatrix::from_rows(sys, dim));
            if (sys.empty())
                for (std::size_t i = 0; i < dim; ++i) {
                    QVec e(dim);
                    e[i] = 1;
                    sol.push_back(e);
                }
            if (sol.size() != 1)
                continue;
            for (int sg : {1, -1}) {
                QVec v = sol[0];
                for (auto& c : v)
                    c *= sg;
                bool ok = std::all_of(rows.begin(), rows.end(), [&](const QVec& r) { return sgn(dot(r, v)) >= 0; });
                if (ok)
                    rays.insert(primitive_integer(v));
            }
        }
    }
    std::vector<IntVec> out(rays.begin(), rays.end());
    for (const auto& l : lin) {
        IntVec p = primitive_integer(l);
        out.push_back(p);
        for (auto& c : p)
            c = -c;
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

std::vector<QVec> to_rows(const std::vector<IntVec>& v)
{
    std::vector<QVec> out;
    for (const auto& x : v)
        out.push_back(to_qvec(x));
    return out;
}

}  // namespace

Cone::Cone(std::size_t dim, Side side, const std::vector<IntVec>& generators) : dim_(dim), side_(side)
{
    for (const auto& g : generators)
        if (g.size() != dim)
            throw std::invalid_argument("Cone: generator dimension mismatch");
    std::vector<IntVec> nonzero;
    for (const auto& g : generators)
        if (std::any_of(g.begin(), g.end(), [](const Int& z) { return sgn(z) != 0; }))
            nonzero.push_back(g);
    facets_ = cone_generators_from_inequalities(dim, to_rows(nonzero));
    generators_ = cone_generators_from_inequalities(dim, to_rows(facets_));
    std::sort(generators_.begin(), generators_.end());
    std::sort(facets_.begin(), facets_.end());
}

bool Cone::contains(const QVec& x) const
{
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const IntVec& f) { return sgn(dot(to_qvec(f), x)) >= 0; });
}

bool Cone::contains_relint(const QVec& x) const
{
    if (!contains(x))
        return false;
    for (const auto& f : facets_) {
        QVec fq = to_qvec(f);
        bool vanishes = std::all_of(generators_.begin(), generators_.end(),
                                    [&](const IntVec& g) { return sgn(dot(fq, to_qvec(g))) == 0; });
        if (!vanishes && sgn(dot(fq, x)) <= 0)
            return false;
    }
    return true;
}

std::size_t Cone::dimension() const
{
    if (generators_.empty())
        return 0;
    return rank(QMatrix::from_rows(to_rows(generators_), dim_));
}

bool Cone::is_proper() const
{
    // proper iff no generator's negative lies in the cone
    for (const auto& g : generators_) {
        QVec n = to_qvec(g);
        for (auto& c : n)
            c = -c;
        if (contains(n))
            return false;
    }
    return true;
}

NncPolyhedron Cone::as_polyhedron() const
{
    std::vector<Constraint> cs;
    for (const auto& f : facets_)
        cs.push_back({to_qvec(f), Q(0), false});
    return NncPolyhedron(dim_, std::move(cs));
}

Cone Cone::negated() const
{
    auto g = generators_;
    for (auto& v : g)
        for (auto& c : v)
            c = -c;
    return Cone(dim_, side_, g);
}

Cone Cone::operator+(const Cone& other) const
{
    if (other.dim_ != dim_ || other.side_ != side_)
        throw std::invalid_argument("Cone sum: mismatched cones");
    auto g = generators_;
    g.insert(g.end(), other.generators_.begin(), other.generators_.end());
    return Cone(dim_, side_, g);
}

std::vector<Cone> Cone::faces() const
{
    std::set<std::vector<IntVec>> seen;
    std::vector<Cone> out;
    const std::size_t k = facets_.size();
    if (k > 20)
        throw std::runtime_error("Cone::faces: too many facets");
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<IntVec> gens;
        for (const auto& g : generators_) {
            bool in = true;
            for (std::size_t i = 0; i < k && in; ++i)
                if ((mask >> i) & 1)
                    in = sgn(dot(to_qvec(facets_[i]), to_qvec(g))) == 0;
            if (in)
                gens.push_back(g);
        }
        Cone f(dim_, side_, gens);
        if (seen.insert(f.generators()).second)
            out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
        if (a.dimension() != b.dimension())
            return a.dimension() < b.dimension();
        return a.generators() < b.generators();
    });
    return out;
}

Cone dual_cone(const Cone& c)
{
    return Cone(c.ambient_dim(), dual_side(c.side()), c.facet_normals());
}

Cone conormal_cone(const NncPolyhedron& z, const QVec& x)
{
    NncPolyhedron cl = z.closure();
    if (!cl.contains(x) || z.is_empty())
        throw std::invalid_argument("point not in closure");
    std::vector<IntVec> normals;
    for (const auto& c : z.constraints())
        if (!is_zero_vec(c.normal) && dot(c.normal, x) == c.offset)
            normals.push_back(primitive_integer(c.normal));
    return Cone(z.dim(), Side::N, normals);
}

Cone conormal_cone_of_complement(const NncPolyhedron& z, const QVec& x)
{
    return conormal_cone(z, x).negated();
}

NncPolyhedron orthogonal_subspace(std::size_t dim, const std::vector<QVec>& basis)
{
    std::vector<Constraint> cs;
    for (const auto& b : basis) {
        cs.push_back({b, Q(0), false});
        QVec n = b;
        for (auto& c : n)
            c = -c;
        cs.push_back({n, Q(0), false});
    }
    return NncPolyhedron(dim, std::move(cs));
}

std::vector<RTauStratum> r_tau_strata(const Cone& gamma_dual)
{
    const std::size_t n = gamma_dual.ambient_dim();
    if (gamma_dual.dimension() != n)
        throw std::invalid_argument("r_tau_strata: cone is not full-dimensional");
    auto faces = gamma_dual.faces();
    std::vector<RTauStratum> out;
    for (const auto& tau : faces) {
        if (tau.dimension() == 0)
            continue;
        NncPolyhedron perp = orthogonal_subspace(n, to_rows(tau.generators()));
        // covering faces sigma: one more dimension; sigma-perp = perp and <u, x> = 0
        std::vector<QVec> cut;
        for (const auto& sigma : faces) {
            if (sigma.dimension() != tau.dimension() + 1)
                continue;
            bool contains_tau = std::all_of(tau.generators().begin(), tau.generators().end(),
                                            [&](const IntVec& g) { return sigma.contains(to_qvec(g)); });
            if (!contains_tau)
                continue;
            for (const auto& g : sigma.generators())
                if (!tau.contains(to_qvec(g))) {
                    cut.push_back(to_qvec(g));
                    break;
                }
        }
        std::vector<NncPolyhedron> pieces;
        for (std::size_t mask = 0; mask < (std::size_t{1} << cut.size()); ++mask) {
            auto cs = perp.constraints();
            for (std::size_t i = 0; i < cut.size(); ++i) {
                QVec u = cut[i];
                if ((mask >> i) & 1)
                    for (auto& c : u)
                        c = -c;
                cs.push_back({u, Q(0), true});
            }
            NncPolyhedron p(n, std::move(cs));
            if (!p.is_empty())
                pieces.push_back(std::move(p));
        }
        out.push_back({tau, Region(n, std::move(pieces))});
    }
    return out;
}

std::string to_string(const Constraint& c)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.normal.size(); ++i)
        os << (i ? "," : "") << to_string(c.normal[i]);
    os << "]." << "x " << (c.strict ? ">" : ">=") << " " << to_string(c.offset);
    return os.str();
}

}  // namespace nccc
