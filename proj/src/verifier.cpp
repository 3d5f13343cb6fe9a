#include "nccc/verifier.hpp"

#include "nccc/arrangement.hpp"
#include "nccc/io.hpp"
#include "nccc/skeleton.hpp"

#include <algorithm>
#include <sstream>

namespace nccc {

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass:
        return "pass";
    case CheckStatus::Fail:
        return "fail";
    case CheckStatus::Skipped:
        return "skipped";
    }
    return "fail";
}

CheckStatus check_status_from_string(const std::string& s)
{
    if (s == "pass")
        return CheckStatus::Pass;
    if (s == "fail")
        return CheckStatus::Fail;
    if (s == "skipped")
        return CheckStatus::Skipped;
    throw std::invalid_argument("unknown check status " + s);
}

std::string to_string(MirrorObject o) { return o == MirrorObject::Literal ? "literal" : "shell"; }

MirrorObject mirror_object_from_string(const std::string& s)
{
    if (s == "literal")
        return MirrorObject::Literal;
    if (s == "shell")
        return MirrorObject::Shell;
    throw std::invalid_argument("unknown mirror object " + s);
}

CellularSheaf mirror_object(ComplexPtr cx, const BlowupContext& ctx, int k, MirrorObject o)
{
    return o == MirrorObject::Literal ? literal_object(std::move(cx), ctx, k) : shell_object(std::move(cx), ctx, k);
}

namespace {

std::string label(const BlowupContext& ctx) { return ctx.name.empty() ? std::string("ctx") : ctx.name; }

void check_k_range(const BlowupContext& ctx, int k, const char* what)
{
    if (k < 1 || k > static_cast<int>(ctx.dim()) - 1)
        throw std::out_of_range(std::string(what) + ": k must lie in [1, n-1]");
}

void fail_with(VerificationReport& r, Json input)
{
    r.status = CheckStatus::Fail;
    r.reproducer = input.dump();
}

Json ctx_input(const BlowupContext& ctx, const std::string& check)
{
    return Json{{"check", check}, {"context", to_json(ctx)}};
}

std::string point_label(const QVec& p)
{
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "," : "") + to_string(p[i]);
    return s;
}

}  // namespace

VerificationReport check_exceptionality(const BlowupContext& ctx, ComplexPtr cx, int k, MirrorObject o)
{
    check_k_range(ctx, k, "check_exceptionality");
    const std::size_t n = ctx.dim();
    VerificationReport r;
    r.id = "exceptionality/" + label(ctx) + "/k=" + std::to_string(k) + "/" + to_string(o);
    r.context = {{"context", label(ctx)}, {"k", std::to_string(k)}, {"object", to_string(o)},
                 {"cells", std::to_string(cx->size())}};
    auto f = mirror_object(cx, ctx, k, o);
    auto got = ext_groups(f, f);
    auto want = ext_orlov(n, k, k);
    r.computed["ext"] = got;
    r.oracle["ext_orlov"] = want;
    GradedDims unit(n + 1, 0);
    unit[0] = 1;
    if (got != want || want != unit) {
        auto in = ctx_input(ctx, "exceptionality");
        in["k"] = k;
        in["object"] = to_string(o);
        fail_with(r, in);
    }
    return r;
}

VerificationReport check_semiorthogonality(const BlowupContext& ctx, ComplexPtr cx, int k, int l, MirrorObject o)
{
    if (k == l)
        return check_exceptionality(ctx, std::move(cx), k, o);
    check_k_range(ctx, k, "check_semiorthogonality");
    check_k_range(ctx, l, "check_semiorthogonality");
    const std::size_t n = ctx.dim();
    VerificationReport r;
    r.id = "semiorthogonality/" + label(ctx) + "/k=" + std::to_string(k) + ",l=" + std::to_string(l) + "/" +
           to_string(o);
    r.context = {{"context", label(ctx)}, {"k", std::to_string(k)}, {"l", std::to_string(l)}, {"object", to_string(o)}};
    // Hom(D F_k, D F_l) = Hom(F_l, F_k)
    auto got = ext_groups(mirror_object(cx, ctx, l, o), mirror_object(cx, ctx, k, o));
    auto want = ext_orlov(n, k, l);
    r.computed["ext"] = got;
    r.oracle["ext_orlov"] = want;
    bool ok = got == want && (k > l || all_zero(want));
    if (!ok) {
        auto in = ctx_input(ctx, "semiorthogonality");
        in["k"] = k;
        in["l"] = l;
        in["object"] = to_string(o);
        fail_with(r, in);
    }
    return r;
}

VerificationReport check_unit_orthogonality(const BlowupContext& ctx, ComplexPtr cx, int k, MirrorObject o)
{
    check_k_range(ctx, k, "check_unit_orthogonality");
    const std::size_t n = ctx.dim();
    VerificationReport r;
    r.id = "unit_orthogonality/" + label(ctx) + "/k=" + std::to_string(k) + "/" + to_string(o);
    r.context = {{"context", label(ctx)}, {"k", std::to_string(k)}, {"object", to_string(o)}};
    auto sky = skyscraper(cx, cx->locate(QVec(n, Q(0))));
    auto got = cohomology(tensor(sky, mirror_object(cx, ctx, k, o)));
    auto want = pad_dims(projective_space_cohomology(n - 1, -k), n + 1);
    r.computed["H(T, C_[0] x F_k)"] = got;
    r.oracle["H(P^{n-1}, O(-k))"] = want;
    if (got != want || !all_zero(got)) {
        auto in = ctx_input(ctx, "unit_orthogonality");
        in["k"] = k;
        in["object"] = to_string(o);
        fail_with(r, in);
    }
    return r;
}

VerificationReport check_cech_quasiiso(const BlowupContext& ctx)
{
    const long n = static_cast<long>(ctx.dim());
    VerificationReport r;
    r.id = "cech/" + label(ctx);
    auto cs = build_cech_system(ctx);
    auto res = check_cech_cells(ctx, cs, -n - 1, 1);
    r.context = {{"context", label(ctx)},
                 {"window", "[" + std::to_string(-n - 1) + ",1]^" + std::to_string(n)},
                 {"cells", std::to_string(res.cells)},
                 {"cover_cones", std::to_string(cs.cones.size())}};
    if (!cs.choice_independent)
        r.notes.push_back("Z_sigma depends on the choice of dual vector");
    if (!cs.covers)
        r.notes.push_back("Z_sigma over two-dimensional cones do not cover Z_{rho_E} minus Z_1");
    for (const auto& f : res.failures)
        r.notes.push_back("cell at " + point_label(f.point) + (f.in_Z1 ? " (in Z_1)" : " (outside Z_1)"));
    if (!res.ok || !cs.choice_independent || !cs.covers)
        fail_with(r, ctx_input(ctx, "cech"));
    return r;
}

std::vector<CorpusItem> step1_corpus(const BlowupContext& ctx, ComplexPtr cx)
{
    const std::size_t n = ctx.dim();
    std::vector<CorpusItem> out;
    out.push_back({"constant", constant_sheaf(cx)});
    out.push_back({"skyscraper[0]", skyscraper(cx, cx->locate(QVec(n, Q(0))))});
    Fan base = ctx.in_basis(ctx.fan);
    std::vector<Hyperplane> hs;
    for (const auto& ray : base.rays) {
        long reach = 0;
        for (const auto& x : ray)
            reach += std::abs(x.get_si());
        for (long t = -reach; t <= reach; ++t)
            hs.push_back({to_qvec(ray), Q(t)});
    }
    auto cells = box_arrangement(QVec(n, Q(-1)), QVec(n, Q(1)), hs);
    for (const auto& c : cells) {
        if (c.dim == 0)
            continue;
        std::vector<Constraint> open = c.strict;
        for (const auto& e : c.eqs) {
            Constraint a{e.normal, e.offset, false};
            Constraint b = a.negated();
            b.strict = false;
            open.push_back(a);
            open.push_back(b);
        }
        NncPolyhedron op(n, open);
        for (bool closed : {true, false}) {
            NncPolyhedron p = closed ? op.closure() : op;
            std::string name = std::string(closed ? "closed" : "open") + " chamber at " + point_label(c.point);
            try {
                out.push_back({name, pushforward_indicator(cx, Region(p))});
            } catch (const NotAdapted&) {
            }
        }
    }
    return out;
}

VerificationReport check_step1_restriction(const BlowupContext& ctx, ComplexPtr cx, int k,
                                           const std::vector<CorpusItem>& corpus)
{
    VerificationReport r;
    r.id = "step1/" + label(ctx) + "/k=" + std::to_string(k);
    auto uk = image_Uk(*cx, ctx, k);
    auto uk1 = image_Uk(*cx, ctx, k + 1);
    Fan base = ctx.in_basis(ctx.fan);
    std::size_t tested = 0, skipped = 0;
    std::vector<std::string> bad;
    for (const auto& item : corpus) {
        bool gate = false;
        try {
            gate = ss_contained_in_skeleton(item.sheaf, base).ok;
        } catch (const ComplexTooCoarse&) {
            r.notes.push_back("skipped " + item.name + ": complex too coarse for the SS scan");
            ++skipped;
            continue;
        }
        if (!gate) {
            r.notes.push_back("skipped " + item.name + ": SS not inside the skeleton");
            ++skipped;
            continue;
        }
        ++tested;
        auto a = compact_cohomology(item.sheaf, uk);
        auto b = compact_cohomology(item.sheaf, uk1);
        r.computed[item.name + " / U_k"] = a;
        r.oracle[item.name + " / U_k+1"] = b;
        if (a != b)
            bad.push_back(item.name);
    }
    r.context = {{"context", label(ctx)},
                 {"k", std::to_string(k)},
                 {"tested", std::to_string(tested)},
                 {"skipped", std::to_string(skipped)}};
    if (tested == 0) {
        r.status = CheckStatus::Skipped;
        r.notes.push_back("no corpus sheaf passed the SS gate");
    } else if (!bad.empty()) {
        auto in = ctx_input(ctx, "step1");
        in["k"] = k;
        in["sheaves"] = bad;
        fail_with(r, in);
    }
    return r;
}

namespace {

std::size_t cone_with_ray_sum(const Fan& f, const IntVec& target)
{
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        IntVec s(f.dim, Int(0));
        for (auto i : f.max_cones[c])
            for (std::size_t d = 0; d < f.dim; ++d)
                s[d] += f.rays[i][d];
        if (s == target)
            return c;
    }
    throw std::logic_error("no maximal cone sums to the blown-down ray");
}

}  // namespace

VerificationReport check_blowup_bookkeeping(const Fan& f)
{
    VerificationReport r;
    std::ostringstream key;
    for (auto c : surface_key(f))
        key << c << ' ';
    r.id = "mmp/" + key.str();
    if (!r.id.empty() && r.id.back() == ' ')
        r.id.pop_back();
    auto res = mmp_reduce(f);
    GradedDims cones;
    for (const auto& g : res.fans)
        cones.push_back(g.max_cones.size());
    r.computed["max_cones"] = cones;
    r.context = {{"rays", std::to_string(f.rays.size())},
                 {"steps", std::to_string(res.trace.size())},
                 {"minimal_model", to_string(res.result)}};
    bool ok = true;
    auto note = [&](const std::string& s) {
        r.notes.push_back(s);
        ok = false;
    };
    if (canonical_fan(mmp_replay(res)) != canonical_fan(f))
        note("replaying the trace does not return the input fan");
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
        const Fan& fine = res.fans[i];
        const Fan& coarse = res.fans[i + 1];
        std::string step = "step " + std::to_string(i);
        if (fine.max_cones.size() != coarse.max_cones.size() + 1 || fine.rays.size() != coarse.rays.size() + 1)
            note(step + ": rank does not drop by one");
        try {
            if (!skeleton_refines(coarse, fine))
                note(step + ": skeleton does not refine");
        } catch (const std::invalid_argument& e) {
            note(step + ": " + e.what());
        }
        auto ctx = make_context(coarse, cone_with_ray_sum(coarse, res.trace[i]), step);
        if (canonical_fan(ctx.blown_up) != canonical_fan(fine))
            note(step + ": star subdivision does not reproduce the finer fan");
        auto cx = context_complex(ctx);
        auto ex = check_exceptionality(ctx, cx, 1, MirrorObject::Literal);
        auto un = check_unit_orthogonality(ctx, cx, 1, MirrorObject::Literal);
        r.computed[step + " ext"] = ex.computed["ext"];
        r.computed[step + " H(C_[0] x F_1)"] = un.computed["H(T, C_[0] x F_k)"];
        if (ex.status != CheckStatus::Pass)
            note(step + ": exceptionality fails");
        if (un.status != CheckStatus::Pass)
            note(step + ": unit orthogonality fails");
    }
    const Fan& last = res.fans.back();
    if (!blow_down_candidates(last).empty())
        note("final fan still has a blow-down candidate");
    if (!(classify_minimal(last) == res.result))
        note("final class does not match the classification");
    if (!ok)
        fail_with(r, Json{{"check", "mmp"}, {"fan", to_json(f)}});
    return r;
}

VerificationReport check_ss_calibration()
{
    VerificationReport r;
    r.id = "ss/calibration";
    bool ok = true;
    GradedDims pattern;
    // closed arc [0, 1/2] on the circle: the germ at 0 of [0, infinity)
    {
        auto cx = TorusCellComplex::build(1, {});
        std::vector<bool> arc(cx->size(), false);
        for (std::size_t c = 0; c < cx->size(); ++c)
            arc[c] = cx->cell(c).point[0] <= make_q(1, 2);
        auto f = indicator_sheaf(cx, arc);
        auto o = cx->locate(QVec{Q(0)});
        Cone gamma_dual = dual_cone(Cone(1, Side::N, {IntVec{Int(1)}}));
        for (long s : {1, -1}) {
            bool nonzero = !all_zero(morse_group(f, o, QVec{Q(s)}));
            QVec xi{Q(s)};
            pattern.push_back(nonzero ? 1 : 0);
            if (nonzero != gamma_dual.contains(xi))
                ok = false;
        }
    }
    // closed quadrant corner [0, 1/2]^2
    {
        auto cx = TorusCellComplex::build(2, {});
        std::vector<bool> sq(cx->size(), false);
        for (std::size_t c = 0; c < cx->size(); ++c) {
            const auto& p = cx->cell(c).point;
            sq[c] = p[0] <= make_q(1, 2) && p[1] <= make_q(1, 2);
        }
        auto f = indicator_sheaf(cx, sq);
        auto o = cx->locate(QVec(2, Q(0)));
        Cone gamma_dual = dual_cone(Cone(2, Side::N, {IntVec{Int(1), Int(0)}, IntVec{Int(0), Int(1)}}));
        for (const auto& xi : test_covectors(*cx, o, fan_projective_space(2))) {
            bool nonzero = !all_zero(morse_group(f, o, xi));
            pattern.push_back(nonzero ? 1 : 0);
            if (nonzero != gamma_dual.contains(xi))
                ok = false;
        }
    }
    r.computed["nonzero Morse directions"] = pattern;
    if (!ok)
        fail_with(r, Json{{"check", "ss_calibration"}});
    return r;
}

ComplexPtr skeleton_complex(const Fan& f)
{
    std::vector<PeriodicFamily> fams;
    for (const auto& ray : f.rays)
        fams.push_back(periodic_family(to_qvec(ray), Q(0)));
    return TorusCellComplex::build(f.dim, fams);
}

VerificationReport check_ss_trivial_sheaves(const std::vector<Fan>& fans)
{
    VerificationReport r;
    r.id = "ss/trivial_sheaves";
    bool ok = true;
    std::size_t tested = 0;
    Json bad = Json::array();
    for (const auto& f : fans) {
        auto cx = skeleton_complex(f);
        auto c = ss_contained_in_skeleton(constant_sheaf(cx), f);
        auto s = ss_contained_in_skeleton(skyscraper(cx, cx->locate(QVec(f.dim, Q(0)))), f);
        tested += c.tested + s.tested;
        if (!c.ok || !s.ok) {
            ok = false;
            bad.push_back(to_json(f));
        }
    }
    r.context = {{"fans", std::to_string(fans.size())}, {"covectors", std::to_string(tested)}};
    if (!ok)
        fail_with(r, Json{{"check", "ss_trivial"}, {"fans", bad}});
    return r;
}

VerificationReport check_ss_blowup_object(const BlowupContext& ctx, ComplexPtr cx)
{
    VerificationReport r;
    r.id = "ss/blowup_object/" + label(ctx);
    auto f = literal_object(cx, ctx, 1);
    Fan fine = ctx.in_basis(ctx.blown_up);
    auto neg = ss_contained_in_skeleton(f, fine, true);
    auto pos = ss_contained_in_skeleton(f, fine, false);
    r.context = {{"context", label(ctx)},
                 {"covectors", std::to_string(neg.tested)},
                 {"inside -Lambda", neg.ok ? "yes" : "no"},
                 {"inside Lambda", pos.ok ? "yes" : "no"},
                 {"violations against Lambda", std::to_string(pos.violations.size())}};
    if (!neg.ok)
        fail_with(r, ctx_input(ctx, "ss_blowup_object"));
    return r;
}

void sort_reports(std::vector<VerificationReport>& reports)
{
    std::stable_sort(reports.begin(), reports.end(), [](const VerificationReport& a, const VerificationReport& b) {
        if (a.id != b.id)
            return a.id < b.id;
        return static_cast<int>(a.status) < static_cast<int>(b.status);
    });
}

bool all_pass(const std::vector<VerificationReport>& reports)
{
    return std::all_of(reports.begin(), reports.end(),
                       [](const VerificationReport& r) { return r.status != CheckStatus::Fail; });
}

}  // namespace nccc
