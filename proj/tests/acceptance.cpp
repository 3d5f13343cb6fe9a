#include "oracles/bar_resolution.hpp"

#include "nccc/coherent.hpp"
#include "nccc/verifier.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace nccc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string dims(const GradedDims& d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s)
{
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << s << "s";
    return o.str();
}

struct Case {
    std::string name;
    int k;
};

ComplexPtr complex_for(const std::string& name)
{
    static std::map<std::string, ComplexPtr> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, context_complex(standard_context(name))).first;
    return it->second;
}

Outcome exceptionality()
{
    Outcome o;
    for (Case c : {Case{"P2", 1}, Case{"P1xP1", 1}, Case{"P3", 1}, Case{"P3", 2}}) {
        auto ctx = standard_context(c.name);
        auto cx = complex_for(c.name);
        auto t0 = std::chrono::steady_clock::now();
        auto lit = check_exceptionality(ctx, cx, c.k, MirrorObject::Literal);
        double dt = seconds_since(t0);
        auto shell = check_exceptionality(ctx, cx, c.k, MirrorObject::Shell);
        bool ok = lit.status == CheckStatus::Pass && dt <= 60;
        o.pass = o.pass && ok;
        o.detail += " " + c.name + " k=" + std::to_string(c.k) + " " + dims(lit.computed["ext"]) + " vs " +
                    dims(lit.oracle["ext_orlov"]) + " in " + secs(dt);
        if (!ok)
            o.detail += " [shell object: " + dims(shell.computed["ext"]) + "]";
        o.detail += ";";
    }
    return o;
}

Outcome semiorthogonality()
{
    Outcome o;
    auto ctx = standard_context("P3");
    auto cx = complex_for("P3");
    const GradedDims pattern{3, 1, 0, 0};
    // (k, l) = (1, 2): Ext(F_2, F_1) should vanish; (2, 1): Ext(F_1, F_2) carries the pattern
    auto fwd = check_semiorthogonality(ctx, cx, 1, 2, MirrorObject::Literal);
    auto rev = check_semiorthogonality(ctx, cx, 2, 1, MirrorObject::Literal);
    auto fwd_s = check_semiorthogonality(ctx, cx, 1, 2, MirrorObject::Shell);
    auto rev_s = check_semiorthogonality(ctx, cx, 2, 1, MirrorObject::Shell);
    bool coherent_ok = ext_orlov(3, 1, 2) == GradedDims(4, 0) && ext_orlov(3, 2, 1) == pattern;
    o.pass = fwd.status == CheckStatus::Pass && rev.computed["ext"] == pattern && coherent_ok;
    o.detail = " (1,2) " + dims(fwd.computed["ext"]) + " vs " + dims(fwd.oracle["ext_orlov"]) + "; (2,1) " +
               dims(rev.computed["ext"]) + " vs " + dims(rev.oracle["ext_orlov"]) + "; coherent " +
               (coherent_ok ? "ok" : "mismatch");
    if (!o.pass)
        o.detail += " [shell objects: (1,2) " + dims(fwd_s.computed["ext"]) + ", (2,1) " +
                    dims(rev_s.computed["ext"]) + "]";
    return o;
}

Outcome unit_orthogonality()
{
    Outcome o;
    std::size_t n_checks = 0;
    for (Case c : {Case{"P2", 1}, Case{"P1xP1", 1}, Case{"F2", 1}, Case{"P3", 1}, Case{"P3", 2}}) {
        auto r = check_unit_orthogonality(standard_context(c.name), complex_for(c.name), c.k, MirrorObject::Literal);
        ++n_checks;
        if (r.status != CheckStatus::Pass) {
            o.pass = false;
            o.detail += " " + r.id + " " + dims(r.computed.begin()->second);
        }
    }
    if (o.pass)
        o.detail = " " + std::to_string(n_checks) + " (n, k) pairs, both sides zero";
    return o;
}

Outcome cech()
{
    Outcome o;
    for (const char* name : {"P2", "P1xP1", "P3"}) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = check_cech_quasiiso(standard_context(name));
        double dt = seconds_since(t0);
        bool ok = r.status == CheckStatus::Pass && dt <= 120;
        o.pass = o.pass && ok;
        o.detail += std::string(" ") + name + " " + (ok ? "ok" : "fail") + " in " + secs(dt) + ";";
    }
    return o;
}

Outcome step1()
{
    auto ctx = standard_context("P2");
    auto cx = complex_for("P2");
    auto r = check_step1_restriction(ctx, cx, 1, step1_corpus(ctx, cx));
    Outcome o;
    o.pass = r.status == CheckStatus::Pass;
    o.detail = " P2 k=1: " + r.context["tested"] + " gated sheaves tested, " + r.context["skipped"] +
               " outside the gate, status " + to_string(r.status);
    return o;
}

Outcome mmp_suite()
{
    auto t0 = std::chrono::steady_clock::now();
    auto fans = enumerate_surface_fans(6);
    std::map<std::string, int> models;
    Outcome o;
    for (const auto& f : fans) {
        auto r = check_blowup_bookkeeping(f);
        if (r.status != CheckStatus::Pass) {
            o.pass = false;
            o.detail += " " + r.id;
        }
        ++models[r.context["minimal_model"]];
    }
    double dt = seconds_since(t0);
    o.pass = o.pass && !fans.empty() && dt <= 300;
    o.detail += " " + std::to_string(fans.size()) + " fans with at most 6 rays in " + secs(dt) + "; minimal models";
    for (const auto& [m, c] : models)
        o.detail += " " + m + ":" + std::to_string(c);
    return o;
}

Outcome microsupport()
{
    Outcome o;
    auto cal = check_ss_calibration();
    if (cal.status != CheckStatus::Pass) {
        o.pass = false;
        o.detail = " calibration failed";
        return o;
    }
    auto fans = enumerate_surface_fans(5);
    auto p3 = standard_context("P3");
    fans.push_back(p3.fan);
    fans.push_back(p3.blown_up);
    auto triv = check_ss_trivial_sheaves(fans);
    auto ctx = standard_context("P2");
    auto obj = check_ss_blowup_object(ctx, complex_for("P2"));
    o.pass = triv.status == CheckStatus::Pass && obj.status == CheckStatus::Pass;
    o.detail = " calibration ok; constant and skyscraper on " + std::to_string(fans.size()) + " fans " +
               to_string(triv.status) + "; P2 blow-up object inside -Lambda: " + obj.context["inside -Lambda"];
    return o;
}

std::vector<bool> closure_of(const Poset& p, const std::vector<std::size_t>& cells)
{
    std::vector<bool> s(p.size(), false);
    for (auto c : cells)
        for (std::size_t a = 0; a < p.size(); ++a)
            if (p.leq(a, c))
                s[a] = true;
    return s;
}

// closed set minus a closed set: locally closed, hence a valid indicator
CellularSheaf random_indicator(std::mt19937& rng, ComplexPtr cx)
{
    const Poset& p = *cx->poset();
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    std::vector<std::size_t> a{pick(rng), pick(rng)}, b{pick(rng)};
    auto keep = closure_of(p, a), cut = closure_of(p, b);
    std::vector<bool> s(p.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = keep[i] && !cut[i];
    return indicator_sheaf(cx, s);
}

Outcome engine_oracle()
{
    std::mt19937 rng(7);
    std::vector<ComplexPtr> complexes;
    for (auto fam : std::vector<std::vector<PeriodicFamily>>{
             {},
             {periodic_family({Q(1), Q(1)}, Q(0))},
             {periodic_family({Q(1), Q(-1)}, Q(0))},
             {periodic_family({Q(1), Q(2)}, Q(0))}}) {
        auto cx = TorusCellComplex::build(2, fam);
        if (cx->size() <= 40)
            complexes.push_back(cx);
    }
    complexes.push_back(TorusCellComplex::build(1, {periodic_family({Q(3)}, Q(0))}));
    Outcome o;
    int instances = 0, agree = 0;
    std::size_t max_cells = 0;
    for (int trial = 0; trial < 30; ++trial) {
        auto cx = complexes[trial % complexes.size()];
        max_cells = std::max(max_cells, cx->size());
        auto f = random_indicator(rng, cx);
        auto g = trial % 3 == 0 ? constant_sheaf(cx) : random_indicator(rng, cx);
        if (trial % 4 == 1)
            g = tensor(g, random_indicator(rng, cx));
        ++instances;
        if (ext_groups(f, g) == pad_dims(oracle::bar_ext(f.rep, g.rep), cx->dim() + 1))
            ++agree;
    }
    bool oracle_ok = instances >= 25 && agree == instances && max_cells <= 40;

    auto t2 = TorusCellComplex::build(2, {});
    auto h = cohomology(constant_sheaf(t2));
    bool torus_ok = h == GradedDims{1, 2, 1};

    Fan p2 = fan_projective_space(2);
    auto kd = canonical_divisor(p2);
    int grid = 0, serre = 0;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c) {
                ToricDivisor d{a, b, c}, dual{kd[0] - a, kd[1] - b, kd[2] - c};
                auto x = line_bundle_cohomology(p2, d), y = line_bundle_cohomology(p2, dual);
                ++grid;
                if (x[0] == y[2] && x[1] == y[1] && x[2] == y[0] &&
                    x == projective_space_cohomology(2, a + b + c))
                    ++serre;
            }
    bool serre_ok = grid == serre;
    o.pass = oracle_ok && torus_ok && serre_ok;
    o.detail = " bar oracle " + std::to_string(agree) + "/" + std::to_string(instances) + " (<= " +
               std::to_string(max_cells) + " cells); H(T^2, C) " + dims(h) + "; Serre grid " +
               std::to_string(serre) + "/" + std::to_string(grid);
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria: one line per criterion"};
    std::vector<int> expect_fail;
    app.add_option("--expect-fail", expect_fail,
                   "Criteria known to fail; exit 0 iff exactly these fail")
        ->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exceptionality", exceptionality},
        {"semi-orthogonality", semiorthogonality},
        {"unit orthogonality", unit_orthogonality},
        {"Cech quasi-isomorphism", cech},
        {"restriction U_k to U_k+1", step1},
        {"MMP suite", mmp_suite},
        {"microsupport soundness", microsupport},
        {"engine oracle equivalence", engine_oracle},
    };
    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string(" threw: ") + e.what()};
        }
        if (!o.pass)
            failed.insert(static_cast<int>(i + 1));
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << " " << criteria[i].first << ":" << o.detail
                  << std::endl;
    }
    std::set<int> expected(expect_fail.begin(), expect_fail.end());
    std::cout << criteria.size() - failed.size() << "/" << criteria.size() << " criteria pass" << std::endl;
    if (!expected.empty()) {
        bool match = failed == expected;
        std::cout << "failing set " << (match ? "matches" : "differs from") << " the expected set" << std::endl;
        return match ? 0 : 1;
    }
    return failed.empty() ? 0 : 1;
}
