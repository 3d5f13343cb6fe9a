#include "nccc/coherent.hpp"
#include "nccc/io.hpp"
#include "nccc/regions.hpp"
#include "nccc/skeleton.hpp"
#include "nccc/theta.hpp"
#include "nccc/verifier.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>

using namespace nccc;

namespace {

struct Globals {
    std::string json_out;
    std::string svg_out;
    int jobs = 0;
    unsigned seed = 0;
};

struct Failed {};  // a check ran and failed: exit code 1

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty() || !out.empty())
        out.push_back(cur);
    return out;
}

QVec parse_qvec(const std::string& s)
{
    QVec out;
    for (const auto& t : split_list(s)) {
        try {
            out.push_back(parse_rational(t));
        } catch (const std::invalid_argument& e) {
            throw InputError("bad vector entry '" + t + "'");
        }
    }
    return out;
}

std::vector<std::size_t> parse_indices(const std::string& s)
{
    std::vector<std::size_t> out;
    for (const auto& q : parse_qvec(s)) {
        if (q.get_den() != 1 || sgn(q) < 0)
            throw InputError("bad index list '" + s + "'");
        out.push_back(q.get_num().get_ui());
    }
    return out;
}

void emit(const Globals& g, const Json& j)
{
    if (g.json_out.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    write_json_file(g.json_out, j);
}

void emit_svg(const Globals& g, const std::string& svg)
{
    if (g.svg_out.empty()) {
        std::cout << svg;
        return;
    }
    std::ofstream out(g.svg_out);
    if (!out)
        throw std::runtime_error("cannot write " + g.svg_out);
    out << svg;
}

Json reports_json(std::vector<VerificationReport> rs)
{
    sort_reports(rs);
    Json arr = Json::array();
    for (const auto& r : rs)
        arr.push_back(to_json(r));
    return Json{{"all_pass", all_pass(rs)}, {"reports", arr}};
}

void finish_reports(const Globals& g, std::vector<VerificationReport> rs)
{
    sort_reports(rs);
    emit(g, reports_json(rs));
    for (const auto& r : rs)
        std::cerr << to_string(r.status) << "  " << r.id << '\n';
    if (!all_pass(rs))
        throw Failed{};
}

Region named_region(const BlowupContext& ctx, const std::string& kind, int k)
{
    if (kind == "Z")
        return Region(region_Z(ctx));
    if (kind == "Zk")
        return Region(region_Zk(ctx, k));
    if (kind == "shell")
        return Region(region_shell(ctx, k));
    if (kind == "F")
        return region_F(ctx);
    if (kind == "hatZ")
        return hat_Zk(ctx, k);
    if (kind == "tildeZ")
        return tilde_Zk(ctx, k);
    if (kind == "tildeU")
        return tilde_Uk(ctx, k);
    throw InputError("unknown region kind " + kind);
}

std::vector<int> k_range(const BlowupContext& ctx, int k)
{
    if (k > 0)
        return {k};
    std::vector<int> out;
    for (int i = 1; i < static_cast<int>(ctx.dim()); ++i)
        out.push_back(i);
    return out;
}

std::vector<MirrorObject> objects(const std::string& s)
{
    if (s == "both")
        return {MirrorObject::Literal, MirrorObject::Shell};
    try {
        return {mirror_object_from_string(s)};
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for constructible sheaves on tori, toric blow-ups and their coherent counterparts"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--json-out", g.json_out, "Write the JSON result to this file instead of stdout");
    app.add_option("--svg-out", g.svg_out, "Write SVG output to this file");
    app.add_option("--jobs", g.jobs, "Number of OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "Seed for corpus ordering only");

    std::string in1, in2, list_a, list_b, kind = "Z", object = "literal";
    int k = 0, l = 0, max_rays = 6, a_cap = 4;
    long box = 2;
    bool antipodal = false;
    std::size_t cone = 0;

    // fan
    auto* fan = app.add_subcommand("fan", "Fan calculus");
    fan->require_subcommand(1);
    auto* fan_validate = fan->add_subcommand("validate", "Smoothness and completeness");
    fan_validate->add_option("fan", in1)->required();
    auto* fan_canonical = fan->add_subcommand("canonical", "Canonical ray order");
    fan_canonical->add_option("fan", in1)->required();
    auto* fan_mmp = fan->add_subcommand("mmp", "Blow down to a minimal model");
    fan_mmp->add_option("fan", in1)->required();
    auto* fan_blowup = fan->add_subcommand("blowup", "Star subdivision of a maximal cone");
    fan_blowup->add_option("fan", in1)->required();
    fan_blowup->add_option("--cone", cone, "Index of the maximal cone");
    auto* fan_predicates = fan->add_subcommand("predicates", "Zonotopal unimodular and cragged tests");
    fan_predicates->add_option("fan", in1)->required();

    // skeleton
    auto* skel = app.add_subcommand("skeleton", "Skeleton membership and refinement");
    skel->require_subcommand(1);
    auto* skel_member = skel->add_subcommand("member", "Is (x, xi) on the skeleton");
    skel_member->add_option("fan", in1)->required();
    skel_member->add_option("--x", list_a, "Point of M_R, comma separated")->required();
    skel_member->add_option("--xi", list_b, "Covector in N_R, comma separated")->required();
    auto* skel_refines = skel->add_subcommand("refines", "Does the fine fan's skeleton refine the coarse one");
    skel_refines->add_option("coarse", in1)->required();
    skel_refines->add_option("fine", in2)->required();

    // theta
    auto* theta = app.add_subcommand("theta", "Theta sheaf homomorphisms");
    theta->require_subcommand(1);
    auto* theta_hom = theta->add_subcommand("hom", "Lattice basis of Hom(theta(sigma), theta(tau)) in a box");
    theta_hom->add_option("fan", in1)->required();
    theta_hom->add_option("--sigma", list_a, "Ray indices of sigma")->required();
    theta_hom->add_option("--tau", list_b, "Ray indices of tau")->required();
    theta_hom->add_option("--box", box, "Half-width of the lattice box")->check(CLI::NonNegativeNumber);

    // regions
    auto* regions = app.add_subcommand("regions", "Blow-up regions");
    regions->require_subcommand(1);
    auto* reg_show = regions->add_subcommand("show", "Describe a region");
    reg_show->add_option("ctx", in1)->required();
    reg_show->add_option("--kind", kind, "Z, Zk, shell, F, hatZ, tildeZ or tildeU");
    reg_show->add_option("--k", k);
    auto* reg_partition = regions->add_subcommand("partition", "Box partition of Z_k minus hat Z_k");
    reg_partition->add_option("ctx", in1)->required();
    reg_partition->add_option("--k", k)->required();
    auto* reg_cech = regions->add_subcommand("cech", "Cech system of the exceptional ray");
    reg_cech->add_option("ctx", in1)->required();

    // sheaf
    auto* sheaf = app.add_subcommand("sheaf", "Cellular sheaves on the torus");
    sheaf->require_subcommand(1);
    auto* sh_object = sheaf->add_subcommand("object", "Emit p_* C_{Z_k} or its shell on the context complex");
    sh_object->add_option("ctx", in1)->required();
    sh_object->add_option("--k", k)->required();
    sh_object->add_option("--object", object, "literal or shell");
    auto* sh_coh = sheaf->add_subcommand("cohomology", "H^*(T, F)");
    sh_coh->add_option("sheaf", in1)->required();
    auto* sh_ext = sheaf->add_subcommand("ext", "Ext^*(F, G)");
    sh_ext->add_option("F", in1)->required();
    sh_ext->add_option("G", in2)->required();
    auto* sh_ss = sheaf->add_subcommand("ss", "Microsupport against a fan skeleton");
    sh_ss->add_option("sheaf", in1)->required();
    sh_ss->add_option("fan", in2)->required();
    sh_ss->add_flag("--antipodal", antipodal, "Test against the negated skeleton");

    // coherent
    auto* coh = app.add_subcommand("coh", "Coherent side");
    coh->require_subcommand(1);
    auto* coh_h = coh->add_subcommand("h", "Line bundle cohomology");
    coh_h->add_option("fan", in1)->required();
    coh_h->add_option("--div", list_a, "Coefficients a_rho, comma separated")->required();
    auto* coh_ext = coh->add_subcommand("ext-orlov", "Ext(O_E(kE), O_E(lE))");
    coh_ext->add_option("ctx", in1)->required();
    coh_ext->add_option("--k", k)->required();
    coh_ext->add_option("--l", l)->required();

    // verify
    auto* verify = app.add_subcommand("verify", "Cross-checks");
    verify->require_subcommand(1);
    auto* v_sod = verify->add_subcommand("sod", "Exceptionality, semiorthogonality and unit orthogonality");
    v_sod->add_option("ctx", in1)->required();
    v_sod->add_option("--k", k);
    v_sod->add_option("--l", l);
    v_sod->add_option("--object", object, "literal, shell or both");
    auto* v_cech = verify->add_subcommand("cech", "Cech quasi-isomorphism");
    v_cech->add_option("ctx", in1)->required();
    auto* v_step1 = verify->add_subcommand("step1", "Restriction isomorphisms on the gated corpus");
    v_step1->add_option("ctx", in1)->required();
    v_step1->add_option("--k", k);
    auto* v_mmp = verify->add_subcommand("mmp-suite", "MMP bookkeeping over enumerated surface fans");
    v_mmp->add_option("--max-rays", max_rays)->check(CLI::Range(3, 8));
    v_mmp->add_option("--a-cap", a_cap)->check(CLI::Range(0, 12));
    auto* v_ss = verify->add_subcommand("ss", "Microsupport soundness");
    v_ss->add_option("ctx", in1)->required();

    // plot
    auto* plot = app.add_subcommand("plot", "SVG output");
    plot->require_subcommand(1);
    auto* plot_fan = plot->add_subcommand("fan", "Draw a planar fan");
    plot_fan->add_option("fan", in1)->required();
    auto* plot_regions = plot->add_subcommand("regions", "Draw Z_k, F and the shells of a planar context");
    plot_regions->add_option("ctx", in1)->required();
    plot_regions->add_option("--k", k);

    // corpus
    auto* corpus = app.add_subcommand("corpus", "Enumerations");
    corpus->require_subcommand(1);
    auto* corpus_fans = corpus->add_subcommand("fans", "Smooth complete surface fans up to GL2(Z)");
    corpus_fans->add_option("--max-rays", max_rays)->check(CLI::Range(3, 8));
    corpus_fans->add_option("--a-cap", a_cap)->check(CLI::Range(0, 12));
    auto* corpus_step1 = corpus->add_subcommand("step1", "Step-one test sheaves with their SS gate");
    corpus_step1->add_option("ctx", in1)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (g.jobs > 0)
        omp_set_num_threads(g.jobs);

    try {
        auto load_fan = [&](const std::string& p) { return fan_from_json(read_json_file(p)); };
        auto load_ctx = [&](const std::string& p) { return context_from_json(read_json_file(p)); };

        if (fan_validate->parsed()) {
            auto f = load_fan(in1);
            auto r = validate_fan(f);
            emit(g, Json{{"smooth", r.smooth}, {"complete", r.complete}, {"violations", r.violations}});
        } else if (fan_canonical->parsed()) {
            emit(g, to_json(canonical_fan(load_fan(in1))));
        } else if (fan_mmp->parsed()) {
            emit(g, to_json(mmp_reduce(load_fan(in1))));
        } else if (fan_blowup->parsed()) {
            emit(g, to_json(star_subdivide(load_fan(in1), cone)));
        } else if (fan_predicates->parsed()) {
            auto f = load_fan(in1);
            emit(g, Json{{"zonotopal_unimodular", is_zonotopal_unimodular(f)}, {"cragged", is_cragged(f)}});
        } else if (skel_member->parsed()) {
            auto f = load_fan(in1);
            auto m = skeleton_member(f, parse_qvec(list_a), parse_qvec(list_b));
            Json j{{"member", m.member}};
            if (m.witness)
                j["witness"] = *m.witness;
            emit(g, j);
        } else if (skel_refines->parsed()) {
            emit(g, Json{{"refines", skeleton_refines(load_fan(in1), load_fan(in2))}});
        } else if (theta_hom->parsed()) {
            auto f = load_fan(in1);
            LatticeBox b(f.dim, {-box, box});
            Json pts = Json::array();
            for (const auto& m : hom_basis(f, parse_indices(list_a), parse_indices(list_b), b))
                pts.push_back(to_json(m));
            emit(g, Json{{"characters", pts}});
        } else if (reg_show->parsed()) {
            auto ctx = load_ctx(in1);
            emit(g, to_json(named_region(ctx, kind, k)));
        } else if (reg_partition->parsed()) {
            auto ctx = load_ctx(in1);
            Json pieces = Json::array();
            for (const auto& r : box_partition(ctx, k))
                pieces.push_back(to_json(r));
            emit(g, Json{{"pieces", pieces}, {"verified", verify_box_partition(ctx, k)}});
        } else if (reg_cech->parsed()) {
            auto ctx = load_ctx(in1);
            auto cs = build_cech_system(ctx);
            Json cones = Json::array();
            for (const auto& c : cs.cones)
                cones.push_back(Json{{"rays", c.rays}, {"chosen_dual", c.chosen_dual}, {"region", to_json(c.region)}});
            emit(g, Json{{"cones", cones}, {"choice_independent", cs.choice_independent}, {"covers", cs.covers}});
        } else if (sh_object->parsed()) {
            auto ctx = load_ctx(in1);
            auto o = objects(object);
            if (o.size() != 1)
                throw InputError("sheaf object: choose literal or shell");
            emit(g, to_json(mirror_object(context_complex(ctx), ctx, k, o[0])));
        } else if (sh_coh->parsed()) {
            auto f = sheaf_from_json(read_json_file(in1));
            emit(g, Json{{"cohomology", cohomology(f)}});
        } else if (sh_ext->parsed()) {
            auto f = sheaf_from_json(read_json_file(in1));
            auto h = sheaf_from_json(read_json_file(in2));
            // both documents rebuild their own complex; the poset must match cell for cell
            if (f.complex->families() != h.complex->families())
                throw InputError("sheaf ext: sheaves live on different complexes");
            CellularSheaf h2(f.complex);
            h2.rep.dims = h.rep.dims;
            h2.rep.maps = h.rep.maps;
            emit(g, Json{{"ext", ext_groups(f, h2)}});
        } else if (sh_ss->parsed()) {
            auto f = sheaf_from_json(read_json_file(in1));
            auto r = ss_contained_in_skeleton(f, load_fan(in2), antipodal);
            emit(g, to_json(r));
            if (!r.ok)
                throw Failed{};
        } else if (coh_h->parsed()) {
            auto f = load_fan(in1);
            ToricDivisor d;
            for (const auto& q : parse_qvec(list_a)) {
                if (q.get_den() != 1)
                    throw InputError("divisor coefficients must be integers");
                d.push_back(q.get_num().get_si());
            }
            emit(g, Json{{"h", line_bundle_cohomology(f, d)}});
        } else if (coh_ext->parsed()) {
            auto ctx = load_ctx(in1);
            emit(g, Json{{"ext", ext_orlov(ctx.dim(), k, l)}});
        } else if (v_sod->parsed()) {
            auto ctx = load_ctx(in1);
            auto cx = context_complex(ctx);
            std::vector<VerificationReport> rs;
            for (auto o : objects(object))
                for (int kk : k_range(ctx, k)) {
                    rs.push_back(check_exceptionality(ctx, cx, kk, o));
                    rs.push_back(check_unit_orthogonality(ctx, cx, kk, o));
                    for (int ll : k_range(ctx, l))
                        if (ll != kk)
                            rs.push_back(check_semiorthogonality(ctx, cx, kk, ll, o));
                }
            finish_reports(g, rs);
        } else if (v_cech->parsed()) {
            finish_reports(g, {check_cech_quasiiso(load_ctx(in1))});
        } else if (v_step1->parsed()) {
            auto ctx = load_ctx(in1);
            auto cx = context_complex(ctx);
            auto items = step1_corpus(ctx, cx);
            std::shuffle(items.begin(), items.end(), std::mt19937(g.seed));
            std::vector<VerificationReport> rs;
            for (int kk : k_range(ctx, k))
                rs.push_back(check_step1_restriction(ctx, cx, kk, items));
            finish_reports(g, rs);
        } else if (v_mmp->parsed()) {
            auto fans = enumerate_surface_fans(static_cast<std::size_t>(max_rays), a_cap);
            std::shuffle(fans.begin(), fans.end(), std::mt19937(g.seed));
            std::vector<VerificationReport> rs;
            for (const auto& f : fans)
                rs.push_back(check_blowup_bookkeeping(f));
            finish_reports(g, rs);
        } else if (v_ss->parsed()) {
            auto ctx = load_ctx(in1);
            std::vector<VerificationReport> rs{check_ss_calibration(),
                                               check_ss_trivial_sheaves({ctx.fan, ctx.blown_up}),
                                               check_ss_blowup_object(ctx, context_complex(ctx))};
            finish_reports(g, rs);
        } else if (plot_fan->parsed()) {
            emit_svg(g, svg_fan(load_fan(in1)));
        } else if (plot_regions->parsed()) {
            auto ctx = load_ctx(in1);
            if (ctx.dim() != 2)
                throw InputError("plot regions: planar contexts only");
            int kk = k > 0 ? k : 1;
            std::vector<SvgRegion> rs{{region_F(ctx), "#f0d890"}};
            for (int i = kk; i >= 1; --i)
                rs.push_back({Region(region_shell(ctx, i)), i % 2 ? "#7fa7d9" : "#d98f7f"});
            emit_svg(g, svg_regions(rs, Q(-kk - 1), Q(1)));
        } else if (corpus_fans->parsed()) {
            auto fans = enumerate_surface_fans(static_cast<std::size_t>(max_rays), a_cap);
            Json arr = Json::array();
            for (const auto& f : fans) {
                Json key = Json::array();
                for (const auto& c : surface_key(f))
                    key.push_back(c.get_si());
                arr.push_back(Json{{"fan", to_json(f)}, {"key", key}, {"minimal_model", to_string(mmp_reduce(f).result)}});
            }
            emit(g, Json{{"count", fans.size()}, {"fans", arr}});
        } else if (corpus_step1->parsed()) {
            auto ctx = load_ctx(in1);
            auto cx = context_complex(ctx);
            Fan base = ctx.in_basis(ctx.fan);
            Json arr = Json::array();
            for (const auto& item : step1_corpus(ctx, cx)) {
                std::string gate;
                try {
                    gate = ss_contained_in_skeleton(item.sheaf, base).ok ? "pass" : "skipped";
                } catch (const ComplexTooCoarse&) {
                    gate = "too coarse";
                }
                arr.push_back(Json{{"name", item.name}, {"gate", gate}});
            }
            emit(g, Json{{"sheaves", arr}});
        }
    } catch (const Failed&) {
        return 1;
    } catch (const InputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
