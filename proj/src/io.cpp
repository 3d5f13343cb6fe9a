#include "nccc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nccc {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

void only_keys(const Json& j, std::initializer_list<const char*> keys, const char* what)
{
    if (!j.is_object())
        bad(std::string(what) + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
            bad(std::string(what) + ": unknown key '" + it.key() + "'");
}

const Json& need(const Json& j, const char* key, const char* what)
{
    auto it = j.find(key);
    if (it == j.end())
        bad(std::string(what) + ": missing key '" + key + "'");
    return *it;
}

std::size_t as_index(const Json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        bad(std::string(what) + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

Json dims_json(const GradedDims& d) { return Json(d); }

GradedDims dims_from(const Json& j)
{
    if (!j.is_array())
        bad("graded dims: expected an array");
    GradedDims out;
    for (const auto& x : j)
        out.push_back(as_index(x, "graded dims"));
    return out;
}

}  // namespace

Json to_json(const Q& q)
{
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return q.get_num().get_si();
    return to_string(q);
}

Q q_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Q(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            bad(std::string("rational: ") + e.what());
        }
    }
    bad("rational: expected an integer or a string p/q");
}

Json to_json(const QVec& v)
{
    Json out = Json::array();
    for (const auto& q : v)
        out.push_back(to_json(q));
    return out;
}

QVec qvec_from_json(const Json& j)
{
    if (!j.is_array())
        bad("vector: expected an array");
    QVec out;
    for (const auto& x : j)
        out.push_back(q_from_json(x));
    return out;
}

Json to_json(const IntVec& v)
{
    Json out = Json::array();
    for (const auto& z : v) {
        if (z.fits_slong_p())
            out.push_back(z.get_si());
        else
            out.push_back(to_string(z));
    }
    return out;
}

IntVec intvec_from_json(const Json& j)
{
    IntVec out;
    for (const auto& q : qvec_from_json(j)) {
        if (q.get_den() != 1)
            bad("integer vector: entry " + to_string(q) + " is not an integer");
        out.push_back(q.get_num());
    }
    return out;
}

Json to_json(const Fan& f)
{
    Json rays = Json::array();
    for (const auto& r : f.rays)
        rays.push_back(to_json(r));
    return Json{{"dim", f.dim}, {"rays", rays}, {"max_cones", f.max_cones}};
}

Fan fan_from_json(const Json& j)
{
    only_keys(j, {"dim", "rays", "max_cones"}, "fan");
    Fan f;
    f.dim = as_index(need(j, "dim", "fan"), "fan.dim");
    const Json& rays = need(j, "rays", "fan");
    const Json& cones = need(j, "max_cones", "fan");
    if (!rays.is_array() || !cones.is_array())
        bad("fan: rays and max_cones must be arrays");
    for (const auto& r : rays) {
        f.rays.push_back(intvec_from_json(r));
        if (f.rays.back().size() != f.dim)
            bad("fan: ray of the wrong dimension");
    }
    for (const auto& c : cones) {
        if (!c.is_array())
            bad("fan: cone must be an array of ray indices");
        std::vector<std::size_t> idx;
        for (const auto& i : c)
            idx.push_back(as_index(i, "fan cone"));
        f.max_cones.push_back(std::move(idx));
    }
    try {
        validate_fan(f);
    } catch (const std::invalid_argument& e) {
        bad(std::string("fan: ") + e.what());
    }
    return f;
}

Json to_json(const BlowupContext& ctx)
{
    return Json{{"name", ctx.name}, {"fan", to_json(ctx.fan)}, {"cone", ctx.cone}};
}

BlowupContext context_from_json(const Json& j)
{
    if (j.is_object() && j.contains("standard")) {
        only_keys(j, {"standard"}, "context");
        if (!j["standard"].is_string())
            bad("context: standard must be a name");
        try {
            return standard_context(j["standard"].get<std::string>());
        } catch (const std::invalid_argument& e) {
            bad(std::string("context: ") + e.what());
        }
    }
    only_keys(j, {"name", "fan", "cone"}, "context");
    Fan f = fan_from_json(need(j, "fan", "context"));
    std::size_t cone = as_index(need(j, "cone", "context"), "context.cone");
    if (cone >= f.max_cones.size())
        bad("context: cone index out of range");
    std::string name;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            bad("context: name must be a string");
        name = j["name"].get<std::string>();
    }
    try {
        return make_context(f, cone, name);
    } catch (const std::invalid_argument& e) {
        bad(std::string("context: ") + e.what());
    }
}

Json to_json(const Constraint& c)
{
    return Json{{"normal", to_json(c.normal)}, {"offset", to_json(c.offset)}, {"strict", c.strict}};
}

Constraint constraint_from_json(const Json& j)
{
    only_keys(j, {"normal", "offset", "strict"}, "constraint");
    Constraint c;
    c.normal = qvec_from_json(need(j, "normal", "constraint"));
    c.offset = q_from_json(need(j, "offset", "constraint"));
    if (j.contains("strict")) {
        if (!j["strict"].is_boolean())
            bad("constraint: strict must be a boolean");
        c.strict = j["strict"].get<bool>();
    }
    return c;
}

Json to_json(const NncPolyhedron& p)
{
    Json cs = Json::array();
    for (const auto& c : p.constraints())
        cs.push_back(to_json(c));
    return Json{{"dim", p.dim()}, {"constraints", cs}};
}

NncPolyhedron polyhedron_from_json(const Json& j)
{
    only_keys(j, {"dim", "constraints"}, "polyhedron");
    std::size_t n = as_index(need(j, "dim", "polyhedron"), "polyhedron.dim");
    const Json& cs = need(j, "constraints", "polyhedron");
    if (!cs.is_array())
        bad("polyhedron: constraints must be an array");
    std::vector<Constraint> out;
    for (const auto& c : cs) {
        out.push_back(constraint_from_json(c));
        if (out.back().normal.size() != n)
            bad("polyhedron: constraint of the wrong dimension");
    }
    return NncPolyhedron(n, std::move(out));
}

Json to_json(const Region& r)
{
    Json pieces = Json::array();
    for (const auto& p : r.pieces())
        pieces.push_back(to_json(p));
    Json ex = Json::array();
    for (const auto& x : r.excluded())
        ex.push_back(to_json(x));
    return Json{{"dim", r.dim()}, {"pieces", pieces}, {"excluded", ex}};
}

Region region_from_json(const Json& j)
{
    only_keys(j, {"dim", "pieces", "excluded"}, "region");
    std::size_t n = as_index(need(j, "dim", "region"), "region.dim");
    std::vector<NncPolyhedron> pieces;
    for (const auto& p : need(j, "pieces", "region")) {
        pieces.push_back(polyhedron_from_json(p));
        if (pieces.back().dim() != n)
            bad("region: piece of the wrong dimension");
    }
    std::vector<QVec> ex;
    if (j.contains("excluded"))
        for (const auto& x : j["excluded"]) {
            ex.push_back(qvec_from_json(x));
            if (ex.back().size() != n)
                bad("region: excluded point of the wrong dimension");
        }
    return Region(n, std::move(pieces), std::move(ex));
}

Json to_json(const TorusCellComplex& cx)
{
    Json fams = Json::array();
    for (const auto& f : cx.families())
        fams.push_back(Json{{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}});
    Json fvec = Json::array();
    for (std::size_t d = 0; d <= cx.dim(); ++d)
        fvec.push_back(cx.cells_of_dim(d).size());
    return Json{{"dim", cx.dim()}, {"families", fams}, {"cells", cx.size()}, {"f_vector", fvec}};
}

ComplexPtr complex_from_json(const Json& j)
{
    only_keys(j, {"dim", "families", "cells", "f_vector"}, "complex");
    std::size_t n = as_index(need(j, "dim", "complex"), "complex.dim");
    if (n == 0)
        bad("complex: dimension must be positive");
    std::vector<PeriodicFamily> fams;
    for (const auto& f : need(j, "families", "complex")) {
        only_keys(f, {"normal", "offset"}, "family");
        QVec a = qvec_from_json(need(f, "normal", "family"));
        if (a.size() != n || std::all_of(a.begin(), a.end(), [](const Q& q) { return sgn(q) == 0; }))
            bad("family: normal must be a nonzero vector of the complex dimension");
        fams.push_back(periodic_family(a, q_from_json(need(f, "offset", "family"))));
    }
    auto cx = TorusCellComplex::build(n, fams);
    if (j.contains("cells") && as_index(j["cells"], "complex.cells") != cx->size())
        bad("complex: cell count does not match the families");
    return cx;
}

Json to_json(const CellularSheaf& f)
{
    Json maps = Json::array();
    const auto& rels = f.complex->poset()->relations();
    for (std::size_t i = 0; i < rels.size(); ++i) {
        const QMatrix& m = f.rep.maps[i];
        if (m.empty())
            continue;
        Json rows = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r)
            rows.push_back(to_json(m.row(r)));
        maps.push_back(Json{{"lo", rels[i].first}, {"hi", rels[i].second}, {"matrix", rows}});
    }
    return Json{{"complex", to_json(*f.complex)}, {"dims", f.rep.dims}, {"maps", maps}};
}

CellularSheaf sheaf_from_json(const Json& j)
{
    only_keys(j, {"complex", "dims", "maps"}, "sheaf");
    auto cx = complex_from_json(need(j, "complex", "sheaf"));
    CellularSheaf f(cx);
    auto dims = dims_from(need(j, "dims", "sheaf"));
    if (dims.size() != cx->size())
        bad("sheaf: one stalk dimension per cell expected");
    f.rep.dims = dims;
    const auto& rels = cx->poset()->relations();
    for (std::size_t i = 0; i < rels.size(); ++i)
        f.rep.maps[i] = QMatrix(dims[rels[i].second], dims[rels[i].first]);
    for (const auto& m : need(j, "maps", "sheaf")) {
        only_keys(m, {"lo", "hi", "matrix"}, "sheaf map");
        std::size_t lo = as_index(need(m, "lo", "sheaf map"), "sheaf map.lo");
        std::size_t hi = as_index(need(m, "hi", "sheaf map"), "sheaf map.hi");
        if (lo >= cx->size() || hi >= cx->size() || !cx->poset()->less(lo, hi))
            bad("sheaf map: not a face relation");
        const Json& rows = need(m, "matrix", "sheaf map");
        if (!rows.is_array() || rows.size() != dims[hi])
            bad("sheaf map: wrong number of rows");
        QMatrix mat(dims[hi], dims[lo]);
        for (std::size_t r = 0; r < dims[hi]; ++r) {
            QVec row = qvec_from_json(rows[r]);
            if (row.size() != dims[lo])
                bad("sheaf map: wrong number of columns");
            for (std::size_t c = 0; c < row.size(); ++c)
                mat(r, c) = row[c];
        }
        f.rep.maps[cx->poset()->relation_index(lo, hi)] = std::move(mat);
    }
    if (!f.is_valid())
        bad("sheaf: generization maps do not compose");
    return f;
}

Json to_json(const MmpResult& r)
{
    Json trace = Json::array();
    for (const auto& v : r.trace)
        trace.push_back(to_json(v));
    Json fans = Json::array();
    for (const auto& f : r.fans)
        fans.push_back(to_json(f));
    return Json{{"trace", trace}, {"fans", fans}, {"result", to_string(r.result)}};
}

Json to_json(const SSReport& r)
{
    Json v = Json::array();
    for (const auto& x : r.violations)
        v.push_back(Json{{"cell", x.cell}, {"xi", to_json(x.xi)}, {"morse", dims_json(x.morse)}});
    return Json{{"ok", r.ok}, {"antipodal", r.antipodal}, {"tested", r.tested}, {"violations", v}};
}

Json to_json(const VerificationReport& r)
{
    Json computed = Json::object(), oracle = Json::object();
    for (const auto& [k, v] : r.computed)
        computed[k] = dims_json(v);
    for (const auto& [k, v] : r.oracle)
        oracle[k] = dims_json(v);
    Json out{{"id", r.id},     {"status", to_string(r.status)}, {"computed", computed},
             {"oracle", oracle}, {"context", r.context},          {"notes", r.notes}};
    if (!r.reproducer.empty())
        out["reproducer"] = Json::parse(r.reproducer);
    return out;
}

VerificationReport report_from_json(const Json& j)
{
    only_keys(j, {"id", "status", "computed", "oracle", "context", "notes", "reproducer"}, "report");
    VerificationReport r;
    try {
        r.id = need(j, "id", "report").get<std::string>();
        r.status = check_status_from_string(need(j, "status", "report").get<std::string>());
        for (const auto& [k, v] : need(j, "computed", "report").items())
            r.computed[k] = dims_from(v);
        for (const auto& [k, v] : need(j, "oracle", "report").items())
            r.oracle[k] = dims_from(v);
        r.context = need(j, "context", "report").get<std::map<std::string, std::string>>();
        r.notes = need(j, "notes", "report").get<std::vector<std::string>>();
    } catch (const Json::exception& e) {
        bad(std::string("report: ") + e.what());
    } catch (const std::invalid_argument& e) {
        bad(std::string("report: ") + e.what());
    }
    if (j.contains("reproducer"))
        r.reproducer = j["reproducer"].dump();
    return r;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        bad("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

namespace {

constexpr double kSize = 400.0;

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

struct Frame {
    double lo, hi;
    double x(const Q& v) const { return (v.get_d() - lo) / (hi - lo) * kSize; }
    double y(const Q& v) const { return kSize - (v.get_d() - lo) / (hi - lo) * kSize; }
};

std::string svg_open()
{
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kSize) + "\" height=\"" + fmt(kSize) +
           "\" viewBox=\"0 0 " + fmt(kSize) + " " + fmt(kSize) + "\">\n";
}

// Vertices of the closure of a bounded planar polyhedron, in counterclockwise order.
std::vector<QVec> polygon(const std::vector<Constraint>& cs)
{
    std::vector<QVec> pts;
    for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = a + 1; b < cs.size(); ++b) {
            QMatrix m(2, 2);
            m(0, 0) = cs[a].normal[0];
            m(0, 1) = cs[a].normal[1];
            m(1, 0) = cs[b].normal[0];
            m(1, 1) = cs[b].normal[1];
            if (sgn(determinant(m)) == 0)
                continue;
            QVec p = *solve(m, QVec{cs[a].offset, cs[b].offset});
            bool inside = std::all_of(cs.begin(), cs.end(), [&](const Constraint& c) { return dot(c.normal, p) >= c.offset; });
            if (inside && std::find(pts.begin(), pts.end(), p) == pts.end())
                pts.push_back(p);
        }
    if (pts.size() < 3)
        return pts;
    QVec c{Q(0), Q(0)};
    for (const auto& p : pts) {
        c[0] += p[0];
        c[1] += p[1];
    }
    c[0] /= Q(static_cast<long>(pts.size()));
    c[1] /= Q(static_cast<long>(pts.size()));
    std::sort(pts.begin(), pts.end(), [&](const QVec& p, const QVec& q) {
        return std::atan2(Q(p[1] - c[1]).get_d(), Q(p[0] - c[0]).get_d()) <
               std::atan2(Q(q[1] - c[1]).get_d(), Q(q[0] - c[0]).get_d());
    });
    return pts;
}

}  // namespace

std::string svg_fan(const Fan& f)
{
    if (f.dim != 2)
        throw std::invalid_argument("svg_fan: only two-dimensional fans");
    double reach = 1;
    for (const auto& r : f.rays)
        reach = std::max({reach, std::abs(r[0].get_d()), std::abs(r[1].get_d())});
    Frame fr{-reach - 0.5, reach + 0.5};
    std::string out = svg_open();
    const QVec o{Q(0), Q(0)};
    for (const auto& c : f.max_cones) {
        out += "<polygon points=\"" + fmt(fr.x(o[0])) + "," + fmt(fr.y(o[1]));
        for (auto i : c)
            out += " " + fmt(fr.x(Q(f.rays[i][0]))) + "," + fmt(fr.y(Q(f.rays[i][1])));
        out += "\" fill=\"#dde6f0\" stroke=\"none\"/>\n";
    }
    for (const auto& r : f.rays) {
        out += "<line x1=\"" + fmt(fr.x(o[0])) + "\" y1=\"" + fmt(fr.y(o[1])) + "\" x2=\"" + fmt(fr.x(Q(r[0]))) +
               "\" y2=\"" + fmt(fr.y(Q(r[1]))) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        out += "<circle cx=\"" + fmt(fr.x(Q(r[0]))) + "\" cy=\"" + fmt(fr.y(Q(r[1]))) + "\" r=\"3\" fill=\"black\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string svg_regions(const std::vector<SvgRegion>& regions, const Q& lo, const Q& hi)
{
    if (!(lo < hi))
        throw std::invalid_argument("svg_regions: empty window");
    Frame fr{lo.get_d(), hi.get_d()};
    std::string out = svg_open();
    for (Q t = ceil_q(lo); t <= hi; t += 1) {
        out += "<line x1=\"" + fmt(fr.x(t)) + "\" y1=\"0\" x2=\"" + fmt(fr.x(t)) + "\" y2=\"" + fmt(kSize) +
               "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
        out += "<line x1=\"0\" y1=\"" + fmt(fr.y(t)) + "\" x2=\"" + fmt(kSize) + "\" y2=\"" + fmt(fr.y(t)) +
               "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
    }
    for (const auto& sr : regions) {
        if (sr.region.dim() != 2)
            throw std::invalid_argument("svg_regions: only planar regions");
        for (const auto& piece : sr.region.pieces()) {
            std::vector<Constraint> cs = piece.constraints();
            const std::size_t own = cs.size();
            for (std::size_t i = 0; i < 2; ++i) {
                QVec e(2), ne(2);
                e[i] = 1;
                ne[i] = -1;
                cs.push_back({e, lo, false});
                cs.push_back({ne, -hi, false});
            }
            auto pts = polygon(cs);
            if (pts.empty())
                continue;
            if (pts.size() >= 3) {
                out += "<polygon points=\"";
                for (std::size_t i = 0; i < pts.size(); ++i)
                    out += (i ? " " : "") + fmt(fr.x(pts[i][0])) + "," + fmt(fr.y(pts[i][1]));
                out += "\" fill=\"" + sr.fill + "\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
            }
            const std::size_t m = pts.size() >= 3 ? pts.size() : pts.size() - 1;
            for (std::size_t i = 0; i < m; ++i) {
                const QVec& p = pts[i];
                const QVec& q = pts[(i + 1) % pts.size()];
                std::optional<bool> strict;
                for (std::size_t c = 0; c < own; ++c)
                    if (dot(cs[c].normal, p) == cs[c].offset && dot(cs[c].normal, q) == cs[c].offset)
                        strict = strict.value_or(false) || cs[c].strict;
                if (!strict && pts.size() >= 3)
                    continue;  // window edge
                out += "<line x1=\"" + fmt(fr.x(p[0])) + "\" y1=\"" + fmt(fr.y(p[1])) + "\" x2=\"" + fmt(fr.x(q[0])) +
                       "\" y2=\"" + fmt(fr.y(q[1])) + "\" stroke=\"black\" stroke-width=\"1.5\"" +
                       (strict.value_or(false) ? " stroke-dasharray=\"5,4\"" : "") + "/>\n";
            }
            if (pts.size() == 1)
                out += "<circle cx=\"" + fmt(fr.x(pts[0][0])) + "\" cy=\"" + fmt(fr.y(pts[0][1])) +
                       "\" r=\"3\" fill=\"black\"/>\n";
        }
        for (const auto& x : sr.region.excluded())
            out += "<circle cx=\"" + fmt(fr.x(x[0])) + "\" cy=\"" + fmt(fr.y(x[1])) +
                   "\" r=\"3.5\" fill=\"white\" stroke=\"black\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace nccc
