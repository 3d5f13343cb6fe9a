#pragma once

#include "nccc/fan.hpp"
#include "nccc/regions.hpp"
#include "nccc/verifier.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace nccc {

using Json = nlohmann::json;

/// Malformed or inconsistent input document.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Json to_json(const Q& q);
Q q_from_json(const Json& j);
Json to_json(const QVec& v);
QVec qvec_from_json(const Json& j);
Json to_json(const IntVec& v);
IntVec intvec_from_json(const Json& j);

/// {"dim", "rays", "max_cones"}; validated on read.
Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);

/// {"name", "fan", "cone"}; {"standard": name} is accepted on read.
Json to_json(const BlowupContext& ctx);
BlowupContext context_from_json(const Json& j);

Json to_json(const Constraint& c);
Constraint constraint_from_json(const Json& j);
Json to_json(const NncPolyhedron& p);
NncPolyhedron polyhedron_from_json(const Json& j);
Json to_json(const Region& r);
Region region_from_json(const Json& j);

/// Families plus a cell summary; reading rebuilds from the families.
Json to_json(const TorusCellComplex& cx);
ComplexPtr complex_from_json(const Json& j);

/// Complex families, stalk dims and generization maps listed per strict relation.
Json to_json(const CellularSheaf& f);
CellularSheaf sheaf_from_json(const Json& j);

Json to_json(const MmpResult& r);
Json to_json(const SSReport& r);

Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// SVG of a two-dimensional fan: rays and shaded maximal cones.
std::string svg_fan(const Fan& f);

struct SvgRegion {
    Region region;
    std::string fill;
};

/// SVG of planar regions in the box [lo, hi]^2: closed edges solid, strict edges dashed,
/// removed points as open circles.
std::string svg_regions(const std::vector<SvgRegion>& regions, const Q& lo, const Q& hi);

}  // namespace nccc
