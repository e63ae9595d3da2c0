#pragma once

#include "descent/cuboid.hpp"
#include "descent/three_descent.hpp"
#include "descent/two_descent.hpp"

#include <json.hpp>

namespace descent {

using Json = nlohmann::ordered_json;

Json point_json(const Point& p);
Point point_from_json(const Json& j);

// Reports for the four single-curve entry points. Deterministic: same input
// and bounds give byte-identical serialization.
Json report_curve_two(const Int& a, const Int& c, const DescentBounds& bounds);
Json report_curve_three(const Int& e, const ThreeDescentBounds& bounds);
Json report_curve_torsion(const Int& a, const Int& b);
Json report_cuboid(const CoeffTable& table, Family family, const Rat& b, const Rat& c,
                   const DescentBounds& b2, const ThreeDescentBounds& b3);

// Structured record for degenerate or invalid inputs.
Json error_report(const std::string& mode, const Json& input, const std::string& status,
                  const std::string& message);

bool report_has_unknown(const Json& report);

// Flattened one-row-per-curve summary.
std::string csv_header();
std::string csv_row(const Json& report);

} // namespace descent
