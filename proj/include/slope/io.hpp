#pragma once

// Text formats: argument micro-formats, CSV traces, verification reports.

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slope/diffgeo.hpp"
#include "slope/mesh.hpp"
#include "slope/sphere_curve.hpp"
#include "slope/spirals.hpp"

namespace slope {

/// Decimal, `pi`, `pi/k`, `k*pi`, `kpi` or `kpi/m`. Throws ParseError.
double parse_angle(std::string_view text);

/// `min:max:n` with n >= 2 and max > min; endpoints accept parse_angle syntax.
MeshRange parse_range(std::string_view text);

/// `min:max` (a count, if present, is ignored).
Interval parse_interval(std::string_view text);

/// `NxM`, both at least 2.
Grid parse_grid(std::string_view text);

/// `circle`, `smallcircle:psi0=<a>`, `figure8`, `spherespiral:v0=<a>[,v1=<b>]`,
/// `conecircle` or `samples:<path.csv>` (header `v,x,y,z`).
SphereCurve parse_curve_spec(std::string_view text);

/// Rows of `v,x,y,z` after a header line. Throws IoError, ParseError.
SphereCurve read_curve_samples(const std::string& path);

void write_csv(std::ostream& os, const PlanarCurveTrace& trace);
void write_csv(std::ostream& os, const SpaceCurveTrace& trace);

/// Reads `t,x,y,z` rows after a header line.
SpaceCurveTrace read_space_trace(const std::string& path);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Report fields in a fixed order, numbers with 17 significant digits.
KeyValues report_fields(const VerificationReport& r);

/// One `key=value` line per field.
std::string key_value_text(const KeyValues& kv);

/// Header row plus one value row.
std::string csv_row_text(const KeyValues& kv);

std::string format_real(double x);

}  // namespace slope
