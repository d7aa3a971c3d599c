#include "slope/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "slope/error.hpp"

namespace slope {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Error parse_error(std::string_view what, std::string_view text) {
    return Error(ErrorKind::ParseError, fmt::format("cannot parse {} from '{}'", what, text));
}

double parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double x = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(x))
        throw parse_error(what, text);
    return x;
}

int parse_count(std::string_view text, std::string_view what) {
    text = trim(text);
    int n = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) throw parse_error(what, text);
    return n;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// key=value pairs after the family name, comma separated
std::vector<std::pair<std::string_view, double>> curve_args(std::string_view args, std::string_view spec) {
    std::vector<std::pair<std::string_view, double>> out;
    if (args.empty()) return out;
    for (auto item : split(args, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw parse_error("curve parameter", spec);
        out.emplace_back(trim(item.substr(0, eq)), parse_angle(item.substr(eq + 1)));
    }
    return out;
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path, std::size_t columns,
                                                  std::string_view expected_header) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::IoError, fmt::format("cannot open {}", path));
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::ParseError, fmt::format("{}: missing header", path));
    if (trim(line) != expected_header)
        throw Error(ErrorKind::ParseError, fmt::format("{}: expected header '{}', got '{}'", path, expected_header, trim(line)));
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split(trim(line), ',');
        if (cells.size() != columns)
            throw Error(ErrorKind::ParseError, fmt::format("{}:{}: expected {} columns", path, lineno, columns));
        std::vector<double> row;
        for (auto c : cells) row.push_back(parse_number(c, fmt::format("{}:{} value", path, lineno)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

double parse_angle(std::string_view text) {
    const std::string_view all = trim(text);
    const auto pos = all.find("pi");
    if (pos == std::string_view::npos) return parse_number(all, "number");
    std::string_view coef = trim(all.substr(0, pos));
    std::string_view rest = trim(all.substr(pos + 2));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    double c = 1.0;
    if (coef == "-") {
        c = -1.0;
    } else if (!coef.empty() && coef != "+") {
        c = parse_number(coef, "angle");
    }
    double den = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw parse_error("angle", text);
        den = parse_number(rest.substr(1), "angle");
        if (den == 0.0) throw parse_error("angle", text);
    }
    return c * std::numbers::pi / den;
}

MeshRange parse_range(std::string_view text) {
    const auto parts = split(trim(text), ':');
    if (parts.size() != 3) throw parse_error("range min:max:n", text);
    MeshRange r{parse_angle(parts[0]), parse_angle(parts[1]), parse_count(parts[2], "sample count")};
    if (r.n < 2) throw Error(ErrorKind::InvalidParam, fmt::format("range '{}' needs at least 2 samples", text));
    if (!(r.hi > r.lo)) throw Error(ErrorKind::InvalidParam, fmt::format("range '{}' is empty", text));
    return r;
}

Interval parse_interval(std::string_view text) {
    const auto parts = split(trim(text), ':');
    if (parts.size() != 2 && parts.size() != 3) throw parse_error("interval min:max", text);
    Interval iv{parse_angle(parts[0]), parse_angle(parts[1])};
    if (!(iv.hi > iv.lo)) throw Error(ErrorKind::InvalidParam, fmt::format("interval '{}' is empty", text));
    return iv;
}

Grid parse_grid(std::string_view text) {
    const auto parts = split(trim(text), 'x');
    if (parts.size() != 2) throw parse_error("grid NxM", text);
    Grid g{parse_count(parts[0], "grid size"), parse_count(parts[1], "grid size")};
    if (g.nu < 2 || g.nv < 2) throw Error(ErrorKind::InvalidParam, fmt::format("grid '{}' must be at least 2x2", text));
    return g;
}

SphereCurve parse_curve_spec(std::string_view text) {
    const std::string_view spec = trim(text);
    const auto colon = spec.find(':');
    const std::string_view family = spec.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    if (family == "samples") {
        if (args.empty()) throw parse_error("sample file path", spec);
        return read_curve_samples(std::string(args));
    }

    CurveParams params;
    bool has_v1 = false;
    for (const auto& [key, value] : curve_args(args, spec)) {
        if (family == "smallcircle" && key == "psi0") {
            params.psi0 = value;
        } else if (family == "spherespiral" && key == "v0") {
            params.v0 = value;
        } else if (family == "spherespiral" && key == "v1") {
            params.v1 = value;
            has_v1 = true;
        } else {
            throw Error(ErrorKind::ParseError, fmt::format("unknown parameter '{}' for curve '{}'", key, family));
        }
    }
    if (family == "circle") return builtin_curve(CurveFamily::GreatCircle, params);
    if (family == "smallcircle") return builtin_curve(CurveFamily::SmallCircle, params);
    if (family == "figure8") return builtin_curve(CurveFamily::Figure8, params);
    if (family == "conecircle") return builtin_curve(CurveFamily::ConeCircle, params);
    if (family == "spherespiral") {
        if (!has_v1 && params.v0 >= params.v1) params.v1 = params.v0 + 3.0;
        return builtin_curve(CurveFamily::SphereSpiral, params);
    }
    throw Error(ErrorKind::ParseError, fmt::format("unknown curve '{}'", family));
}

SphereCurve read_curve_samples(const std::string& path) {
    const auto rows = read_numeric_csv(path, 4, "v,x,y,z");
    std::vector<double> v;
    std::vector<Vec3> p;
    for (const auto& r : rows) {
        v.push_back(r[0]);
        p.push_back({r[1], r[2], r[3]});
    }
    return sampled_curve(std::move(v), std::move(p), "samples:" + path);
}

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

void write_csv(std::ostream& os, const PlanarCurveTrace& trace) {
    std::string out = "t,x,y\n";
    for (const auto& s : trace.samples) fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g},{:.17g}\n", s.t, s.x, s.y);
    os << out;
}

void write_csv(std::ostream& os, const SpaceCurveTrace& trace) {
    std::string out = "t,x,y,z\n";
    for (const auto& s : trace.samples)
        fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g},{:.17g},{:.17g}\n", s.t, s.p.x, s.p.y, s.p.z);
    os << out;
}

SpaceCurveTrace read_space_trace(const std::string& path) {
    SpaceCurveTrace out;
    out.meta = path;
    for (const auto& r : read_numeric_csv(path, 4, "t,x,y,z")) out.samples.push_back({r[0], {r[1], r[2], r[3]}});
    return out;
}

KeyValues report_fields(const VerificationReport& r) {
    return {
        {"max_angle_dev", format_real(r.max_angle_dev)},
        {"max_norm_dev", format_real(r.max_norm_dev)},
        {"max_ode_residual", format_real(r.max_ode_residual)},
        {"max_k1_dev", format_real(r.max_k1_dev)},
        {"max_k1_dir_angle", format_real(r.max_k1_dir_angle)},
        {"max_lambda_dev", format_real(r.max_lambda_dev)},
        {"max_connection_dev", format_real(r.max_connection_dev)},
        {"max_rv_chain_rule_dev", format_real(r.max_rv_chain_rule_dev)},
        {"max_rv_printed_dev", format_real(r.max_rv_printed_dev)},
        {"lambda_sign", std::to_string(r.lambda_sign)},
        {"singular_count", std::to_string(r.singular_count)},
        {"umbilic_count", std::to_string(r.umbilic_count)},
        {"samples", std::to_string(r.samples)},
    };
}

std::string key_value_text(const KeyValues& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::string csv_row_text(const KeyValues& kv) {
    std::string head, row;
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) {
            head += ',';
            row += ',';
        }
        head += kv[i].first;
        row += kv[i].second;
    }
    return head + "\n" + row + "\n";
}

}  // namespace slope
