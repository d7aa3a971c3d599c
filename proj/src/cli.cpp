#include "slope/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "slope/diffgeo.hpp"
#include "slope/io.hpp"
#include "slope/mesh.hpp"
#include "slope/spirals.hpp"

namespace slope {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParam:
        case ErrorKind::DomainError:
        case ErrorKind::ParseError:
        case ErrorKind::OutOfRange:
        case ErrorKind::NotUnitSpeed: return 2;
        case ErrorKind::IoError: return 3;
        default: return 1;
    }
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Options {
    std::string theta;
    std::string curve = "circle";
    std::string u;
    std::string v;
    std::string grid;
    std::string mode = "analytic";
    std::string output;
    bool csv = false;
    int threads = 1;

    // spiral / loxodrome / helix / sphere
    double a = 1.0;
    double b = 1.0;
    bool golden = false;
    std::string t;
    int sign = 1;
    std::string phi;
    bool stereo = false;
    std::string input;
    double radius = 1.0;
};

JetMode parse_mode(const std::string& m) {
    if (m == "analytic") return JetMode::Analytic;
    if (m == "oracle") return JetMode::Oracle;
    throw Error(ErrorKind::ParseError, fmt::format("mode must be analytic or oracle, got '{}'", m));
}

double parse_theta(const std::string& text) {
    const double theta = parse_angle(text);
    if (theta == 0.0)
        throw Error(ErrorKind::InvalidParam, "theta = 0 is the sphere branch; use the 'sphere' subcommand");
    if (!(theta > 0.0 && theta <= kPi / 2 + 1e-15))
        throw Error(ErrorKind::InvalidParam, fmt::format("theta {} outside (0, pi/2]", theta));
    return std::min(theta, kPi / 2);
}

template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorKind::IoError, fmt::format("cannot open {} for writing", path));
    write(os);
    if (!os) throw Error(ErrorKind::IoError, fmt::format("write to {} failed", path));
}

MeshRange range_or(const std::string& text, MeshRange fallback) { return text.empty() ? fallback : parse_range(text); }

std::string report_text(const VerificationReport& r, bool ok, bool csv) {
    KeyValues kv = report_fields(r);
    kv.emplace_back("passed", ok ? "1" : "0");
    return csv ? csv_row_text(kv) : key_value_text(kv);
}

int cmd_surface(const Options& o, std::ostream& err) {
    const double theta = parse_theta(o.theta);
    const SphereCurve curve = parse_curve_spec(o.curve);
    const MeshRange u = range_or(o.u, {0.1, 4.0, 200});
    if (!(u.lo > 0.0)) throw Error(ErrorKind::DomainError, "u range must start above 0");
    const SlopeSurface s(theta, curve, {u.lo, u.hi}, parse_mode(o.mode));
    const MeshRange v = range_or(o.v, {s.v_domain().lo, s.v_domain().hi, 200});
    const Mesh mesh = sample_mesh(s, u, v, o.threads);
    if (o.output.empty()) throw Error(ErrorKind::InvalidParam, "surface needs -o <path.obj>");
    write_obj(mesh, o.output);

    const Grid grid = o.grid.empty() ? Grid{32, 32} : parse_grid(o.grid);
    const VerificationReport r = verify_surface(s, grid);
    const bool ok = passes(r, default_thresholds(s.mode()));
    err << fmt::format("wrote {}: {} vertices, {} faces, {} quads skipped{}\n", o.output, mesh.vertices.size(),
                       mesh.faces.size(), mesh.degenerate_skipped, mesh.v_seam ? ", periodic seam" : "");
    err << report_text(r, ok, false);
    return ok ? 0 : 1;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const double theta = parse_theta(o.theta);
    const SphereCurve curve = parse_curve_spec(o.curve);
    const Interval u = o.u.empty() ? kDefaultUDomain : parse_interval(o.u);
    const SlopeSurface s(theta, curve, u, parse_mode(o.mode));
    const Grid grid = o.grid.empty() ? Grid{} : parse_grid(o.grid);
    const VerificationReport r = verify_surface(s, grid);
    const bool ok = passes(r, default_thresholds(s.mode()));
    emit(o.output, out, [&](std::ostream& os) { os << report_text(r, ok, o.csv); });
    return ok ? 0 : 1;
}

int cmd_spiral(const Options& o, std::ostream& out, std::ostream& err) {
    const MeshRange t = range_or(o.t, {0.0, 6.0 * kPi, 1000});
    double theta = 0.0;
    PlanarCurveTrace trace;
    if (o.golden) {
        trace = golden_spiral(o.a, {t.lo, t.hi, t.n});
        theta = std::atan2(1.0, std::log(kGoldenRatio) / (kPi / 2));
    } else {
        theta = o.theta.empty() ? kPi / 4 : parse_angle(o.theta);
        trace = log_spiral(o.a, theta, {t.lo, t.hi, t.n});
    }
    emit(o.output, out, [&](std::ostream& os) { write_csv(os, trace); });
    const AngleStats st = equiangular_check(trace);
    err << fmt::format("theta={}\nmean_angle={}\nmax_dev={}\n", format_real(theta), format_real(st.mean),
                       format_real(st.max_dev));
    return 0;
}

int cmd_loxodrome(const Options& o, std::ostream& out, std::ostream& err) {
    const double theta = parse_angle(o.theta);
    const MeshRange phi = range_or(o.phi, {-6.0, 6.0, 1000});
    const SpaceCurveTrace trace = loxodrome(theta, o.sign, {phi.lo, phi.hi, phi.n});
    const AngleStats m = meridian_angle_check(trace);
    err << fmt::format("meridian_angle={}\nmeridian_max_dev={}\n", format_real(m.mean), format_real(m.max_dev));
    if (o.stereo) {
        const PlanarCurveTrace proj = stereographic_trace(trace);
        const AngleStats st = equiangular_check(proj);
        err << fmt::format("stereo_mean_angle={}\nstereo_max_dev={}\n", format_real(st.mean), format_real(st.max_dev));
        emit(o.output, out, [&](std::ostream& os) { write_csv(os, proj); });
    } else {
        emit(o.output, out, [&](std::ostream& os) { write_csv(os, trace); });
    }
    return 0;
}

int cmd_helix(const Options& o, std::ostream& out) {
    SpaceCurveTrace trace;
    if (!o.input.empty()) {
        trace = read_space_trace(o.input);
    } else {
        const MeshRange t = range_or(o.t, {0.0, 4.0 * kPi, 2001});
        trace = circular_helix(o.a, o.b, {t.lo, t.hi, t.n});
    }
    const HelixReport h = helix_check(trace);
    const KeyValues kv{
        {"kappa_over_tau", format_real(h.kappa_over_tau)},
        {"kappa_over_tau_dev", format_real(h.kappa_over_tau_dev)},
        {"axis_angle", format_real(h.axis_angle)},
        {"axis_angle_dev", format_real(h.axis_angle_dev)},
        {"best_axis_x", format_real(h.best_axis.x)},
        {"best_axis_y", format_real(h.best_axis.y)},
        {"best_axis_z", format_real(h.best_axis.z)},
    };
    emit(o.output, out, [&](std::ostream& os) { os << (o.csv ? csv_row_text(kv) : key_value_text(kv)); });
    return 0;
}

int cmd_sphere(const Options& o, std::ostream& err) {
    const DegenerateSurface s = DegenerateSurface::sphere(o.radius);
    const MeshRange u = range_or(o.u, {0.1, kPi - 0.1, 100});
    const MeshRange v = range_or(o.v, {0.0, 2.0 * kPi, 200});
    const Mesh mesh = sample_mesh(s, u, v, o.threads);
    if (o.output.empty()) throw Error(ErrorKind::InvalidParam, "sphere needs -o <path.obj>");
    write_obj(mesh, o.output);
    const VerificationReport r = verify_surface(s, o.grid.empty() ? Grid{32, 32} : parse_grid(o.grid));
    const bool ok = r.max_angle_dev <= 1e-9 && r.max_norm_dev <= 1e-9;
    err << fmt::format("wrote {}: {} vertices, {} faces\n", o.output, mesh.vertices.size(), mesh.faces.size());
    err << fmt::format("max_angle_dev={}\nmax_norm_dev={}\numbilic_count={}\nsamples={}\n", format_real(r.max_angle_dev),
                       format_real(r.max_norm_dev), r.umbilic_count, r.samples);
    return ok ? 0 : 1;
}

int cmd_cone(const Options& o, std::ostream& err) {
    const MeshRange u = range_or(o.u, {0.1, 4.0, 100});
    if (!(u.lo > 0.0)) throw Error(ErrorKind::DomainError, "u range must start above 0");
    const DegenerateSurface s = DegenerateSurface::cone(parse_curve_spec(o.curve), {u.lo, u.hi});
    const MeshRange v = range_or(o.v, {s.v_domain().lo, s.v_domain().hi, 200});
    const Mesh mesh = sample_mesh(s, u, v, o.threads);
    if (o.output.empty()) throw Error(ErrorKind::InvalidParam, "cone needs -o <path.obj>");
    write_obj(mesh, o.output);

    const Grid g = o.grid.empty() ? Grid{32, 32} : parse_grid(o.grid);
    double max_k = 0.0, max_h = 0.0;
    for (double uu : verification_u_axis(s.u_domain(), g.nu)) {
        for (double vv : verification_v_axis(s.v_domain(), g.nv)) {
            const CurvatureData c = curvature(s, uu, vv);
            max_k = std::max(max_k, std::abs(c.K));
            max_h = std::max(max_h, std::abs(c.H));
        }
    }
    const bool plane = s.kind() == DegenerateKind::Plane;
    const bool ok = max_k <= 1e-7 && (!plane || max_h <= 1e-7);
    err << fmt::format("wrote {}: {} vertices, {} faces\n", o.output, mesh.vertices.size(), mesh.faces.size());
    err << fmt::format("kind={}\nmax_abs_K={}\nmax_abs_H={}\n", plane ? "plane" : "cone", format_real(max_k),
                       format_real(max_h));
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constant slope surfaces: meshes, verification and spiral curves", "slopesurf"};
    app.require_subcommand(1);
    Options o;

    auto surface_opts = [&o](CLI::App* c, bool mesh) {
        c->add_option("--theta", o.theta, "angle between normal and position: pi/k or radians")->required();
        c->add_option("--curve", o.curve, "circle | smallcircle:psi0=a | figure8 | spherespiral:v0=a | conecircle | samples:file.csv");
        c->add_option("--grid", o.grid, "verification grid NxM");
        c->add_option("--mode", o.mode, "analytic | oracle");
        c->add_option("-o,--output", o.output, mesh ? "OBJ output path" : "report output path (default stdout)");
    };

    auto* surface = app.add_subcommand("surface", "sample a constant slope surface into an OBJ mesh");
    surface_opts(surface, true);
    surface->add_option("--u", o.u, "u range min:max:n (geometric spacing)");
    surface->add_option("--v", o.v, "v range min:max:n");
    surface->add_option("--threads", o.threads, "sampling threads");

    auto* verify = app.add_subcommand("verify", "run the pointwise checks over a grid and print the report");
    surface_opts(verify, false);
    verify->add_option("--u", o.u, "u domain min:max");
    verify->add_flag("--csv", o.csv, "single-row CSV instead of key=value lines");

    auto* spiral = app.add_subcommand("spiral", "logarithmic or golden spiral as CSV");
    spiral->add_option("--a", o.a, "scale");
    spiral->add_option("--theta", o.theta, "tangent/radius angle in (0, pi/2]");
    spiral->add_flag("--golden", o.golden, "golden spiral");
    spiral->add_option("--t", o.t, "parameter range min:max:n");
    spiral->add_option("-o,--output", o.output, "CSV output path (default stdout)");

    auto* lox = app.add_subcommand("loxodrome", "rhumb line on the unit sphere as CSV");
    lox->add_option("--theta", o.theta, "angle with the meridians in (0, pi/2)")->required();
    lox->add_option("--sign", o.sign, "+1 or -1");
    lox->add_option("--phi", o.phi, "longitude range min:max:n");
    lox->add_flag("--stereo", o.stereo, "emit the stereographic image instead");
    lox->add_option("-o,--output", o.output, "CSV output path (default stdout)");

    auto* helix = app.add_subcommand("helix-check", "generalized helix test on a trace");
    helix->add_option("-i,--input", o.input, "CSV trace t,x,y,z (uniform t)");
    helix->add_option("--a", o.a, "radius of the generated circular helix");
    helix->add_option("--b", o.b, "pitch of the generated circular helix");
    helix->add_option("--t", o.t, "parameter range min:max:n");
    helix->add_flag("--csv", o.csv, "single-row CSV instead of key=value lines");
    helix->add_option("-o,--output", o.output, "report output path (default stdout)");

    auto* sphere = app.add_subcommand("sphere", "theta = 0 branch: part of a sphere about the origin");
    sphere->add_option("--radius", o.radius, "sphere radius");
    sphere->add_option("--u", o.u, "colatitude range min:max:n");
    sphere->add_option("--v", o.v, "longitude range min:max:n");
    sphere->add_option("--grid", o.grid, "verification grid NxM");
    sphere->add_option("--threads", o.threads, "sampling threads");
    sphere->add_option("-o,--output", o.output, "OBJ output path");

    auto* cone = app.add_subcommand("cone", "theta = pi/2 branch: cone (or plane) over a curve");
    cone->add_option("--curve", o.curve, "curve spec");
    cone->add_option("--u", o.u, "u range min:max:n");
    cone->add_option("--v", o.v, "v range min:max:n");
    cone->add_option("--grid", o.grid, "curvature grid NxM");
    cone->add_option("--threads", o.threads, "sampling threads");
    cone->add_option("-o,--output", o.output, "OBJ output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (o.threads < 1) throw Error(ErrorKind::InvalidParam, "--threads must be at least 1");
        if (*surface) return cmd_surface(o, err);
        if (*verify) return cmd_verify(o, out);
        if (*spiral) return cmd_spiral(o, out, err);
        if (*lox) return cmd_loxodrome(o, out, err);
        if (*helix) return cmd_helix(o, out);
        if (*sphere) return cmd_sphere(o, err);
        if (*cone) return cmd_cone(o, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace slope
