#include "slope/diffgeo.hpp"

#include <cmath>
#include <numbers>

#include "slope/error.hpp"

namespace slope {

namespace {

constexpr double kUmbilicGap = 1e-10;
constexpr double kMinMetricDet = 1e-14;// Oracle-mode lambda is read off second differences of positions, whose error
// is amplified by 1/|r_v|^2; points closer than this to the singular set are
// left out of that one comparison.
constexpr double kOracleLambdaGuard = 0.03;

struct Frame2 {
    Vec3 e1;
    Vec3 e2;
};

Frame2 gram_schmidt(const SurfaceJet& j) {
    const Vec3 e1 = normalized(j.r_u);
    const Vec3 e2 = normalized(j.r_v - dot(j.r_v, e1) * e1);
    return {e1, e2};
}

Vec3 tangential(const Vec3& x, const Vec3& n) { return x - dot(x, n) * n; }

}  // namespace

FundamentalForms fundamental_forms(const SurfaceJet& jet, const SecondPartials& second) {
    if (jet.singular) throw Error(ErrorKind::SingularPoint, "fundamental forms at a singular point");
    return {dot(jet.r_u, jet.r_u),          dot(jet.r_u, jet.r_v),          dot(jet.r_v, jet.r_v),
            dot(second.r_uu, jet.normal), dot(second.r_uv, jet.normal), dot(second.r_vv, jet.normal)};
}

Sym2 shape_operator(const FundamentalForms& f) {
    const double det = f.E * f.G - f.F * f.F;
    if (!(det > kMinMetricDet) || !(f.E > 0.0)) {
        throw Error(ErrorKind::DegenerateMetric, "first fundamental form is degenerate");
    }
    // Columns of P hold r_u, r_v in the orthonormal frame; A = P^-T II P^-1.
    const double a = std::sqrt(f.E);
    const double b = f.F / a;
    const double d = std::sqrt(det) / a;
    const double q11 = 1.0 / a;
    const double q12 = -b / (a * d);
    const double q22 = 1.0 / d;
    const double col2_top = f.L * q12 + f.M * q22;
    const double col2_bot = f.M * q12 + f.Nn * q22;
    return {f.L * q11 * q11, q11 * col2_top, q12 * col2_top + q22 * col2_bot};
}

CurvatureData curvature(const SurfaceJet& jet, const SecondPartials& second) {
    const Sym2 s = shape_operator(fundamental_forms(jet, second));
    const Eigen2 eig = eig_sym2(s);
    const Frame2 fr = gram_schmidt(jet);
    CurvatureData out{};
    out.k1 = eig.lambda1;
    out.k2 = eig.lambda2;
    out.dir1 = eig.v1.x * fr.e1 + eig.v1.y * fr.e2;
    out.dir2 = eig.v2.x * fr.e1 + eig.v2.y * fr.e2;
    out.K = s.a11 * s.a22 - s.a12 * s.a12;
    out.H = 0.5 * (s.a11 + s.a22);
    out.umbilic = std::abs(eig.lambda2 - eig.lambda1) < kUmbilicGap;
    if (out.umbilic) {
        out.dir1 = fr.e1;
        out.dir2 = fr.e2;
    }
    return out;
}

CurvatureData curvature(const SlopeSurface& s, double u, double v) {
    return curvature(jet(s, u, v), second_partials(s, u, v));
}

CurvatureData curvature(const DegenerateSurface& s, double u, double v) {
    return curvature(s.jet(u, v), s.second_partials(u, v));
}

AlongRu principal_along_ru(const SlopeSurface& s, double u, double v) {
    const SurfaceJet j = jet(s, u, v);
    const Sym2 m = shape_operator(fundamental_forms(j, second_partials(s, u, v)));
    const Eigen2 eig = eig_sym2(m);
    AlongRu out{};
    out.expected = -std::cos(s.theta()) / (u * std::sin(s.theta()));
    out.umbilic = std::abs(eig.lambda2 - eig.lambda1) < kUmbilicGap;
    if (out.umbilic) {
        out.k_ru = m.a11;
        out.k_other = m.a22;
        out.angle = 0.0;
        return out;
    }
    // e1 of the Gram-Schmidt frame is exactly r_u/|r_u|, i.e. (1, 0).
    const bool first = std::abs(eig.v1.x) >= std::abs(eig.v2.x);
    const Vec2 vec = first ? eig.v1 : eig.v2;
    out.k_ru = first ? eig.lambda1 : eig.lambda2;
    out.k_other = first ? eig.lambda2 : eig.lambda1;
    out.angle = std::atan2(std::abs(vec.y), std::abs(vec.x));
    return out;
}

LambdaCheck verify_lambda(const SlopeSurface& s, double u, double v, int sign) {
    const StructureFunctions sf = structure_functions(s, u, v);
    const AlongRu along = principal_along_ru(s, u, v);
    LambdaCheck out{};
    out.lambda_numeric = along.k_other;
    out.lambda_closed = sf.lambda;
    out.dev = std::abs(out.lambda_numeric - sign * out.lambda_closed);
    return out;
}

std::vector<double> verification_u_axis(Interval u, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    const double log_lo = std::log(u.lo);
    const double step = (std::log(u.hi) - log_lo) / n;
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(log_lo + (i + 0.5) * step);
    return out;
}

std::vector<double> verification_v_axis(Interval v, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    const double step = v.length() / n;
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = v.lo + (i + 0.5) * step;
    return out;
}

int estimate_lambda_sign(const SlopeSurface& s) {
    for (double u : verification_u_axis(s.u_domain(), 16)) {
        for (double v : verification_v_axis(s.v_domain(), 16)) {
            try {
                const LambdaCheck c = verify_lambda(s, u, v, 1);
                const AlongRu along = principal_along_ru(s, u, v);
                if (along.umbilic || std::abs(c.lambda_closed) < 1e-6) continue;
                return c.lambda_numeric * c.lambda_closed < 0.0 ? -1 : 1;
            } catch (const Error&) {
                continue;
            }
        }
    }
    return 1;
}

double verify_connection(const SlopeSurface& surface, double u, double v, int sign) {
    // The frame derivatives below are the finite-difference side of the check,
    // so the frame itself is always taken from analytic jets.
    const SlopeSurface s = surface.with_mode(JetMode::Analytic);
    const SurfaceJet j = jet(s, u, v);
    if (j.singular) throw Error(ErrorKind::SingularPoint, "connection check at a singular point");
    const double theta = s.theta();
    const double lambda = sign * structure_functions(s, u, v).lambda;
    const double mu = j.mu;
    const double c = (1.0 + mu * lambda * std::cos(theta)) / (mu * std::sin(theta));

    const auto e1_at = [&](double uu, double vv) { return jet(s, uu, vv).r_u; };
    // r_v changes sign across the singular set; keep e2 oriented like the base point.
    const auto e2_at = [&](double uu, double vv) {
        const Vec3 rv = jet(s, uu, vv).r_v;
        return dot(rv, j.r_v) < 0.0 ? -normalized(rv) : normalized(rv);
    };
    // Stencils stay inside the domain by shrinking the step near its ends.
    const Interval ud = s.u_domain();
    const Interval vd = s.v_domain();
    double hu = default_step(u);
    hu = std::min(hu, 0.5 * std::min(u - ud.lo, ud.hi - u));
    double hv = default_step(v);
    if (!s.curve().period()) hv = std::min(hv, 0.5 * std::min(v - vd.lo, vd.hi - v));
    if (!(hu > 0.0) || !(hv > 0.0)) throw Error(ErrorKind::DomainError, "connection check on the domain boundary");

    const Vec3 e1 = j.r_u;
    const Vec3 e2 = normalized(j.r_v);
    const double inv_rv = 1.0 / norm(j.r_v);
    const Vec3 d_e1_e1 = tangential(central_diff([&](double x) { return e1_at(x, v); }, u, 1, hu), j.normal);
    const Vec3 d_e1_e2 = tangential(central_diff([&](double x) { return e2_at(x, v); }, u, 1, hu), j.normal);
    const Vec3 d_e2_e1 =
        tangential(inv_rv * central_diff([&](double x) { return e1_at(u, x); }, v, 1, hv), j.normal);
    const Vec3 d_e2_e2 =
        tangential(inv_rv * central_diff([&](double x) { return e2_at(u, x); }, v, 1, hv), j.normal);

    return std::max({max_abs_diff(d_e1_e1, {}), max_abs_diff(d_e1_e2, {}), max_abs_diff(d_e2_e1, c * e2),
                     max_abs_diff(d_e2_e2, -c * e1)});
}

namespace {

double relative(double dev, double reference) { return dev / std::max(1.0, std::abs(reference)); }

}  // namespace

VerificationReport verify_surface(const SlopeSurface& s, Grid grid) {
    if (grid.nu < 2 || grid.nv < 2) throw Error(ErrorKind::InvalidParam, "verification grid must be at least 2x2");
    VerificationReport rep{};
    rep.lambda_sign = estimate_lambda_sign(s);
    const SlopeSurface oracle = s.with_mode(JetMode::Oracle);
    const double st = std::sin(s.theta());

    for (double u : verification_u_axis(s.u_domain(), grid.nu)) {
        for (double v : verification_v_axis(s.v_domain(), grid.nv)) {
            ++rep.samples;
            const SurfaceJet j = jet(s, u, v);
            rep.max_norm_dev = std::max(rep.max_norm_dev, std::abs(norm(j.r) - u * st));
            rep.max_ode_residual = std::max(rep.max_ode_residual, ode_residual(s, u, v));
            if (s.mode() == JetMode::Analytic) {
                const Vec3 fd_rv = jet(oracle, u, v).r_v;
                rep.max_rv_chain_rule_dev = std::max(rep.max_rv_chain_rule_dev, max_abs_diff(j.r_v, fd_rv));
                rep.max_rv_printed_dev = std::max(rep.max_rv_printed_dev, max_abs_diff(j.r_v, printed_r_v(s, u, v)));
            }
            if (j.singular) {
                ++rep.singular_count;
                continue;
            }
            rep.max_angle_dev = std::max(rep.max_angle_dev, std::abs(angle_between(j.normal, j.r) - s.theta()));

            const AlongRu along = principal_along_ru(s, u, v);
            rep.max_k1_dev = std::max(rep.max_k1_dev, std::abs(along.k_ru - along.expected));
            if (along.umbilic) {
                ++rep.umbilic_count;
            } else {
                rep.max_k1_dir_angle = std::max(rep.max_k1_dir_angle, along.angle);
            }
            try {
                const StructureFunctions sf = structure_functions(s, u, v);
                const bool well_conditioned = s.mode() == JetMode::Analytic ||
                                              std::abs(std::cos(j.xi + sf.Q)) >= kOracleLambdaGuard;
                if (!along.umbilic && well_conditioned) {
                    const double dev = std::abs(along.k_other - rep.lambda_sign * sf.lambda);
                    rep.max_lambda_dev = std::max(rep.max_lambda_dev, relative(dev, sf.lambda));
                }
                rep.max_connection_dev = std::max(rep.max_connection_dev, verify_connection(s, u, v, rep.lambda_sign));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::StructureSingularity && e.kind() != ErrorKind::SingularPoint) throw;
            }
        }
    }
    return rep;
}

VerificationReport verify_surface(const DegenerateSurface& s, Grid grid) {
    if (s.kind() != DegenerateKind::Sphere) return verify_surface(s.as_slope_surface(), grid);
    if (grid.nu < 2 || grid.nv < 2) throw Error(ErrorKind::InvalidParam, "verification grid must be at least 2x2");
    VerificationReport rep{};
    const double step_u = s.u_domain().length() / grid.nu;
    const double step_v = s.v_domain().length() / grid.nv;
    for (int i = 0; i < grid.nu; ++i) {
        const double u = s.u_domain().lo + (i + 0.5) * step_u;
        for (int k = 0; k < grid.nv; ++k) {
            const double v = s.v_domain().lo + (k + 0.5) * step_v;
            ++rep.samples;
            const SurfaceJet j = s.jet(u, v);
            if (j.singular) {
                ++rep.singular_count;
                continue;
            }
            rep.max_angle_dev = std::max(rep.max_angle_dev, angle_between(j.normal, j.r));
            rep.max_norm_dev = std::max(rep.max_norm_dev, std::abs(norm(j.r) - s.radius()));
            if (curvature(s, u, v).umbilic) ++rep.umbilic_count;
        }
    }
    return rep;
}

Thresholds default_thresholds(JetMode mode) {
    if (mode == JetMode::Analytic) return {1e-9, 1e-9, 1e-8, 1e-6, 1e-4, 1e-5, 1e-4};
    return {1e-6, 1e-9, 1e-5, 1e-5, 1e-3, 1e-3, 1e-4};
}

bool passes(const VerificationReport& r, const Thresholds& t) {
    return r.max_angle_dev <= t.angle && r.max_norm_dev <= t.norm && r.max_ode_residual <= t.ode &&
           r.max_k1_dev <= t.k1 && r.max_k1_dir_angle <= t.k1_dir && r.max_lambda_dev <= t.lambda_rel &&
           r.max_connection_dev <= t.connection && r.samples > r.singular_count;
}

}  // namespace slope
