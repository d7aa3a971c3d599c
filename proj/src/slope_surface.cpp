#include "slope/slope_surface.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "slope/error.hpp"

namespace slope {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kSingularRvRatio = 1e-10;
constexpr double kStructureEps = 1e-8;

// Positions in oracle mode carry finite-difference curve tangents (noise
// ~1e-12 that varies with v), so second differences in v use a wider step.
constexpr double kOracleStepV = 2e-3;

double cot_theta(double theta) {
    if (theta == kHalfPi) return 0.0;
    return std::cos(theta) / std::sin(theta);
}

// Unchecked evaluation; finite-difference stencils step slightly outside the domain.
struct Frame {
    CurvePoint c;
    Vec3 b;  // f x f'
    double xi;
};

Frame frame_at(const SlopeSurface& s, double u, double v) {
    const CurvePoint c = s.eval_curve().derivatives(v);
    return {c, cross(c.f, c.d1), cot_theta(s.theta()) * std::log(u)};
}

Vec3 position_raw(const SlopeSurface& s, double u, double v) {
    const SphereCurve& curve = s.eval_curve();
    Vec3 f;
    Vec3 f1;
    if (curve.derivative_mode() == DerivativeMode::Analytic) {
        const CurvePoint c = curve.derivatives(v);
        f = c.f;
        f1 = c.d1;
    } else {
        f = curve.eval(v);
        f1 = curve.tangent(v);
    }
    const double x = cot_theta(s.theta()) * std::log(u);
    return u * std::sin(s.theta()) * (std::cos(x) * f + std::sin(x) * cross(f, f1));
}

Vec3 position_from(const Frame& fr, double u, double theta) {
    return u * std::sin(theta) * (std::cos(fr.xi) * fr.c.f + std::sin(fr.xi) * fr.b);
}

Vec3 r_u_from(const Frame& fr, double theta) {
    const double a = fr.xi - theta;
    return -std::sin(a) * fr.c.f + std::cos(a) * fr.b;
}

Vec3 r_v_from(const Frame& fr, double u, double theta) {
    return u * std::sin(theta) * (std::cos(fr.xi) * fr.c.d1 + std::sin(fr.xi) * cross(fr.c.f, fr.c.d2));
}

Vec3 normal_from(const Frame& fr, double theta) {
    const double a = fr.xi - theta;
    return std::cos(a) * fr.c.f + std::sin(a) * fr.b;
}

Vec3 r_v_analytic(const SlopeSurface& s, double u, double v) {
    return r_v_from(frame_at(s, u, v), u, s.theta());
}

std::string at(double u, double v) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(u=%.17g, v=%.17g)", u, v);
    return buf;
}

}  // namespace

SlopeSurface::SlopeSurface(double theta, const SphereCurve& curve, Interval u_domain, JetMode mode)
    : theta_(theta),
      curve_(curve.unit_speed() ? curve : reparametrize_unit_speed(curve)),
      fd_curve_(curve_.with_finite_differences()),
      u_domain_(u_domain),
      mode_(mode) {
    if (!(theta > 0.0 && theta <= kHalfPi)) {
        throw Error(ErrorKind::InvalidParam,
                    "theta must lie in (0, pi/2]; theta = 0 is the sphere branch, use DegenerateSurface::sphere");
    }
    if (!(u_domain.lo > 0.0 && u_domain.hi > u_domain.lo)) {
        throw Error(ErrorKind::InvalidParam, "u domain must satisfy 0 < u_min < u_max");
    }
}

SlopeSurface SlopeSurface::with_mode(JetMode mode) const {
    SlopeSurface copy = *this;
    copy.mode_ = mode;
    return copy;
}

void SlopeSurface::check_domain(double u, double v) const {
    if (!(u > 0.0)) throw Error(ErrorKind::DomainError, "u must be positive " + at(u, v));
    const double slack = 1e-12 * (1.0 + u_domain_.hi);
    if (u < u_domain_.lo - slack || u > u_domain_.hi + slack) {
        throw Error(ErrorKind::DomainError, "u outside surface domain " + at(u, v));
    }
    if (!curve_.in_domain(v)) throw Error(ErrorKind::DomainError, "v outside curve domain " + at(u, v));
}

double xi(double u, double theta) {
    if (!(u > 0.0)) throw Error(ErrorKind::DomainError, "xi needs u > 0");
    return cot_theta(theta) * std::log(u);
}

Vec3 position(const SlopeSurface& s, double u, double v) {
    s.check_domain(u, v);
    return position_raw(s, u, v);
}

Vec3 closed_form_normal(const SlopeSurface& s, double u, double v) {
    s.check_domain(u, v);
    return normal_from(frame_at(s, u, v), s.theta());
}

SurfaceJet jet(const SlopeSurface& s, double u, double v) {
    s.check_domain(u, v);
    const Frame fr = frame_at(s, u, v);
    const double theta = s.theta();

    SurfaceJet out{};
    out.xi = fr.xi;
    out.r = position_from(fr, u, theta);
    out.mu = norm(out.r);
    if (s.mode() == JetMode::Analytic) {
        out.r_u = r_u_from(fr, theta);
        out.r_v = r_v_from(fr, u, theta);
    } else {
        out.r_u = central_diff([&](double x) { return position_raw(s, x, v); }, u, 1);
        out.r_v = central_diff([&](double x) { return position_raw(s, u, x); }, v, 1);
    }
    const Vec3 closed = normal_from(fr, theta);
    out.singular = norm(out.r_v) < kSingularRvRatio * u;
    if (out.singular) {
        out.normal = closed;
    } else {
        const Vec3 n = normalized(cross(out.r_u, out.r_v));
        out.normal = dot(n, closed) < 0.0 ? -n : n;
    }
    return out;
}

SecondPartials second_partials(const SlopeSurface& s, double u, double v) {
    s.check_domain(u, v);
    const double theta = s.theta();
    if (s.mode() == JetMode::Analytic) {
        const Frame fr = frame_at(s, u, v);
        const double a = fr.xi - theta;
        return {-(cot_theta(theta) / u) * normal_from(fr, theta),
                -std::sin(a) * fr.c.d1 + std::cos(a) * cross(fr.c.f, fr.c.d2),
                central_diff([&](double x) { return r_v_analytic(s, u, x); }, v, 1)};
    }
    const auto along_u = [&](double x) { return position_raw(s, x, v); };
    const auto along_v = [&](double x) { return position_raw(s, u, x); };
    const double hu = default_step(u);
    const double hv = kOracleStepV;
    const auto r_v_at = [&](double x) {
        return central_diff([&](double y) { return position_raw(s, x, y); }, v, 1, hv);
    };
    return {central_diff(along_u, u, 2, hu), central_diff(r_v_at, u, 1, hu), central_diff(along_v, v, 2, hv)};
}

Vec3 printed_r_v(const SlopeSurface& s, double u, double v) {
    s.check_domain(u, v);
    const CurveJet cj = jet(s.curve(), v);
    const double st = std::sin(s.theta());
    return u * st * (std::cos(xi(u, s.theta())) - cj.kappa_g * st) * cj.f1;
}

double angle_with_position(const SlopeSurface& s, double u, double v) {
    const SurfaceJet j = jet(s, u, v);
    if (j.singular) throw Error(ErrorKind::SingularPoint, "r_v vanishes " + at(u, v));
    return angle_between(j.normal, j.r);
}

StructureFunctions structure_functions(const SlopeSurface& s, double u, double v) {
    s.check_domain(u, v);
    const double theta = s.theta();
    const double kappa = jet(s.curve(), v).kappa_g;
    const double q = std::atan(kappa);
    const double phase = xi(u, theta) + q;
    const double c = std::cos(phase);
    if (std::abs(c) < kStructureEps) {
        throw Error(ErrorKind::StructureSingularity, "cos(xi + Q) vanishes " + at(u, v));
    }
    StructureFunctions out{};
    out.Q = q;
    out.rho = -std::cos(theta) - std::sin(theta) * std::tan(phase);
    out.lambda = out.rho / (u * std::sin(theta));
    out.beta_factor = u * c;
    out.phi_v = std::sin(theta) / std::cos(q);
    return out;
}

double ode_residual(const SlopeSurface& s, double u, double v) {
    const SurfaceJet j = jet(s, u, v);
    const Vec3 r_uu = s.mode() == JetMode::Analytic
                          ? -(cot_theta(s.theta()) / u) * closed_form_normal(s, u, v)
                          : central_diff([&](double x) { return position_raw(s, x, v); }, u, 2);
    const double s2 = std::sin(s.theta()) * std::sin(s.theta());
    return norm(j.r - u * s2 * j.r_u + u * u * s2 * r_uu);
}

double ode_residual(const CurveFn& u_line, double u, double theta) {
    if (!(u > 0.0)) throw Error(ErrorKind::DomainError, "ode_residual needs u > 0");
    const double s2 = std::sin(theta) * std::sin(theta);
    return norm(u_line(u) - u * s2 * central_diff(u_line, u, 1) + u * u * s2 * central_diff(u_line, u, 2));
}

// ---------------------------------------------------------------------------

DegenerateSurface DegenerateSurface::sphere(double radius) {
    if (!(radius > 0.0)) throw Error(ErrorKind::InvalidParam, "sphere radius must be positive");
    DegenerateSurface d;
    d.kind_ = DegenerateKind::Sphere;
    d.radius_ = radius;
    return d;
}

DegenerateSurface DegenerateSurface::cone(const SphereCurve& curve, Interval u_domain) {
    DegenerateSurface d;
    d.cone_.emplace(kHalfPi, curve, u_domain);
    const SphereCurve& f = d.cone_->curve();
    bool flat_curve = true;
    constexpr int kProbe = 64;
    for (int i = 0; i <= kProbe && flat_curve; ++i) {
        const double v = f.domain().lo + f.domain().length() * i / kProbe;
        flat_curve = std::abs(slope::jet(f, v).kappa_g) < 1e-9;
    }
    d.kind_ = flat_curve ? DegenerateKind::Plane : DegenerateKind::Cone;
    return d;
}

double DegenerateSurface::angle() const { return kind_ == DegenerateKind::Sphere ? 0.0 : kHalfPi; }

Interval DegenerateSurface::u_domain() const {
    if (kind_ == DegenerateKind::Sphere) return {0.1, std::numbers::pi - 0.1};
    return cone_->u_domain();
}

Interval DegenerateSurface::v_domain() const {
    if (kind_ == DegenerateKind::Sphere) return {0.0, 2.0 * std::numbers::pi};
    return cone_->v_domain();
}

Vec3 DegenerateSurface::position(double u, double v) const {
    if (kind_ != DegenerateKind::Sphere) return slope::position(*cone_, u, v);
    return radius_ * Vec3{std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), std::cos(u)};
}

SurfaceJet DegenerateSurface::jet(double u, double v) const {
    if (kind_ != DegenerateKind::Sphere) return slope::jet(*cone_, u, v);
    const double su = std::sin(u);
    const double cu = std::cos(u);
    const double sv = std::sin(v);
    const double cv = std::cos(v);
    SurfaceJet j{};
    j.r = radius_ * Vec3{su * cv, su * sv, cu};
    j.r_u = radius_ * Vec3{cu * cv, cu * sv, -su};
    j.r_v = radius_ * Vec3{-su * sv, su * cv, 0.0};
    j.normal = Vec3{su * cv, su * sv, cu};
    j.xi = 0.0;
    j.mu = radius_;
    j.singular = std::abs(su) < 1e-10;
    return j;
}

SecondPartials DegenerateSurface::second_partials(double u, double v) const {
    if (kind_ != DegenerateKind::Sphere) return slope::second_partials(*cone_, u, v);
    const double su = std::sin(u);
    const double cu = std::cos(u);
    const double sv = std::sin(v);
    const double cv = std::cos(v);
    return {-radius_ * Vec3{su * cv, su * sv, cu}, radius_ * Vec3{-cu * sv, cu * cv, 0.0},
            radius_ * Vec3{-su * cv, -su * sv, 0.0}};
}

}  // namespace slope
