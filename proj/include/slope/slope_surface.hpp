#pragma once

#include <optional>

#include "slope/numkit.hpp"
#include "slope/sphere_curve.hpp"

namespace slope {

/// How surface partials are obtained. Oracle evaluates curve derivatives and
/// surface partials by central differences of positions only.
enum class JetMode { Analytic, Oracle };

inline constexpr Interval kDefaultUDomain{0.05, 5.0};

/// Constant slope surface r(u,v) = u sin(theta) (cos xi f(v) + sin xi f(v) x f'(v)),
/// xi = cot(theta) log u, over a unit-speed spherical curve f.
class SlopeSurface {
public:
    /// theta in (0, pi/2]; 0 < u_min < u_max. Curves not flagged unit speed are
    /// reparametrized by arc length first.
    SlopeSurface(double theta, const SphereCurve& curve, Interval u_domain = kDefaultUDomain,
                 JetMode mode = JetMode::Analytic);

    double theta() const { return theta_; }
    const SphereCurve& curve() const { return curve_; }
    /// The curve as evaluated in the current mode (finite-difference copy in Oracle mode).
    const SphereCurve& eval_curve() const { return mode_ == JetMode::Oracle ? fd_curve_ : curve_; }
    Interval u_domain() const { return u_domain_; }
    Interval v_domain() const { return curve_.domain(); }
    JetMode mode() const { return mode_; }

    /// Copy evaluated in the other mode (the curve is shared).
    SlopeSurface with_mode(JetMode mode) const;

    /// Throws DomainError when (u, v) is outside the parameter domains.
    void check_domain(double u, double v) const;

private:
    double theta_;
    SphereCurve curve_;
    SphereCurve fd_curve_;
    Interval u_domain_;
    JetMode mode_;
};

struct SurfaceJet {
    Vec3 r;
    Vec3 r_u;
    Vec3 r_v;
    Vec3 normal;  // unit, sign-aligned with the closed-form normal
    double xi;
    double mu;
    bool singular;
};

struct SecondPartials {
    Vec3 r_uu;
    Vec3 r_uv;
    Vec3 r_vv;
};

struct StructureFunctions {
    double rho;
    double lambda;
    double Q;
    double beta_factor;
    double phi_v;
};

/// cot(theta) log u; identically 0 at theta = pi/2. Throws DomainError for u <= 0.
double xi(double u, double theta);

Vec3 position(const SlopeSurface& s, double u, double v);

/// cos(xi - theta) f + sin(xi - theta) f x f'.
Vec3 closed_form_normal(const SlopeSurface& s, double u, double v);

/// Singular when |r_v| < 1e-10 u. In the singular case `normal` falls back to
/// the closed form.
SurfaceJet jet(const SlopeSurface& s, double u, double v);

/// Analytic mode: r_uu in closed form, r_uv from the curve jet, r_vv by
/// central differences of the analytic r_v. Oracle mode: all by differences
/// of positions.
SecondPartials second_partials(const SlopeSurface& s, double u, double v);

/// The printed r_v reading u sin(theta) (cos xi + k sin(theta)) f' with
/// k = -det(f, f', f''), kept only to quantify its disagreement with the chain rule.
Vec3 printed_r_v(const SlopeSurface& s, double u, double v);

/// Angle between the unit normal and the position vector. Throws SingularPoint.
double angle_with_position(const SlopeSurface& s, double u, double v);

/// Throws StructureSingularity when |cos(xi + Q)| < 1e-8.
StructureFunctions structure_functions(const SlopeSurface& s, double u, double v);

/// |r - u sin^2(theta) r_u + u^2 sin^2(theta) r_uu|.
double ode_residual(const SlopeSurface& s, double u, double v);

/// The same residual for an arbitrary u-line, with r_u and r_uu by central
/// differences.
double ode_residual(const CurveFn& u_line, double u, double theta);

// ---------------------------------------------------------------------------
// Degenerate branches

enum class DegenerateKind { Sphere, Cone, Plane };

/// theta = 0 gives an open part of a sphere about the origin; theta = pi/2
/// gives the cone r = u f(v), which is a plane when f is a great circle.
class DegenerateSurface {
public:
    static DegenerateSurface sphere(double radius);
    /// Cone or plane over f, decided by whether kappa_g vanishes along f.
    static DegenerateSurface cone(const SphereCurve& curve, Interval u_domain = kDefaultUDomain);

    DegenerateKind kind() const { return kind_; }
    double radius() const { return radius_; }
    double angle() const;

    /// Sphere: (u, v) are colatitude and longitude.
    Interval u_domain() const;
    Interval v_domain() const;

    Vec3 position(double u, double v) const;
    SurfaceJet jet(double u, double v) const;
    SecondPartials second_partials(double u, double v) const;

    /// Present for cone and plane.
    const SlopeSurface& as_slope_surface() const { return *cone_; }

private:
    DegenerateKind kind_ = DegenerateKind::Sphere;
    double radius_ = 1.0;
    std::optional<SlopeSurface> cone_;
};

}  // namespace slope
