#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "slope/numkit.hpp"

namespace slope {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
};

/// Point and first two derivatives of a curve at one parameter value.
struct CurvePoint {
    Vec3 f;
    Vec3 d1;
    Vec3 d2;
};

enum class DerivativeMode { Analytic, FiniteDifference };

/// A parametrized curve on the unit sphere. Immutable; copies share any
/// precomputed state (arc-length tables), so evaluation is thread-safe.
class SphereCurve {
public:
    using PointFn = std::function<Vec3(double)>;
    using JetFn = std::function<CurvePoint(double)>;

    /// Curve with closed-form first and second derivatives.
    static SphereCurve analytic(JetFn jet, Interval domain, bool unit_speed, std::string provenance,
                                std::optional<double> period = std::nullopt);

    /// Curve known only pointwise; derivatives come from central differences.
    static SphereCurve pointwise(PointFn point, Interval domain, bool unit_speed, std::string provenance,
                                 std::optional<double> period = std::nullopt);

    Vec3 eval(double v) const { return point_(v); }

    /// f' at v using the curve's derivative mode.
    Vec3 tangent(double v) const;

    /// f, f', f'' at v using the curve's derivative mode.
    CurvePoint derivatives(double v) const;

    /// Same curve with derivatives forced through central differences.
    SphereCurve with_finite_differences() const;

    DerivativeMode derivative_mode() const { return jet_ ? DerivativeMode::Analytic : DerivativeMode::FiniteDifference; }
    Interval domain() const { return domain_; }
    bool unit_speed() const { return unit_speed_; }
    std::optional<double> period() const { return period_; }
    const std::string& provenance() const { return provenance_; }

    /// Periodic curves accept any parameter; others must lie in the domain
    /// up to a relative slack of 1e-12.
    bool in_domain(double v) const;

private:
    SphereCurve() = default;

    PointFn point_;
    JetFn jet_;
    Interval domain_;
    bool unit_speed_ = false;
    std::string provenance_;
    std::optional<double> period_;
};

/// Built-in families. Parameters unused by a family are ignored.
enum class CurveFamily { GreatCircle, SmallCircle, Figure8, SphereSpiral, ConeCircle };

struct CurveParams {
    double psi0 = 0.7853981633974483;  // small-circle colatitude
    double v0 = 0.1;                   // sphere-spiral domain start
    double v1 = 3.0;                   // sphere-spiral domain end
};

/// (cos v, sin v, 0) on [0, 2pi].
SphereCurve great_circle();
/// Parallel of colatitude psi0 about the z axis, psi0 in (0, pi).
SphereCurve small_circle(double psi0);
/// (cos^2 v, cos v sin v, sin v) on [0, 2pi].
SphereCurve figure8();
/// (sin psi cos phi, sin psi sin phi, cos psi) with psi = v, phi = log v, on [v0, v1], v0 > 0.
SphereCurve sphere_spiral(double v0, double v1);
/// (cos v, sqrt 3, sin v) / 2 on [0, 2pi]: circle of colatitude pi/6 about the y axis.
SphereCurve cone_circle();

SphereCurve builtin_curve(CurveFamily family, const CurveParams& params = {});

/// Cubic Hermite interpolation through sampled points, renormalized onto S^2.
/// Parameters must be strictly increasing; at least 4 samples.
SphereCurve sampled_curve(std::vector<double> params, std::vector<Vec3> points, std::string provenance);

/// Max over `samples` uniform parameters of ||f(v)| - 1|.
double validate_on_sphere(const SphereCurve& curve, int samples);

inline constexpr int kDefaultArcLengthRows = 2048;

/// Arc-length reparametrization onto [0, L]. Throws DegenerateCurve if the
/// speed drops below 1e-8 anywhere it is sampled.
SphereCurve reparametrize_unit_speed(const SphereCurve& curve, int resolution = kDefaultArcLengthRows);

/// Total arc length of the curve over its domain.
double arc_length(const SphereCurve& curve, double tol = kDefaultQuadTol);

/// Local frame of a unit-speed spherical curve. kappa_g = det(f, f', f''),
/// so that f'' = -f + kappa_g (f x f') and f x f'' = -kappa_g f'.
struct CurveJet {
    Vec3 f;
    Vec3 f1;
    Vec3 f2;
    Vec3 binormal;
    double kappa_g;
};

/// Throws NotUnitSpeed when the curve is not flagged unit speed.
CurveJet jet(const SphereCurve& curve, double v);

}  // namespace slope
