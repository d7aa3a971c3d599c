#pragma once

// Curve zoo around the equiangular property: logarithmic and golden spirals,
// loxodromes and their stereographic images, generalized-helix detection,
// and conchospirals realized as u-lines of constant slope surfaces.

#include <string>
#include <vector>

#include "slope/numkit.hpp"
#include "slope/slope_surface.hpp"

namespace slope {

struct PlanarSample {
    double t;
    double x;
    double y;
};

struct SpaceSample {
    double t;
    Vec3 p;
};

struct PlanarCurveTrace {
    std::vector<PlanarSample> samples;
    std::string meta;
};

struct SpaceCurveTrace {
    std::vector<SpaceSample> samples;
    std::string meta;
};

struct ParamRange {
    double lo;
    double hi;
    int n;
};

/// (a e^{t cot theta} cos t, a e^{t cot theta} sin t); theta in (0, pi/2].
PlanarCurveTrace log_spiral(double a, double theta, ParamRange t);

/// Logarithmic spiral whose radius grows by the golden ratio per quarter turn.
PlanarCurveTrace golden_spiral(double a, ParamRange t);

inline constexpr double kGoldenRatio = 1.6180339887498949;

struct AngleStats {
    double mean;
    double max_dev;
};

/// Angle between tangent and radial direction at every sample (excluding the
/// two samples at either end). Throws OriginSample if a sample sits at 0.
AngleStats equiangular_check(const PlanarCurveTrace& trace);

/// psi(phi) = 2 arctan(exp(sign phi cot theta)); theta in (0, pi/2).
SpaceCurveTrace loxodrome(double theta, int sign, ParamRange phi);

/// Angle between the trace tangent line and the local meridian, interior samples.
AngleStats meridian_angle_check(const SpaceCurveTrace& trace);

/// Projection from the north pole onto the equatorial plane.
Vec2 stereographic(const Vec3& p);

PlanarCurveTrace stereographic_trace(const SpaceCurveTrace& trace);

struct HelixReport {
    double axis_angle_dev;
    double kappa_over_tau_dev;  // max relative deviation from the mean ratio
    double kappa_over_tau;      // mean ratio
    double axis_angle;          // mean angle between tangent and axis
    Vec3 best_axis;
};

/// Generalized-helix test on a uniformly sampled trace (at least 7 samples).
/// Throws DegenerateFrenet when curvature or torsion vanish at an interior sample.
HelixReport helix_check(const SpaceCurveTrace& trace);

/// (a cos t, a sin t, b t).
SpaceCurveTrace circular_helix(double a, double b, ParamRange t);

/// u -> position(s, u, v0). The surface curve must have constant nonzero
/// geodesic curvature (a small circle).
SpaceCurveTrace conchospiral_on_cone(const SlopeSurface& s, double v0, ParamRange u);

/// u -> position(s, u, v0) for any surface and curve.
SpaceCurveTrace u_line(const SlopeSurface& s, double v0, ParamRange u);

}  // namespace slope
