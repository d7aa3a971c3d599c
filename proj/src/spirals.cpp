#include "slope/spirals.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "slope/error.hpp"

namespace slope {

namespace {

std::vector<double> linspace(const ParamRange& r) {
    if (r.n < 2) throw Error(ErrorKind::InvalidParam, fmt::format("need at least 2 samples, got {}", r.n));
    if (!(r.hi > r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
        throw Error(ErrorKind::InvalidParam, fmt::format("empty range [{}, {}]", r.lo, r.hi));
    std::vector<double> t(static_cast<std::size_t>(r.n));
    const double step = (r.hi - r.lo) / (r.n - 1);
    for (int i = 0; i < r.n; ++i) t[static_cast<std::size_t>(i)] = r.lo + step * i;
    t.back() = r.hi;
    return t;
}

bool is_uniform(const std::vector<double>& t) {
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h))) return false;
    }
    return true;
}

void check_increasing(const std::vector<double>& t) {
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw Error(ErrorKind::InvalidParam, "trace parameters must be strictly increasing");
    }
}

// First derivative at interior samples. Uniform spacing gets the 5-point
// stencil (samples 2..n-3), otherwise the 3-point nonuniform formula (1..n-2).
// Returns the sample index of the first tangent together with the tangents.
template <class P>
std::pair<std::size_t, std::vector<P>> sampled_tangents(const std::vector<double>& t, const std::vector<P>& p) {
    const std::size_t n = t.size();
    std::vector<P> out;
    if (is_uniform(t)) {
        const double h = (t.back() - t.front()) / static_cast<double>(n - 1);
        for (std::size_t i = 2; i + 2 < n; ++i) {
            out.push_back((p[i - 2] - p[i - 1] * 8.0 + p[i + 1] * 8.0 - p[i + 2]) / (12.0 * h));
        }
        return {2, out};
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t[i] - t[i - 1];
        const double h1 = t[i + 1] - t[i];
        out.push_back(p[i - 1] * (-h1 / (h0 * (h0 + h1))) + p[i] * ((h1 - h0) / (h0 * h1)) +
                      p[i + 1] * (h0 / (h1 * (h0 + h1))));
    }
    return {1, out};
}

// 2D points ride on Vec3 with z = 0 so the stencils above work unchanged.
Vec3 lift(const PlanarSample& s) { return {s.x, s.y, 0.0}; }

// Angle between two lines through the origin, in [0, pi/2].
double line_angle(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), std::abs(dot(a, b))); }

AngleStats stats(const std::vector<double>& angles) {
    double sum = 0.0;
    for (double a : angles) sum += a;
    const double mean = sum / static_cast<double>(angles.size());
    double dev = 0.0;
    for (double a : angles) dev = std::max(dev, std::abs(a - mean));
    return {mean, dev};
}

}  // namespace

PlanarCurveTrace log_spiral(double a, double theta, ParamRange t) {
    if (!(a > 0.0)) throw Error(ErrorKind::InvalidParam, fmt::format("spiral scale must be positive, got {}", a));
    if (!(theta > 0.0 && theta <= std::numbers::pi / 2))
        throw Error(ErrorKind::InvalidParam, fmt::format("spiral angle {} outside (0, pi/2]", theta));
    const double b = theta == std::numbers::pi / 2 ? 0.0 : std::cos(theta) / std::sin(theta);
    PlanarCurveTrace out;
    out.meta = fmt::format("log_spiral a={} theta={}", a, theta);
    for (double ti : linspace(t)) {
        const double rho = a * std::exp(b * ti);
        out.samples.push_back({ti, rho * std::cos(ti), rho * std::sin(ti)});
    }
    return out;
}

PlanarCurveTrace golden_spiral(double a, ParamRange t) {
    const double b = std::log(kGoldenRatio) / (std::numbers::pi / 2);
    auto out = log_spiral(a, std::atan2(1.0, b), t);
    out.meta = fmt::format("golden_spiral a={}", a);
    return out;
}

AngleStats equiangular_check(const PlanarCurveTrace& trace) {
    const auto& s = trace.samples;
    if (s.size() < 5) throw Error(ErrorKind::InvalidParam, "equiangular_check needs at least 5 samples");
    std::vector<double> t;
    std::vector<Vec3> p;
    for (const auto& smp : s) {
        if (std::hypot(smp.x, smp.y) == 0.0)
            throw Error(ErrorKind::OriginSample, fmt::format("sample at t={} sits at the origin", smp.t));
        t.push_back(smp.t);
        p.push_back(lift(smp));
    }
    check_increasing(t);
    const auto [first, tangents] = sampled_tangents(t, p);
    std::vector<double> angles;
    for (std::size_t k = 0; k < tangents.size(); ++k) angles.push_back(line_angle(p[first + k], tangents[k]));
    return stats(angles);
}

SpaceCurveTrace loxodrome(double theta, int sign, ParamRange phi) {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2))
        throw Error(ErrorKind::InvalidParam, fmt::format("loxodrome angle {} outside (0, pi/2)", theta));
    if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidParam, fmt::format("sign must be +1 or -1, got {}", sign));
    const double cot = std::cos(theta) / std::sin(theta);
    SpaceCurveTrace out;
    out.meta = fmt::format("loxodrome theta={} sign={}", theta, sign);
    for (double ph : linspace(phi)) {
        const double psi = 2.0 * std::atan(std::exp(sign * ph * cot));
        out.samples.push_back({ph, {std::sin(psi) * std::cos(ph), std::sin(psi) * std::sin(ph), std::cos(psi)}});
    }
    return out;
}

AngleStats meridian_angle_check(const SpaceCurveTrace& trace) {
    const auto& s = trace.samples;
    if (s.size() < 5) throw Error(ErrorKind::InvalidParam, "meridian_angle_check needs at least 5 samples");
    std::vector<double> t;
    std::vector<Vec3> p;
    for (const auto& smp : s) {
        t.push_back(smp.t);
        p.push_back(smp.p);
    }
    check_increasing(t);
    const auto [first, tangents] = sampled_tangents(t, p);
    std::vector<double> angles;
    for (std::size_t k = 0; k < tangents.size(); ++k) {
        const Vec3& q = p[first + k];
        const double rxy = std::hypot(q.x, q.y);
        if (rxy < 1e-12) throw Error(ErrorKind::PoleSingularity, "meridian undefined at a pole");
        const double psi = std::atan2(rxy, q.z);
        const Vec3 e_psi{std::cos(psi) * q.x / rxy, std::cos(psi) * q.y / rxy, -std::sin(psi)};
        angles.push_back(line_angle(e_psi, tangents[k]));
    }
    return stats(angles);
}

Vec2 stereographic(const Vec3& p) {
    if (std::abs(norm(p) - 1.0) > 1e-9)
        throw Error(ErrorKind::InvalidParam, fmt::format("point ({}, {}, {}) is not on the unit sphere", p.x, p.y, p.z));
    const double d = 1.0 - p.z;
    if (d < 1e-12) throw Error(ErrorKind::PoleSingularity, "stereographic projection of the north pole");
    return {p.x / d, p.y / d};
}

PlanarCurveTrace stereographic_trace(const SpaceCurveTrace& trace) {
    PlanarCurveTrace out;
    out.meta = "stereographic(" + trace.meta + ")";
    for (const auto& s : trace.samples) {
        const Vec2 q = stereographic(s.p);
        out.samples.push_back({s.t, q.x, q.y});
    }
    return out;
}

HelixReport helix_check(const SpaceCurveTrace& trace) {
    const auto& s = trace.samples;
    const std::size_t n = s.size();
    if (n < 7) throw Error(ErrorKind::InvalidParam, "helix_check needs at least 7 samples");
    std::vector<double> t;
    for (const auto& smp : s) t.push_back(smp.t);
    check_increasing(t);
    if (!is_uniform(t)) throw Error(ErrorKind::InvalidParam, "helix_check needs uniformly spaced samples");
    const double h = (t.back() - t.front()) / static_cast<double>(n - 1);

    std::vector<Vec3> tangents;
    std::vector<double> ratios;
    for (std::size_t i = 3; i + 3 < n; ++i) {
        auto at = [&](int k) { return s[static_cast<std::size_t>(static_cast<long>(i) + k)].p; };
        const Vec3 d1 = (-at(-3) + 9.0 * at(-2) - 45.0 * at(-1) + 45.0 * at(1) - 9.0 * at(2) + at(3)) / (60.0 * h);
        const Vec3 d2 = (2.0 * at(-3) - 27.0 * at(-2) + 270.0 * at(-1) - 490.0 * at(0) + 270.0 * at(1) -
                         27.0 * at(2) + 2.0 * at(3)) /
                        (180.0 * h * h);
        const Vec3 d3 = (at(-3) - 8.0 * at(-2) + 13.0 * at(-1) - 13.0 * at(1) + 8.0 * at(2) - at(3)) / (8.0 * h * h * h);
        const double speed = norm(d1);
        const Vec3 c = cross(d1, d2);
        const double cn = norm(c);
        const double kappa = cn / (speed * speed * speed);
        const double tau = cn > 0.0 ? dot(c, d3) / (cn * cn) : 0.0;
        if (kappa <= 1e-10 || std::abs(tau) <= 1e-10)
            throw Error(ErrorKind::DegenerateFrenet,
                        fmt::format("curvature {} or torsion {} vanishes at t={}", kappa, tau, s[i].t));
        tangents.push_back(d1 / speed);
        ratios.push_back(kappa / tau);
    }

    Vec3 mean{};
    for (const auto& T : tangents) mean += T;
    mean = mean / static_cast<double>(tangents.size());
    Mat3 cov{};
    for (const auto& T : tangents) {
        const Vec3 d = T - mean;
        const double c[3] = {d.x, d.y, d.z};
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k) cov[r][k] += c[r] * c[k];
    }
    const Eigen3 eig = eig_sym3(cov);
    Vec3 axis = eig.vectors[0];
    if (dot(axis, mean) < 0.0) axis = -axis;

    std::vector<double> angles;
    for (const auto& T : tangents) angles.push_back(angle_between(T, axis));
    const AngleStats a = stats(angles);

    double ratio_mean = 0.0;
    for (double r : ratios) ratio_mean += r;
    ratio_mean /= static_cast<double>(ratios.size());
    double ratio_dev = 0.0;
    for (double r : ratios) ratio_dev = std::max(ratio_dev, std::abs(r - ratio_mean) / std::abs(ratio_mean));

    return {a.max_dev, ratio_dev, ratio_mean, a.mean, axis};
}

SpaceCurveTrace circular_helix(double a, double b, ParamRange t) {
    SpaceCurveTrace out;
    out.meta = fmt::format("helix a={} b={}", a, b);
    for (double ti : linspace(t)) out.samples.push_back({ti, {a * std::cos(ti), a * std::sin(ti), b * ti}});
    return out;
}

SpaceCurveTrace u_line(const SlopeSurface& s, double v0, ParamRange u) {
    SpaceCurveTrace out;
    out.meta = fmt::format("u_line theta={} v={}", s.theta(), v0);
    for (double ui : linspace(u)) out.samples.push_back({ui, position(s, ui, v0)});
    return out;
}

SpaceCurveTrace conchospiral_on_cone(const SlopeSurface& s, double v0, ParamRange u) {
    const SphereCurve& f = s.curve();
    const Interval dom = f.domain();
    double kmin = INFINITY, kmax = -INFINITY;
    for (int i = 0; i <= 16; ++i) {
        const double k = jet(f, dom.lo + dom.length() * i / 16.0).kappa_g;
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    if (kmax - kmin > 1e-6)
        throw Error(ErrorKind::InvalidParam, "conchospiral needs a small circle (constant geodesic curvature)");
    if (std::abs(kmin) < 1e-9)
        throw Error(ErrorKind::InvalidParam, "conchospiral needs a non-great circle (nonzero geodesic curvature)");
    auto out = u_line(s, v0, u);
    out.meta = fmt::format("conchospiral theta={} v={}", s.theta(), v0);
    return out;
}

}  // namespace slope
