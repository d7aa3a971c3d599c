#include "slope/sphere_curve.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "slope/error.hpp"

namespace slope {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinSpeed = 1e-8;

std::string fmt_param(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

SphereCurve SphereCurve::analytic(JetFn jet, Interval domain, bool unit_speed, std::string provenance,
                                  std::optional<double> period) {
    SphereCurve c;
    c.point_ = [jet](double v) { return jet(v).f; };
    c.jet_ = std::move(jet);
    c.domain_ = domain;
    c.unit_speed_ = unit_speed;
    c.provenance_ = std::move(provenance);
    c.period_ = period;
    return c;
}

SphereCurve SphereCurve::pointwise(PointFn point, Interval domain, bool unit_speed, std::string provenance,
                                   std::optional<double> period) {
    SphereCurve c;
    c.point_ = std::move(point);
    c.domain_ = domain;
    c.unit_speed_ = unit_speed;
    c.provenance_ = std::move(provenance);
    c.period_ = period;
    return c;
}

CurvePoint SphereCurve::derivatives(double v) const {
    if (jet_) return jet_(v);
    return {point_(v), central_diff(point_, v, 1), central_diff(point_, v, 2)};
}

Vec3 SphereCurve::tangent(double v) const {
    if (jet_) return jet_(v).d1;
    return central_diff(point_, v, 1);
}

SphereCurve SphereCurve::with_finite_differences() const {
    SphereCurve c = *this;
    c.jet_ = nullptr;
    return c;
}

bool SphereCurve::in_domain(double v) const {
    if (period_) return std::isfinite(v);
    const double slack = 1e-12 * (1.0 + std::max(std::abs(domain_.lo), std::abs(domain_.hi)));
    return v >= domain_.lo - slack && v <= domain_.hi + slack;
}

// ---------------------------------------------------------------------------
// Built-in families

SphereCurve great_circle() {
    return SphereCurve::analytic(
        [](double v) {
            const double c = std::cos(v);
            const double s = std::sin(v);
            return CurvePoint{{c, s, 0.0}, {-s, c, 0.0}, {-c, -s, 0.0}};
        },
        {0.0, kTwoPi}, true, "great-circle", kTwoPi);
}

SphereCurve small_circle(double psi0) {
    if (!(psi0 > 0.0 && psi0 < std::numbers::pi)) {
        throw Error(ErrorKind::InvalidParam, "small-circle colatitude must lie in (0, pi)");
    }
    const double sp = std::sin(psi0);
    const double cp = std::cos(psi0);
    return SphereCurve::analytic(
        [sp, cp](double v) {
            const double c = std::cos(v);
            const double s = std::sin(v);
            return CurvePoint{{sp * c, sp * s, cp}, {-sp * s, sp * c, 0.0}, {-sp * c, -sp * s, 0.0}};
        },
        {0.0, kTwoPi}, false, "small-circle(psi0=" + fmt_param(psi0) + ")", kTwoPi);
}

SphereCurve figure8() {
    return SphereCurve::analytic(
        [](double v) {
            const double c = std::cos(v);
            const double s = std::sin(v);
            const double c2 = std::cos(2.0 * v);
            const double s2 = std::sin(2.0 * v);
            return CurvePoint{{c * c, c * s, s}, {-s2, c2, c}, {-2.0 * c2, -2.0 * s2, -s}};
        },
        {0.0, kTwoPi}, false, "figure8", kTwoPi);
}

SphereCurve sphere_spiral(double v0, double v1) {
    if (!(v0 > 0.0) || !(v1 > v0)) {
        throw Error(ErrorKind::InvalidParam, "sphere-spiral needs 0 < v0 < v1 (phi = log v)");
    }
    return SphereCurve::analytic(
        [](double v) {
            const double sv = std::sin(v);
            const double cv = std::cos(v);
            const double lg = std::log(v);
            const double sl = std::sin(lg);
            const double cl = std::cos(lg);
            const double iv = 1.0 / v;
            const double iv2 = iv * iv;
            return CurvePoint{
                {sv * cl, sv * sl, cv},
                {cv * cl - sv * sl * iv, cv * sl + sv * cl * iv, -sv},
                {-sv * cl - 2.0 * cv * sl * iv + sv * (sl - cl) * iv2,
                 -sv * sl + 2.0 * cv * cl * iv - sv * (sl + cl) * iv2, -cv}};
        },
        {v0, v1}, false, "sphere-spiral(v0=" + fmt_param(v0) + ",v1=" + fmt_param(v1) + ")");
}

SphereCurve cone_circle() {
    const double h = 0.5 * std::sqrt(3.0);
    return SphereCurve::analytic(
        [h](double v) {
            const double c = 0.5 * std::cos(v);
            const double s = 0.5 * std::sin(v);
            return CurvePoint{{c, h, s}, {-s, 0.0, c}, {-c, 0.0, -s}};
        },
        {0.0, kTwoPi}, false, "cone-circle", kTwoPi);
}

SphereCurve builtin_curve(CurveFamily family, const CurveParams& params) {
    switch (family) {
        case CurveFamily::GreatCircle: return great_circle();
        case CurveFamily::SmallCircle: return small_circle(params.psi0);
        case CurveFamily::Figure8: return figure8();
        case CurveFamily::SphereSpiral: return sphere_spiral(params.v0, params.v1);
        case CurveFamily::ConeCircle: return cone_circle();
    }
    throw Error(ErrorKind::InvalidParam, "unknown curve family");
}

// ---------------------------------------------------------------------------
// Sampled curves

namespace {

struct SampledData {
    std::vector<double> params;
    std::vector<Vec3> points;
    std::vector<Vec3> slopes;

    Vec3 eval(double v) const {
        const std::size_t n = params.size();
        std::size_t i;
        if (v <= params.front()) {
            i = 0;
        } else if (v >= params.back()) {
            i = n - 2;
        } else {
            const auto it = std::upper_bound(params.begin(), params.end(), v);
            i = static_cast<std::size_t>(it - params.begin()) - 1;
        }
        const double h = params[i + 1] - params[i];
        const double x = (v - params[i]) / h;
        const double x2 = x * x;
        const double x3 = x2 * x;
        const Vec3 p = (2.0 * x3 - 3.0 * x2 + 1.0) * points[i] + (h * (x3 - 2.0 * x2 + x)) * slopes[i] +
                       (-2.0 * x3 + 3.0 * x2) * points[i + 1] + (h * (x3 - x2)) * slopes[i + 1];
        return normalized(p);
    }
};

}  // namespace

SphereCurve sampled_curve(std::vector<double> params, std::vector<Vec3> points, std::string provenance) {
    const std::size_t n = params.size();
    if (n < 4 || points.size() != n) {
        throw Error(ErrorKind::InvalidParam, "sampled curve needs at least 4 (v, point) samples");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(params[i] > params[i - 1])) {
            throw Error(ErrorKind::InvalidParam, "sampled curve parameters must be strictly increasing");
        }
    }
    for (auto& p : points) {
        const double len = norm(p);
        if (!(len > 0.0) || !std::isfinite(len)) {
            throw Error(ErrorKind::InvalidParam, "sampled curve contains a zero or non-finite point");
        }
        p = p / len;
    }
    auto data = std::make_shared<SampledData>();
    data->slopes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || i == n - 1) {
            const std::size_t a = i == 0 ? 0 : n - 2;
            data->slopes[i] = (points[a + 1] - points[a]) / (params[a + 1] - params[a]);
        } else {
            const double h0 = params[i] - params[i - 1];
            const double h1 = params[i + 1] - params[i];
            const Vec3 d0 = (points[i] - points[i - 1]) / h0;
            const Vec3 d1 = (points[i + 1] - points[i]) / h1;
            data->slopes[i] = (h0 * d1 + h1 * d0) / (h0 + h1);
        }
    }
    const Interval domain{params.front(), params.back()};
    data->params = std::move(params);
    data->points = std::move(points);
    return SphereCurve::pointwise([data](double v) { return data->eval(v); }, domain, false,
                                  "samples(" + provenance + ")");
}

double validate_on_sphere(const SphereCurve& curve, int samples) {
    if (samples < 2) throw Error(ErrorKind::InvalidParam, "validate_on_sphere needs at least 2 samples");
    const Interval d = curve.domain();
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double v = d.lo + d.length() * static_cast<double>(i) / (samples - 1);
        worst = std::max(worst, std::abs(norm(curve.eval(v)) - 1.0));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Arc-length reparametrization

double arc_length(const SphereCurve& curve, double tol) {
    const Interval d = curve.domain();
    return integrate([&](double t) { return norm(curve.derivatives(t).d1); }, d.lo, d.hi, tol);
}

namespace {

/// s -> t for the inner curve: tabulated arc length, Hermite initial guess
/// with exact slopes 1/|g'|, then Newton on s_i + int_{t_i}^t |g'| = s.
class ArcLengthMap {
public:
    ArcLengthMap(SphereCurve inner, int resolution) : inner_(std::move(inner)) {
        const Interval d = inner_.domain();
        const double step = d.length() / resolution;
        std::vector<TableRow> rows(static_cast<std::size_t>(resolution) + 1);
        std::vector<double> slopes(rows.size());
        const double panel_tol = kDefaultQuadTol / resolution;
        double s = 0.0;
        for (int i = 0; i <= resolution; ++i) {
            const double t = i == resolution ? d.hi : d.lo + step * i;
            if (i > 0) {
                const double t_prev = rows[static_cast<std::size_t>(i) - 1].t;
                const double mid_speed = speed(0.5 * (t_prev + t));
                if (mid_speed < kMinSpeed) degenerate(0.5 * (t_prev + t), mid_speed);
                s += integrate([this](double x) { return speed(x); }, t_prev, t, panel_tol);
            }
            const double sp = speed(t);
            if (sp < kMinSpeed) degenerate(t, sp);
            rows[static_cast<std::size_t>(i)] = {t, s};
            slopes[static_cast<std::size_t>(i)] = 1.0 / sp;
        }
        length_ = s;
        inverse_ = MonotoneInverse(std::move(rows), std::move(slopes));
    }

    double length() const { return length_; }
    const SphereCurve& inner() const { return inner_; }

    double t_of(double s) const {
        if (inner_.period()) s -= length_ * std::floor(s / length_);
        const auto rows = inverse_.rows();
        const std::size_t i = inverse_.bracket(std::clamp(s, 0.0, length_));
        double t;
        if (s < 0.0) {
            t = rows.front().t + s / speed(rows.front().t);
        } else if (s > length_) {
            t = rows.back().t + (s - length_) / speed(rows.back().t);
        } else {
            t = inverse_(s);
        }
        const TableRow anchor = (s > length_) ? rows.back() : rows[i];
        for (int iter = 0; iter < 8; ++iter) {
            const double arc = anchor.s + gauss_legendre8([this](double x) { return speed(x); }, anchor.t, t);
            const double dt = (arc - s) / speed(t);
            t -= dt;
            if (std::abs(dt) <= 4e-16 * (1.0 + std::abs(t))) break;
        }
        return t;
    }

private:
    double speed(double t) const { return norm(inner_.derivatives(t).d1); }

    [[noreturn]] static void degenerate(double t, double sp) {
        throw Error(ErrorKind::DegenerateCurve,
                    "speed " + fmt_param(sp) + " below 1e-8 at parameter " + fmt_param(t));
    }

    SphereCurve inner_;
    MonotoneInverse inverse_;
    double length_ = 0.0;
};

}  // namespace

SphereCurve reparametrize_unit_speed(const SphereCurve& curve, int resolution) {
    if (resolution < 2) throw Error(ErrorKind::InvalidParam, "reparametrization needs at least 2 rows");
    auto map = std::make_shared<const ArcLengthMap>(curve, resolution);
    const Interval domain{0.0, map->length()};
    std::optional<double> period;
    if (curve.period()) period = map->length();
    std::string provenance = "reparametrized(" + curve.provenance() + ")";

    if (curve.derivative_mode() == DerivativeMode::Analytic) {
        // Chain rule through t(s): t' = 1/|g'|, t'' = -<g', g''>/|g'|^4.
        return SphereCurve::analytic(
            [map](double s) {
                const CurvePoint g = map->inner().derivatives(map->t_of(s));
                const double sp2 = dot(g.d1, g.d1);
                const double sp = std::sqrt(sp2);
                const Vec3 f1 = g.d1 / sp;
                const Vec3 f2 = (g.d2 - (dot(g.d1, g.d2) / sp2) * g.d1) / sp2;
                return CurvePoint{g.f, f1, f2};
            },
            domain, true, std::move(provenance), period);
    }
    return SphereCurve::pointwise([map](double s) { return map->inner().eval(map->t_of(s)); }, domain, true,
                                  std::move(provenance), period);
}

CurveJet jet(const SphereCurve& curve, double v) {
    if (!curve.unit_speed()) {
        throw Error(ErrorKind::NotUnitSpeed, "curve '" + curve.provenance() + "' is not unit speed");
    }
    if (!curve.in_domain(v)) {
        throw Error(ErrorKind::DomainError, "parameter " + fmt_param(v) + " outside curve domain");
    }
    const CurvePoint p = curve.derivatives(v);
    return CurveJet{p.f, p.d1, p.d2, cross(p.f, p.d1), triple(p.f, p.d1, p.d2)};
}

}  // namespace slope
