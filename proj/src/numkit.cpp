#include "slope/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slope/error.hpp"

namespace slope {

Vec3 central_diff(const CurveFn& fn, double t, int order, double h) {
    if (h <= 0.0) h = default_step(t);
    const Vec3 fm2 = fn(t - 2.0 * h);
    const Vec3 fm1 = fn(t - h);
    const Vec3 fp1 = fn(t + h);
    const Vec3 fp2 = fn(t + 2.0 * h);
    if (order == 1) {
        return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    }
    if (order == 2) {
        const Vec3 f0 = fn(t);
        return (-1.0 * fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    }
    throw Error(ErrorKind::InvalidParam, "central_diff order must be 1 or 2");
}

Vec3 central_diff3(const CurveFn& fn, double t, double h) {
    if (h <= 0.0) h = std::max(5e-3, 5e-3 * std::abs(t));
    const Vec3 fm3 = fn(t - 3.0 * h);
    const Vec3 fm2 = fn(t - 2.0 * h);
    const Vec3 fm1 = fn(t - h);
    const Vec3 fp1 = fn(t + h);
    const Vec3 fp2 = fn(t + 2.0 * h);
    const Vec3 fp3 = fn(t + 3.0 * h);
    return (fm3 - 8.0 * fm2 + 13.0 * fm1 - 13.0 * fp1 + 8.0 * fp2 - fp3) / (8.0 * h * h * h);
}

namespace {

constexpr int kMaxSimpsonDepth = 40;

double simpson_step(const ScalarFn& fn, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm);
    const double frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= kMaxSimpsonDepth) {
        throw Error(ErrorKind::NonConvergence,
                    "adaptive Simpson reached depth 40 near [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    }
    return simpson_step(fn, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           simpson_step(fn, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const ScalarFn& fn, double a, double b, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidParam, "quadrature tolerance must be positive");
    if (a > b) throw Error(ErrorKind::InvalidParam, "integrate requires a <= b");
    if (a == b) return 0.0;
    const double fa = fn(a);
    const double fb = fn(b);
    const double m = 0.5 * (a + b);
    const double fm = fn(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(fn, a, fa, b, fb, m, fm, whole, tol, 0);
}

double gauss_legendre8(const ScalarFn& fn, double a, double b) {
    static constexpr std::array<double, 4> nodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                                    0.9602898564975363};
    static constexpr std::array<double, 4> weights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                      0.1012285362903763};
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        sum += weights[i] * (fn(mid - half * nodes[i]) + fn(mid + half * nodes[i]));
    }
    return half * sum;
}

// ---------------------------------------------------------------------------

namespace {

void check_table(const std::vector<TableRow>& rows) {
    if (rows.size() < 2) throw Error(ErrorKind::InvalidParam, "monotone table needs at least 2 rows");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].s > rows[i - 1].s) || !(rows[i].t > rows[i - 1].t)) {
            throw Error(ErrorKind::InvalidParam, "monotone table must be strictly increasing in t and s");
        }
    }
}

// Three-point (parabolic) slope estimates followed by Fritsch-Carlson limiting.
std::vector<double> limited_slopes(const std::vector<TableRow>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> h(n - 1);
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = rows[i + 1].s - rows[i].s;
        d[i] = (rows[i + 1].t - rows[i].t) / h[i];
    }
    std::vector<double> m(n);
    if (n == 2) {
        m[0] = m[1] = d[0];
        return m;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m[i] = (h[i - 1] * d[i] + h[i] * d[i - 1]) / (h[i - 1] + h[i]);
    }
    m[0] = ((2.0 * h[0] + h[1]) * d[0] - h[0] * d[1]) / (h[0] + h[1]);
    m[n - 1] = ((2.0 * h[n - 2] + h[n - 3]) * d[n - 2] - h[n - 2] * d[n - 3]) / (h[n - 2] + h[n - 3]);
    if (m[0] <= 0.0) m[0] = 0.0;
    if (m[n - 1] <= 0.0) m[n - 1] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double alpha = m[i] / d[i];
        const double beta = m[i + 1] / d[i];
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            m[i] = tau * alpha * d[i];
            m[i + 1] = tau * beta * d[i];
        }
    }
    return m;
}

}  // namespace

MonotoneInverse::MonotoneInverse(std::vector<TableRow> rows) : rows_(std::move(rows)) {
    check_table(rows_);
    slopes_ = limited_slopes(rows_);
}

MonotoneInverse::MonotoneInverse(std::vector<TableRow> rows, std::vector<double> dt_ds)
    : rows_(std::move(rows)), slopes_(std::move(dt_ds)) {
    check_table(rows_);
    if (slopes_.size() != rows_.size()) throw Error(ErrorKind::InvalidParam, "slope count must match row count");
    for (double m : slopes_) {
        if (!(m > 0.0)) throw Error(ErrorKind::InvalidParam, "inverse slopes must be positive");
    }
}

std::size_t MonotoneInverse::bracket(double s_query) const {
    const auto it = std::upper_bound(rows_.begin(), rows_.end(), s_query,
                                     [](double s, const TableRow& row) { return s < row.s; });
    const auto idx = static_cast<std::size_t>(std::distance(rows_.begin(), it));
    if (idx == 0) return 0;
    return std::min(idx - 1, rows_.size() - 2);
}

double MonotoneInverse::operator()(double s_query) const {
    if (rows_.empty()) throw Error(ErrorKind::InvalidParam, "empty monotone table");
    if (!(s_query >= s_first() && s_query <= s_last())) {
        throw Error(ErrorKind::OutOfRange, "query " + std::to_string(s_query) + " outside table span");
    }
    const std::size_t i = bracket(s_query);
    const TableRow& lo = rows_[i];
    const TableRow& hi = rows_[i + 1];
    const double h = hi.s - lo.s;
    const double x = (s_query - lo.s) / h;
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
    const double h10 = x3 - 2.0 * x2 + x;
    const double h01 = -2.0 * x3 + 3.0 * x2;
    const double h11 = x3 - x2;
    return h00 * lo.t + h10 * h * slopes_[i] + h01 * hi.t + h11 * h * slopes_[i + 1];
}

double invert_monotone(std::span<const TableRow> table, double s_query) {
    return MonotoneInverse(std::vector<TableRow>(table.begin(), table.end()))(s_query);
}

// ---------------------------------------------------------------------------

namespace {

// Canonical sign: first clearly nonzero component positive.
Vec2 canonical(Vec2 v) {
    const bool flip = std::abs(v.x) > 1e-14 ? v.x < 0.0 : v.y < 0.0;
    return flip ? Vec2{-v.x, -v.y} : v;
}

}  // namespace

Eigen2 eig_sym2(const Sym2& m) {
    const double mean = 0.5 * (m.a11 + m.a22);
    const double half_diff = 0.5 * (m.a11 - m.a22);
    const double radius = std::hypot(half_diff, m.a12);
    // Rotation angle of the eigenvector belonging to the larger eigenvalue.
    const double phi = 0.5 * std::atan2(m.a12, half_diff);
    const Vec2 upper{std::cos(phi), std::sin(phi)};
    const Vec2 lower{-std::sin(phi), std::cos(phi)};
    return Eigen2{mean - radius, mean + radius, canonical(lower), canonical(upper)};
}

Eigen3 eig_sym3(const Mat3& input) {
    Mat3 a = input;
    Mat3 v{};
    for (int i = 0; i < 3; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if (off < 1e-30) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });
    Eigen3 out{};
    for (int k = 0; k < 3; ++k) {
        const int c = order[k];
        out.values[k] = a[c][c];
        out.vectors[k] = normalized(Vec3{v[0][c], v[1][c], v[2][c]});
    }
    return out;
}

}  // namespace slope
