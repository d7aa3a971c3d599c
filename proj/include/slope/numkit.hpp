#pragma once

// Small-dimension numerical kernel: fixed 2/3-vectors, central differences,
// adaptive quadrature, monotone inverse interpolation and tiny symmetric
// eigensolvers. Everything here is a pure function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace slope {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::hypot(a.x, a.y, a.z); }

inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

/// Scalar triple product (a, b, c) = <a, b x c>.
constexpr double triple(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

/// Largest absolute component of a - b.
inline double max_abs_diff(const Vec3& a, const Vec3& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

/// Unsigned angle in [0, pi] between two nonzero vectors, accurate near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

inline double angle_between(const Vec2& a, const Vec2& b) {
    return std::atan2(std::abs(a.x * b.y - a.y * b.x), a.x * b.x + a.y * b.y);
}

// ---------------------------------------------------------------------------
// Finite differences

/// Default step for the 5-point stencils: max(1e-4, 1e-4 |t|).
inline double default_step(double t) { return std::max(1e-4, 1e-4 * std::abs(t)); }

using CurveFn = std::function<Vec3(double)>;
using ScalarFn = std::function<double(double)>;

/// 5-point central difference. order 1 is fourth-order accurate, order 2 is
/// the standard 5-point second difference. h <= 0 selects default_step(t).
Vec3 central_diff(const CurveFn& fn, double t, int order, double h = 0.0);

/// Third derivative from the 7-point (fourth-order) stencil. h <= 0 selects
/// max(5e-3, 5e-3 |t|); the fourth-derivative step is too small for a cubed divisor.
Vec3 central_diff3(const CurveFn& fn, double t, double h = 0.0);

// ---------------------------------------------------------------------------
// Quadrature

inline constexpr double kDefaultQuadTol = 1e-10;

/// Adaptive Simpson with Richardson correction. Throws NonConvergence when the
/// recursion reaches depth 40 without meeting tol.
double integrate(const ScalarFn& fn, double a, double b, double tol = kDefaultQuadTol);

/// Fixed 8-point Gauss-Legendre rule on [a, b]; a may exceed b.
double gauss_legendre8(const ScalarFn& fn, double a, double b);

// ---------------------------------------------------------------------------
// Monotone inverse interpolation

struct TableRow {
    double t;
    double s;
};

/// Inverse of a strictly increasing tabulated map t -> s, i.e. s -> t, by
/// piecewise cubic Hermite interpolation with Fritsch-Carlson limited slopes.
/// Rows may optionally carry exact slopes dt/ds (all positive), in which case
/// those are used instead of the limited estimates.
class MonotoneInverse {
public:
    MonotoneInverse() = default;
    explicit MonotoneInverse(std::vector<TableRow> rows);
    MonotoneInverse(std::vector<TableRow> rows, std::vector<double> dt_ds);

    /// Throws OutOfRange outside [s_first, s_last].
    double operator()(double s_query) const;

    /// Index i of the row with s_i <= s_query < s_{i+1} (clamped).
    std::size_t bracket(double s_query) const;

    std::span<const TableRow> rows() const { return rows_; }
    double s_first() const { return rows_.front().s; }
    double s_last() const { return rows_.back().s; }

private:
    std::vector<TableRow> rows_;
    std::vector<double> slopes_;
};

/// Convenience wrapper over MonotoneInverse for a one-off query.
double invert_monotone(std::span<const TableRow> table, double s_query);

// ---------------------------------------------------------------------------
// Symmetric eigenproblems

struct Sym2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;
};

struct Eigen2 {
    double lambda1;  // lambda1 <= lambda2
    double lambda2;
    Vec2 v1;
    Vec2 v2;
};

Eigen2 eig_sym2(const Sym2& m);

using Mat3 = std::array<std::array<double, 3>, 3>;

struct Eigen3 {
    std::array<double, 3> values;  // ascending
    std::array<Vec3, 3> vectors;   // unit, orthogonal
};

/// Cyclic Jacobi on a symmetric 3x3 matrix.
Eigen3 eig_sym3(const Mat3& m);

}  // namespace slope
