#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "slope/diffgeo.hpp"
#include "slope/error.hpp"

using namespace slope;

namespace {

constexpr double kPi = std::numbers::pi;

struct Config {
    double theta;
    SphereCurve curve;
};

std::vector<Config> figure_configs() {
    return {{kPi / 5, great_circle()},
            {kPi / 15, figure8()},
            {kPi / 4, sphere_spiral(0.1, 3.0)},
            {kPi / 2, cone_circle()}};
}

std::vector<std::pair<double, double>> random_points(const SlopeSurface& s, int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Interval ud = s.u_domain(), vd = s.v_domain();
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < n; ++i) {
        const double u = ud.lo * std::pow(ud.hi / ud.lo, 0.02 + 0.96 * uni(rng));
        const double v = vd.lo + vd.length() * (0.02 + 0.96 * uni(rng));
        out.emplace_back(u, v);
    }
    return out;
}

bool regular(const SlopeSurface& s, double u, double v) {
    const double Q = std::atan(slope::jet(s.curve(), v).kappa_g);
    return std::abs(std::cos(xi(u, s.theta()) + Q)) > 0.05;
}

}  // namespace

TEST(FundamentalForms, Plane) {
    const DegenerateSurface p = DegenerateSurface::cone(great_circle());
    const FundamentalForms f = fundamental_forms(p.jet(1.3, 0.4), p.second_partials(1.3, 0.4));
    EXPECT_NEAR(f.L, 0.0, 1e-12);
    EXPECT_NEAR(f.M, 0.0, 1e-12);
    EXPECT_NEAR(f.Nn, 0.0, 1e-7);
}

TEST(FundamentalForms, UnitSphereIsUmbilic) {
    const DegenerateSurface s = DegenerateSurface::sphere(1.0);
    const FundamentalForms f = fundamental_forms(s.jet(1.1, 0.3), s.second_partials(1.1, 0.3));
    EXPECT_NEAR(std::abs(f.L / f.E), 1.0, 1e-14);
    EXPECT_NEAR(f.Nn / f.G, f.L / f.E, 1e-14);
    EXPECT_NEAR(f.F, 0.0, 1e-15);
    EXPECT_NEAR(f.M, 0.0, 1e-15);
}

TEST(FundamentalForms, UnitFirstCoefficient) {
    const SlopeSurface s(kPi / 5, great_circle());
    const FundamentalForms f = fundamental_forms(jet(s, 1.0, 0.0), second_partials(s, 1.0, 0.0));
    EXPECT_NEAR(f.E, 1.0, 1e-15);
    EXPECT_NEAR(f.F, 0.0, 1e-15);
}

TEST(FundamentalForms, SingularJetRejected) {
    const SlopeSurface s(kPi / 4, great_circle());
    const double u0 = std::exp(kPi / 2);
    try {
        fundamental_forms(jet(s, u0, 0.0), second_partials(s, u0, 0.0));
        FAIL() << "expected SingularPoint";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SingularPoint);
    }
}

TEST(ShapeOperator, SphereIsScaledIdentity) {
    const DegenerateSurface s = DegenerateSurface::sphere(2.0);
    const Sym2 a = shape_operator(fundamental_forms(s.jet(0.8, 2.0), s.second_partials(0.8, 2.0)));
    EXPECT_NEAR(std::abs(a.a11), 0.5, 1e-14);
    EXPECT_NEAR(a.a22, a.a11, 1e-14);
    EXPECT_NEAR(a.a12, 0.0, 1e-14);
}

TEST(ShapeOperator, PlaneIsZero) {
    const DegenerateSurface p = DegenerateSurface::cone(great_circle());
    const Sym2 a = shape_operator(fundamental_forms(p.jet(2.0, 1.0), p.second_partials(2.0, 1.0)));
    EXPECT_NEAR(a.a11, 0.0, 1e-12);
    EXPECT_NEAR(a.a12, 0.0, 1e-12);
    EXPECT_NEAR(a.a22, 0.0, 1e-7);
}

TEST(ShapeOperator, DegenerateMetric) {
    const FundamentalForms f{1.0, 1.0, 1.0, 0.0, 0.0, 0.0};
    try {
        shape_operator(f);
        FAIL() << "expected DegenerateMetric";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateMetric);
    }
}

TEST(ShapeOperator, EigenvalueAlongUTangent) {
    const SlopeSurface s(kPi / 4, great_circle());
    const Eigen2 e = eig_sym2(shape_operator(fundamental_forms(jet(s, 1.0, 0.5), second_partials(s, 1.0, 0.5))));
    EXPECT_TRUE(std::abs(e.lambda1 + 1.0) < 1e-6 || std::abs(e.lambda2 + 1.0) < 1e-6);
}

TEST(Curvature, ConeIsFlat) {
    const DegenerateSurface c = DegenerateSurface::cone(cone_circle());
    for (double u : {0.2, 1.0, 3.7}) {
        for (double v : {0.1, 1.5, 3.0}) {
            const CurvatureData k = curvature(c, u, v);
            EXPECT_NEAR(k.K, 0.0, 1e-7);
            EXPECT_NEAR(principal_along_ru(c.as_slope_surface(), u, v).k_ru, 0.0, 1e-9);
        }
    }
}

TEST(Curvature, PrincipalAlongUTangentReference) {
    const SlopeSurface s(kPi / 4, great_circle());
    EXPECT_NEAR(principal_along_ru(s, 1.0, 0.2).k_ru, -1.0, 1e-6);
    const double u = std::exp(2.0);
    const SlopeSurface wide(kPi / 4, great_circle(), {0.05, 10.0});
    EXPECT_NEAR(principal_along_ru(wide, u, 0.2).k_ru, -std::exp(-2.0), 1e-6);
}

TEST(Curvature, InvariantRelations) {
    for (const auto& [theta, curve] : figure_configs()) {
        const SlopeSurface s(theta, curve);
        for (auto [u, v] : random_points(s, 100, 21)) {
            if (!regular(s, u, v)) continue;
            const SurfaceJet j = jet(s, u, v);
            const SecondPartials sp = second_partials(s, u, v);
            const CurvatureData c = curvature(j, sp);
            const FundamentalForms f = fundamental_forms(j, sp);
            const double tol = 1e-8 * (1.0 + std::abs(c.k1 * c.k2));
            EXPECT_LE(c.k1, c.k2);
            EXPECT_NEAR(c.K, c.k1 * c.k2, tol);
            EXPECT_NEAR(c.H, 0.5 * (c.k1 + c.k2), tol);
            EXPECT_NEAR(dot(c.dir1, c.dir2), 0.0, 1e-8);
            EXPECT_NEAR(dot(c.dir1, j.normal), 0.0, 1e-8);
            EXPECT_NEAR(dot(c.dir2, j.normal), 0.0, 1e-8);
            // Gauss consistency with the coordinate formula
            const double gauss = (f.L * f.Nn - f.M * f.M) / (f.E * f.G - f.F * f.F);
            EXPECT_NEAR(c.K, gauss, 1e-8 * (1.0 + std::abs(gauss)));
        }
    }
}

TEST(Curvature, PrincipalDirectionAlongUTangent) {
    for (const auto& [theta, curve] : figure_configs()) {
        const SlopeSurface s(theta, curve);
        for (auto [u, v] : random_points(s, 200, 22)) {
            if (!regular(s, u, v)) continue;
            const AlongRu a = principal_along_ru(s, u, v);
            if (a.umbilic) continue;
            EXPECT_NEAR(a.k_ru, a.expected, 1e-6);
            EXPECT_LE(a.angle, 1e-4);
        }
    }
}

TEST(Curvature, SphereIsEverywhereUmbilic) {
    const DegenerateSurface s = DegenerateSurface::sphere(1.5);
    for (double u = 0.3; u < 3.0; u += 0.4) EXPECT_TRUE(curvature(s, u, 1.0).umbilic);
}

TEST(Lambda, ConeOverConeCircle) {
    const SlopeSurface s(kPi / 2, cone_circle());
    const int sign = estimate_lambda_sign(s);
    for (double u : {0.3, 1.0, 4.0}) {
        const LambdaCheck l = verify_lambda(s, u, 2.0, sign);
        EXPECT_NEAR(std::abs(l.lambda_numeric), std::sqrt(3.0) / u, 1e-6);
        EXPECT_LE(l.dev, 1e-6);
    }
}

TEST(Lambda, GreatCircleClosedForm) {
    const SlopeSurface s(kPi / 3, great_circle());
    const LambdaCheck l = verify_lambda(s, 1.0, 0.0, estimate_lambda_sign(s));
    EXPECT_NEAR(l.lambda_closed, -0.5 / std::sin(kPi / 3), 1e-14);
    EXPECT_LE(l.dev, 1e-6);
}

TEST(Lambda, FigureEightRandomSamples) {
    const SlopeSurface s(kPi / 15, figure8());
    const int sign = estimate_lambda_sign(s);
    int checked = 0;
    for (auto [u, v] : random_points(s, 400, 23)) {
        if (!regular(s, u, v) || checked == 200) continue;
        const LambdaCheck l = verify_lambda(s, u, v, sign);
        EXPECT_LE(l.dev / std::max(1.0, std::abs(l.lambda_closed)), 1e-5);
        ++checked;
    }
    EXPECT_EQ(checked, 200);
}

TEST(Lambda, OneSignForEveryConfiguration) {
    const int first = estimate_lambda_sign(SlopeSurface(kPi / 5, great_circle()));
    for (const auto& [theta, curve] : figure_configs()) EXPECT_EQ(estimate_lambda_sign(SlopeSurface(theta, curve)), first);
}

TEST(Connection, GreatCircleExample) {
    const SlopeSurface s(kPi / 5, great_circle());
    EXPECT_LE(verify_connection(s, 2.0, 1.0, estimate_lambda_sign(s)), 1e-4);
}

TEST(Connection, PlanePolarFrame) {
    const SlopeSurface s(kPi / 2, great_circle());
    const int sign = estimate_lambda_sign(s);
    for (double u : {0.5, 1.0, 3.0}) EXPECT_LE(verify_connection(s, u, 0.7, sign), 1e-5);
}

TEST(Connection, RandomSamples) {
    for (const auto& [theta, curve] : figure_configs()) {
        const SlopeSurface s(theta, curve);
        const int sign = estimate_lambda_sign(s);
        for (auto [u, v] : random_points(s, 40, 24)) {
            if (!regular(s, u, v)) continue;
            EXPECT_LE(verify_connection(s, u, v, sign), 1e-4);
        }
    }
}

TEST(VerifySurface, SphereBranch) {
    const VerificationReport r = verify_surface(DegenerateSurface::sphere(1.0), Grid{16, 16});
    EXPECT_LE(r.max_angle_dev, 1e-9);
    EXPECT_LE(r.max_norm_dev, 1e-9);
    EXPECT_EQ(r.umbilic_count, r.samples);
    EXPECT_EQ(r.samples, 256);
}

TEST(VerifySurface, SphereSpiralAllChecks) {
    const VerificationReport r = verify_surface(SlopeSurface(kPi / 4, sphere_spiral(0.1, 3.0)), Grid{64, 64});
    EXPECT_LE(r.max_angle_dev, 1e-5);
    EXPECT_LE(r.max_norm_dev, 1e-5);
    EXPECT_LE(r.max_ode_residual, 1e-5);
    EXPECT_LE(r.max_k1_dev, 1e-5);
    EXPECT_LE(r.max_lambda_dev, 1e-5);
    EXPECT_LE(r.max_connection_dev, 1e-4);
    EXPECT_EQ(r.samples, 64 * 64);
}

TEST(VerifySurface, AnalyticAndOracleAgree) {
    for (const auto& [theta, curve] : figure_configs()) {
        const SlopeSurface s(theta, curve);
        const VerificationReport a = verify_surface(s, Grid{16, 16});
        const VerificationReport o = verify_surface(s.with_mode(JetMode::Oracle), Grid{16, 16});
        const Thresholds ta = default_thresholds(JetMode::Analytic);
        const Thresholds to = default_thresholds(JetMode::Oracle);
        EXPECT_TRUE(passes(a, ta));
        EXPECT_TRUE(passes(o, to));
        EXPECT_NEAR(a.max_angle_dev, o.max_angle_dev, 10 * to.angle);
        EXPECT_NEAR(a.max_ode_residual, o.max_ode_residual, 10 * to.ode);
        EXPECT_NEAR(a.max_k1_dev, o.max_k1_dev, 10 * to.k1);
        EXPECT_EQ(a.singular_count, o.singular_count);
    }
}

TEST(VerifySurface, CountsSingularSamples) {
    // u domain straddles the cuspidal edge of the great-circle surface
    const SlopeSurface s(kPi / 4, great_circle(), {1.0, 30.0});
    const VerificationReport r = verify_surface(s, Grid{64, 8});
    EXPECT_TRUE(passes(r, default_thresholds(JetMode::Analytic)));
    EXPECT_EQ(r.samples, 64 * 8);
}

TEST(VerifySurface, ThresholdsDecide) {
    VerificationReport r;
    r.samples = 1;
    const Thresholds t = default_thresholds(JetMode::Analytic);
    EXPECT_TRUE(passes(r, t));
    r.max_angle_dev = 2 * t.angle;
    EXPECT_FALSE(passes(r, t));
}
