#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "slope/error.hpp"
#include "slope/spirals.hpp"

using namespace slope;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::IoError;
}

double radius(const PlanarSample& s) { return std::hypot(s.x, s.y); }

}  // namespace

TEST(LogSpiral, StartsAtScale) {
    const auto tr = log_spiral(2.5, kPi / 3, {0.0, 5.0, 11});
    EXPECT_EQ(tr.samples.front().x, 2.5);
    EXPECT_EQ(tr.samples.front().y, 0.0);
}

TEST(LogSpiral, RightAngleIsCircle) {
    const auto tr = log_spiral(1.7, kPi / 2, {-3.0, 9.0, 200});
    for (const auto& s : tr.samples) EXPECT_NEAR(radius(s), 1.7, 1e-15);
    const AngleStats st = equiangular_check(tr);
    EXPECT_NEAR(st.mean, kPi / 2, 1e-8);
}

TEST(LogSpiral, FullTurnValue) {
    const auto tr = log_spiral(1.0, kPi / 4, {0.0, 2 * kPi, 5});
    EXPECT_NEAR(tr.samples.back().x, 535.4917, 1e-4);
    EXPECT_NEAR(tr.samples.back().x, std::exp(2 * kPi), 1e-10);
    EXPECT_NEAR(tr.samples.back().y, 0.0, 1e-10);
}

TEST(LogSpiral, PolarForm) {
    for (double theta : {0.3, kPi / 4, 1.2}) {
        const auto tr = log_spiral(0.8, theta, {-4.0, 8.0, 300});
        for (const auto& s : tr.samples) {
            const double expected = 0.8 * std::exp(s.t / std::tan(theta));
            EXPECT_NEAR(radius(s), expected, 1e-9 * std::max(1.0, expected));
        }
    }
}

TEST(LogSpiral, InvalidParams) {
    EXPECT_EQ(kind_of([] { log_spiral(0.0, 1.0, {0, 1, 10}); }), ErrorKind::InvalidParam);
    EXPECT_EQ(kind_of([] { log_spiral(1.0, 0.0, {0, 1, 10}); }), ErrorKind::InvalidParam);
    EXPECT_EQ(kind_of([] { log_spiral(1.0, 2.0, {0, 1, 10}); }), ErrorKind::InvalidParam);
    EXPECT_EQ(kind_of([] { log_spiral(1.0, 1.0, {0, 1, 1}); }), ErrorKind::InvalidParam);
}

TEST(GoldenSpiral, QuarterTurnGrowth) {
    const int n = 401;
    const auto tr = golden_spiral(1.0, {0.0, 4 * kPi, n});
    // samples are pi/100 apart, so a quarter turn is 50 samples
    for (int i = 0; i + 50 < n; ++i) {
        const double ratio = radius(tr.samples[static_cast<std::size_t>(i + 50)]) / radius(tr.samples[static_cast<std::size_t>(i)]);
        EXPECT_NEAR(ratio, kGoldenRatio, 1e-12);
    }
    EXPECT_EQ(tr.samples.front().x, 1.0);
    EXPECT_EQ(tr.samples.front().y, 0.0);
}

TEST(GoldenSpiral, FullTurnFactor) {
    const auto tr = golden_spiral(1.0, {0.0, 2 * kPi, 3});
    const double phi4 = 3 * kGoldenRatio + 2;
    EXPECT_NEAR(phi4, 6.854102, 1e-6);
    EXPECT_NEAR(radius(tr.samples.back()), phi4, 1e-12);
}

TEST(EquiangularCheck, LogSpiralDense) {
    const AngleStats st = equiangular_check(log_spiral(1.0, kPi / 3, {0.0, 6 * kPi, 4001}));
    EXPECT_NEAR(st.mean, kPi / 3, 1e-6);
    EXPECT_LE(st.max_dev, 1e-6);
}

TEST(EquiangularCheck, StraightRay) {
    PlanarCurveTrace ray;
    for (int i = 1; i <= 20; ++i) ray.samples.push_back({double(i), 0.5 * i, 0.25 * i});
    EXPECT_NEAR(equiangular_check(ray).mean, 0.0, 1e-12);
}

TEST(EquiangularCheck, NonUniformSamples) {
    PlanarCurveTrace tr;
    const double b = 1.0 / std::tan(1.1);
    for (int i = 0; i <= 3000; ++i) {
        const double t = 4.0 * std::pow(i / 3000.0, 1.3);
        tr.samples.push_back({t, std::exp(b * t) * std::cos(t), std::exp(b * t) * std::sin(t)});
    }
    const AngleStats st = equiangular_check(tr);
    EXPECT_NEAR(st.mean, 1.1, 1e-5);
}

TEST(EquiangularCheck, Errors) {
    PlanarCurveTrace tr;
    for (int i = 0; i < 6; ++i) tr.samples.push_back({double(i), double(i), 0.0});
    EXPECT_EQ(kind_of([&] { equiangular_check(tr); }), ErrorKind::OriginSample);
    tr.samples.resize(4);
    EXPECT_THROW(equiangular_check(tr), Error);
}

TEST(Loxodrome, EquatorCrossing) {
    const auto tr = loxodrome(kPi / 3, 1, {-1.0, 1.0, 3});
    const Vec3 p = tr.samples[1].p;
    EXPECT_NEAR(p.x, 1.0, 1e-15);
    EXPECT_NEAR(p.y, 0.0, 1e-15);
    EXPECT_NEAR(p.z, 0.0, 1e-15);
}

TEST(Loxodrome, OnSphere) {
    for (const auto& s : loxodrome(0.4, -1, {-10.0, 10.0, 1000}).samples) EXPECT_NEAR(norm(s.p), 1.0, 1e-12);
}

TEST(Loxodrome, ApproachesSouthPole) {
    const auto tr = loxodrome(kPi / 4, 1, {0.0, 40.0, 10});
    const Vec3 p = tr.samples.back().p;
    EXPECT_NEAR(p.z, -1.0, 1e-12);
}

TEST(Loxodrome, ConstantMeridianAngle) {
    for (double theta : {kPi / 6, kPi / 4, kPi / 3}) {
        for (int sign : {1, -1}) {
            const AngleStats st = meridian_angle_check(loxodrome(theta, sign, {-6.0, 6.0, 1000}));
            EXPECT_NEAR(st.mean, theta, 1e-6);
            EXPECT_LE(st.max_dev, 1e-6);
        }
    }
}

TEST(Loxodrome, InvalidParams) {
    EXPECT_EQ(kind_of([] { loxodrome(kPi / 2, 1, {0, 1, 10}); }), ErrorKind::InvalidParam);
    EXPECT_EQ(kind_of([] { loxodrome(0.5, 0, {0, 1, 10}); }), ErrorKind::InvalidParam);
}

TEST(Stereographic, Basics) {
    const Vec2 a = stereographic({1, 0, 0});
    EXPECT_NEAR(a.x, 1.0, 1e-15);
    EXPECT_NEAR(a.y, 0.0, 1e-15);
    const Vec2 b = stereographic({0, 0, -1});
    EXPECT_NEAR(b.x, 0.0, 1e-15);
    EXPECT_NEAR(b.y, 0.0, 1e-15);
    EXPECT_EQ(kind_of([] { stereographic({0, 0, 1}); }), ErrorKind::PoleSingularity);
    EXPECT_EQ(kind_of([] { stereographic({0, 0, 2}); }), ErrorKind::InvalidParam);
}

TEST(Stereographic, LoxodromeImagesAreLogSpirals) {
    for (double theta : {kPi / 6, kPi / 4, kPi / 3}) {
        const AngleStats st = equiangular_check(stereographic_trace(loxodrome(theta, 1, {-6.0, 6.0, 2000})));
        EXPECT_NEAR(st.mean, theta, 1e-4);
        EXPECT_LE(st.max_dev, 1e-5);
    }
}

TEST(HelixCheck, UnitHelix) {
    const HelixReport h = helix_check(circular_helix(1.0, 1.0, {0.0, 4 * kPi, 2001}));
    EXPECT_LE(h.axis_angle_dev, 1e-6);
    EXPECT_NEAR(h.kappa_over_tau, 1.0, 1e-6);
    EXPECT_NEAR(std::abs(h.best_axis.z), 1.0, 1e-9);
    EXPECT_NEAR(h.axis_angle, kPi / 4, 1e-6);
}

TEST(HelixCheck, RatioEqualsRadiusOverPitch) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 3.0}}) {
        const HelixReport h = helix_check(circular_helix(a, b, {0.0, 4 * kPi, 2001}));
        EXPECT_NEAR(h.kappa_over_tau, a / b, 1e-5);
        EXPECT_LE(h.kappa_over_tau_dev, 1e-5);
    }
}

TEST(HelixCheck, PlanarCircleIsDegenerate) {
    SpaceCurveTrace c;
    for (int i = 0; i < 100; ++i) c.samples.push_back({0.05 * i, {std::cos(0.05 * i), std::sin(0.05 * i), 0.0}});
    EXPECT_EQ(kind_of([&] { helix_check(c); }), ErrorKind::DegenerateFrenet);
}

TEST(HelixCheck, TooFewSamples) {
    EXPECT_THROW(helix_check(circular_helix(1, 1, {0, 1, 6})), Error);
}

TEST(ULine, GreatCircleLineIsPlanarSpiral) {
    const double theta = kPi / 5;
    const SlopeSurface s(theta, great_circle(), {0.1, 4.0});
    const SpaceCurveTrace tr = u_line(s, 0.0, {0.1, 4.0, 4001});
    EXPECT_EQ(kind_of([&] { helix_check(tr); }), ErrorKind::DegenerateFrenet);
    PlanarCurveTrace xz;
    for (const auto& smp : tr.samples) {
        EXPECT_LE(std::abs(smp.p.y), 1e-12);
        xz.samples.push_back({smp.t, smp.p.x, smp.p.z});
    }
    const AngleStats st = equiangular_check(xz);
    EXPECT_NEAR(st.mean, kPi / 2 - theta, 1e-6);
    EXPECT_LE(st.max_dev, 1e-6);
}

TEST(Conchospiral, DistanceAndAngle) {
    const double theta = kPi / 4;
    const SlopeSurface s(theta, reparametrize_unit_speed(small_circle(kPi / 3)), {0.1, 4.0});
    const SpaceCurveTrace tr = conchospiral_on_cone(s, 0.5, {0.1, 4.0, 500});
    double prev = 0.0;
    for (const auto& smp : tr.samples) {
        const double d = norm(smp.p);
        EXPECT_NEAR(d, smp.t * std::sin(theta), 1e-9);
        EXPECT_GT(d, prev);
        prev = d;
        const Vec3 ru = jet(s, smp.t, 0.5).r_u;
        EXPECT_NEAR(angle_between(ru, smp.p), kPi / 2 - theta, 1e-9);
    }
}

TEST(Conchospiral, RightAngleGivesRay) {
    const SlopeSurface s(kPi / 2, reparametrize_unit_speed(small_circle(kPi / 3)), {0.1, 4.0});
    const SpaceCurveTrace tr = conchospiral_on_cone(s, 0.5, {0.1, 4.0, 50});
    const Vec3 dir = normalized(tr.samples.front().p);
    for (const auto& smp : tr.samples) EXPECT_LE(norm(cross(normalized(smp.p), dir)), 1e-14);
}

TEST(Conchospiral, RejectsGreatCircle) {
    const SlopeSurface s(kPi / 4, great_circle());
    EXPECT_EQ(kind_of([&] { conchospiral_on_cone(s, 0.0, {0.1, 4.0, 10}); }), ErrorKind::InvalidParam);
}
