#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "leosg/errors.hpp"
#include "leosg/sphere_geom.hpp"

namespace leosg {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRe = 6371.0;
constexpr double kRs = 7371.0;

TEST(CapArea, FullSphereAndHemisphere) {
  EXPECT_NEAR(cap_area(1.0, kPi), 4.0 * kPi, 1e-12);
  EXPECT_NEAR(cap_area(1.0, kPi / 2.0), 2.0 * kPi, 1e-12);
  EXPECT_EQ(cap_area(5.0, 0.0), 0.0);
}

TEST(CapArea, HorizonCapMatchesMonteCarloFraction) {
  const double theta = std::acos(kRe / kRs);
  const double area = cap_area(kRs, theta);
  EXPECT_NEAR(area, 4.63e7, 0.01e7);

  std::mt19937_64 gen(7);
  std::normal_distribution<double> normal;
  const int n = 200000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const double x = normal(gen);
    const double y = normal(gen);
    const double z = normal(gen);
    inside += z / std::sqrt(x * x + y * y + z * z) >= std::cos(theta);
  }
  const double mc = static_cast<double>(inside) / n * 4.0 * kPi * kRs * kRs;
  EXPECT_NEAR(area / mc, 1.0, 0.01);
}

TEST(CapArea, RejectsInvalidInput) {
  EXPECT_THROW(cap_area(-1.0, 0.5), domain_error);
  EXPECT_THROW(cap_area(1.0, 4.0), domain_error);
}

TEST(PolarAngle, NadirAndHorizon) {
  EXPECT_NEAR(polar_angle_from_slant(kRe, kRs, kRs - kRe), 0.0, 1e-9);
  EXPECT_NEAR(polar_angle_from_slant(kRe, kRs, std::sqrt(kRs * kRs - kRe * kRe)), std::acos(kRe / kRs), 1e-12);
}

TEST(PolarAngle, WorkedValueRoundTrips) {
  const double theta = polar_angle_from_slant(kRe, kRs, 2000.0);
  // Law of cosines in the centre-ground-satellite triangle.
  EXPECT_NEAR(theta, std::acos((kRe * kRe + kRs * kRs - 2000.0 * 2000.0) / (2.0 * kRe * kRs)), 1e-12);
  EXPECT_NEAR(theta, 0.2534, 1e-4);
  EXPECT_NEAR(slant_from_polar(kRe, kRs, theta), 2000.0, 2000.0 * 1e-12);
}

TEST(PolarAngle, RejectsSlantOutsideShellRange) {
  EXPECT_THROW(polar_angle_from_slant(kRe, kRs, 900.0), domain_error);
  EXPECT_THROW(polar_angle_from_slant(kRe, kRs, kRs + kRe + 1.0), domain_error);
  EXPECT_THROW(polar_angle_from_slant(kRe, kRe - 1.0, 100.0), domain_error);
}

TEST(SlantFromPolar, Endpoints) {
  EXPECT_NEAR(slant_from_polar(kRe, kRs, 0.0), kRs - kRe, 1e-9);
  EXPECT_NEAR(slant_from_polar(kRe, kRs, kPi), kRs + kRe, 1e-9);
}

TEST(SlantFromPolar, RoundTripOverRandomSlants) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double rs = kRe + 200.0 + 3000.0 * u(gen);
    const double d = (rs - kRe) + 2.0 * kRe * u(gen);
    const double back = slant_from_polar(kRe, rs, polar_angle_from_slant(kRe, rs, d));
    ASSERT_NEAR(back, d, d * 1e-9);
  }
}

TEST(ZenithAngle, OverheadAndHorizon) {
  EXPECT_NEAR(zenith_angle(kRe, kRs, kRs - kRe), 0.0, 1e-9);
  EXPECT_NEAR(zenith_angle(kRe, kRs, max_slant_range(kRe, kRs)), kPi / 2.0, 1e-12);
}

TEST(ZenithAngle, AgreesWithTriangleAngleSum) {
  // Centre angle plus the angle at the satellite equals the zenith angle at the ground point.
  const double d = 2000.0;
  const double theta = polar_angle_from_slant(kRe, kRs, d);
  const double at_satellite = std::asin(kRe * std::sin(theta) / d);
  EXPECT_NEAR(zenith_angle(kRe, kRs, d), theta + at_satellite, 1e-9);
  EXPECT_NEAR(zenith_angle(kRe, kRs, d), 1.1783, 1e-3);
}

TEST(ZenithAngle, InvertsSlantFromZenith) {
  for (double z = 0.05; z < kPi; z += 0.1) {
    EXPECT_NEAR(zenith_angle(kRe, kRs, slant_from_zenith(kRe, kRs, z)), z, 1e-9);
  }
}

TEST(MaxSlantRange, WorkedValues) {
  EXPECT_NEAR(max_slant_range(kRe, kRs), 3707.0, 0.1);
  EXPECT_NEAR(max_slant_range(1.0, 2.0), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(max_slant_range(kRe, kRe * (1.0 + 1e-12)), 0.0, 1e-2);
}

TEST(Visibility, AntipodalAndCoincident) {
  const SurfacePoint a(Eigen::Vector3d(1, 0, 0), kRs);
  const SurfacePoint b(Eigen::Vector3d(-1, 0, 0), kRs);
  EXPECT_FALSE(is_visible(a, b, kRe));
  EXPECT_TRUE(is_visible(a, a, kRe));
}

TEST(Visibility, HorizonBoundary) {
  const SurfacePoint ground(Eigen::Vector3d::UnitZ(), kRe);
  const double theta = std::acos(kRe / kRs);
  const SurfacePoint at_horizon(Eigen::Vector3d(std::sin(theta), 0.0, std::cos(theta)), kRs);
  const SurfacePoint below(Eigen::Vector3d(std::sin(theta + 1e-3), 0.0, std::cos(theta + 1e-3)), kRs);
  EXPECT_TRUE(is_visible(ground, at_horizon, kRe));
  EXPECT_FALSE(is_visible(ground, below, kRe));
}

TEST(Visibility, Symmetric) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 2000; ++i) {
    const SurfacePoint a(Eigen::Vector3d(normal(gen), normal(gen), normal(gen)), kRs);
    const SurfacePoint b(Eigen::Vector3d(normal(gen), normal(gen), normal(gen)), kRe + 500.0);
    ASSERT_EQ(is_visible(a, b, kRe), is_visible(b, a, kRe));
  }
}

TEST(GreatCircle, WorkedValues) {
  const Eigen::Vector3d x = Eigen::Vector3d::UnitX();
  EXPECT_EQ(great_circle_distance(x, x, kRe), 0.0);
  EXPECT_NEAR(great_circle_distance(x, Eigen::Vector3d::UnitY(), kRe), kRe * kPi / 2.0, 1e-9);
  EXPECT_NEAR(great_circle_distance(x, -x, 1.0), kPi, 1e-12);
}

TEST(GreatCircle, TriangleInequality) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 1000; ++i) {
    Eigen::Vector3d a(normal(gen), normal(gen), normal(gen));
    Eigen::Vector3d b(normal(gen), normal(gen), normal(gen));
    Eigen::Vector3d c(normal(gen), normal(gen), normal(gen));
    a.normalize();
    b.normalize();
    c.normalize();
    ASSERT_LE(great_circle_distance(a, c, 1.0), great_circle_distance(a, b, 1.0) + great_circle_distance(b, c, 1.0) + 1e-12);
  }
}

TEST(SurfacePoint, LatLonRoundTrip) {
  const SurfacePoint p = SurfacePoint::from_lat_lon(0.3, -1.2, kRe);
  EXPECT_NEAR(p.latitude(), 0.3, 1e-12);
  EXPECT_NEAR(p.longitude(), -1.2, 1e-12);
  EXPECT_NEAR(p.position().norm(), kRe, 1e-9);
}

TEST(SurfacePoint, RejectsDegenerateInput) {
  EXPECT_THROW(SurfacePoint(Eigen::Vector3d::Zero(), kRe), domain_error);
  EXPECT_THROW(SurfacePoint(Eigen::Vector3d::UnitX(), 0.0), domain_error);
  EXPECT_THROW(SurfacePoint(Eigen::Vector3d(NAN, 0, 0), kRe), domain_error);
}

TEST(SphericalCap, ContainsAndArea) {
  const SphericalCap cap{Eigen::Vector3d::UnitZ(), kPi / 2.0, 1.0};
  EXPECT_NEAR(cap.area(), 2.0 * kPi, 1e-12);
  EXPECT_TRUE(cap.contains(Eigen::Vector3d::UnitZ()));
  EXPECT_FALSE(cap.contains(-Eigen::Vector3d::UnitZ()));
}

}  // namespace
}  // namespace leosg
