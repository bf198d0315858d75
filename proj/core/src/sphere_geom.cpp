#include "leosg/sphere_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "leosg/errors.hpp"

namespace leosg {

namespace {

constexpr double kBoundaryGuard = 1e-12;

// arccos with clamping inside a 1e-12 band around [-1, 1]; anything further out is an error.
double guarded_acos(double x, const char* what) {
  if (!(std::abs(x) <= 1.0 + kBoundaryGuard)) {
    throw domain_error(std::string(what) + ": arccos argument out of range");
  }
  return std::acos(std::clamp(x, -1.0, 1.0));
}

void require_shell_above_earth(double r_earth, double r_shell, const char* what) {
  if (!(r_earth > 0.0) || !(r_shell > r_earth) || !std::isfinite(r_shell)) {
    throw domain_error(std::string(what) + ": requires r_shell > r_earth > 0");
  }
}

void require_slant_in_range(double r_earth, double r_shell, double slant, const char* what) {
  const double lo = r_shell - r_earth;
  const double hi = r_shell + r_earth;
  const double tol = kBoundaryGuard * hi;
  if (!(slant >= lo - tol && slant <= hi + tol)) {
    throw domain_error(std::string(what) + ": slant range outside [r_shell - r_earth, r_shell + r_earth]");
  }
}

}  // namespace

SurfacePoint::SurfacePoint(const Eigen::Vector3d& direction, double radius) : radius_(radius) {
  const double norm = direction.norm();
  if (!std::isfinite(norm) || norm == 0.0 || !direction.allFinite()) {
    throw domain_error("SurfacePoint: direction must be finite and nonzero");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw domain_error("SurfacePoint: radius must be positive and finite");
  }
  direction_ = direction / norm;
}

SurfacePoint SurfacePoint::from_lat_lon(double latitude, double longitude, double radius) {
  const double c = std::cos(latitude);
  return SurfacePoint(Eigen::Vector3d(c * std::cos(longitude), c * std::sin(longitude), std::sin(latitude)), radius);
}

double SurfacePoint::latitude() const { return std::asin(std::clamp(direction_.z(), -1.0, 1.0)); }

double SurfacePoint::longitude() const { return std::atan2(direction_.y(), direction_.x()); }

double SphericalCap::area() const { return cap_area(sphere_radius, polar_angle); }

bool SphericalCap::contains(const Eigen::Vector3d& unit_direction) const {
  return unit_direction.dot(apex) >= std::cos(polar_angle);
}

double cap_area(double sphere_radius, double polar_angle) {
  if (!(sphere_radius > 0.0) || !(polar_angle >= 0.0 && polar_angle <= std::numbers::pi)) {
    throw domain_error("cap_area: requires sphere_radius > 0 and polar_angle in [0, pi]");
  }
  return 2.0 * std::numbers::pi * sphere_radius * sphere_radius * (1.0 - std::cos(polar_angle));
}

double polar_angle_from_slant(double r_earth, double r_shell, double slant) {
  require_shell_above_earth(r_earth, r_shell, "polar_angle_from_slant");
  require_slant_in_range(r_earth, r_shell, slant, "polar_angle_from_slant");
  return guarded_acos((r_earth * r_earth + r_shell * r_shell - slant * slant) / (2.0 * r_earth * r_shell),
                      "polar_angle_from_slant");
}

double slant_from_polar(double r_earth, double r_shell, double polar_angle) {
  if (!(polar_angle >= 0.0 && polar_angle <= std::numbers::pi)) {
    throw domain_error("slant_from_polar: polar_angle outside [0, pi]");
  }
  // Half-angle form keeps full relative precision near polar_angle = 0.
  const double s = std::sin(0.5 * polar_angle);
  const double diff = r_shell - r_earth;
  return std::sqrt(diff * diff + 4.0 * r_earth * r_shell * s * s);
}

double zenith_angle(double r_earth, double r_shell, double slant) {
  require_shell_above_earth(r_earth, r_shell, "zenith_angle");
  require_slant_in_range(r_earth, r_shell, slant, "zenith_angle");
  if (!(slant > 0.0)) {
    throw domain_error("zenith_angle: slant must be positive");
  }
  return guarded_acos((r_shell * r_shell - r_earth * r_earth - slant * slant) / (2.0 * r_earth * slant),
                      "zenith_angle");
}

double slant_from_zenith(double r_earth, double r_shell, double zenith) {
  require_shell_above_earth(r_earth, r_shell, "slant_from_zenith");
  if (!(zenith >= 0.0 && zenith <= std::numbers::pi)) {
    throw domain_error("slant_from_zenith: zenith outside [0, pi]");
  }
  const double c = r_earth * std::cos(zenith);
  return -c + std::sqrt(c * c + (r_shell - r_earth) * (r_shell + r_earth));
}

double max_slant_range(double r_earth, double r_shell) {
  require_shell_above_earth(r_earth, r_shell, "max_slant_range");
  return std::sqrt((r_shell - r_earth) * (r_shell + r_earth));
}

namespace {

bool segment_clears_sphere(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double blocking_radius) {
  const Eigen::Vector3d d = b - a;
  const double dd = d.squaredNorm();
  if (dd == 0.0) {
    return true;
  }
  const double t = -a.dot(d) / dd;
  // Closest approach at an endpoint: both endpoints are on or above the blocking sphere.
  if (t <= kBoundaryGuard || t >= 1.0 - kBoundaryGuard) {
    return true;
  }
  const Eigen::Vector3d closest = a + t * d;
  return closest.squaredNorm() >= blocking_radius * blocking_radius * (1.0 - kBoundaryGuard);
}

}  // namespace

bool is_visible(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double blocking_radius) {
  // Evaluate from the lexicographically smaller endpoint so the result is exactly symmetric.
  const bool swap = std::lexicographical_compare(b.data(), b.data() + 3, a.data(), a.data() + 3);
  return swap ? segment_clears_sphere(b, a, blocking_radius) : segment_clears_sphere(a, b, blocking_radius);
}

bool is_visible(const SurfacePoint& a, const SurfacePoint& b, double blocking_radius) {
  return is_visible(a.position(), b.position(), blocking_radius);
}

double great_circle_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double radius) {
  return radius * std::atan2(a.cross(b).norm(), a.dot(b));
}

double central_angle_from_chord(double radius, double chord) {
  if (!(chord >= 0.0) || chord > 2.0 * radius * (1.0 + kBoundaryGuard)) {
    throw domain_error("central_angle_from_chord: chord outside [0, 2 r]");
  }
  return 2.0 * std::asin(std::min(1.0, chord / (2.0 * radius)));
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace leosg
