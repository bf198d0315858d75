#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace leosg {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kSpeedOfLightKmPerS = 299792.458;

// A location on a sphere centred at the earth's centre. Lengths in km.
class SurfacePoint {
 public:
  // Normalizes `direction`; throws domain_error for zero/non-finite input or radius <= 0.
  SurfacePoint(const Eigen::Vector3d& direction, double radius);

  static SurfacePoint from_lat_lon(double latitude, double longitude, double radius);

  const Eigen::Vector3d& direction() const { return direction_; }
  double radius() const { return radius_; }
  Eigen::Vector3d position() const { return radius_ * direction_; }

  double latitude() const;
  double longitude() const;

  bool operator==(const SurfacePoint& other) const = default;

 private:
  Eigen::Vector3d direction_;
  double radius_;
};

struct SphericalCap {
  Eigen::Vector3d apex;
  double polar_angle;
  double sphere_radius;

  double area() const;
  bool contains(const Eigen::Vector3d& unit_direction) const;
};

double cap_area(double sphere_radius, double polar_angle);

// Central angle between a ground point at r_earth and a point at r_shell that are `slant` apart.
double polar_angle_from_slant(double r_earth, double r_shell, double slant);
double slant_from_polar(double r_earth, double r_shell, double polar_angle);

// Angle at the ground point between local vertical and the line of sight.
double zenith_angle(double r_earth, double r_shell, double slant);

// Inverse of zenith_angle on [0, pi/2].
double slant_from_zenith(double r_earth, double r_shell, double zenith);

// Slant range to the horizon.
double max_slant_range(double r_earth, double r_shell);

bool is_visible(const SurfacePoint& a, const SurfacePoint& b, double blocking_radius = kEarthRadiusKm);
bool is_visible(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double blocking_radius = kEarthRadiusKm);

double great_circle_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double radius);

// Converts a chord length between two points on a sphere of `radius` into a central angle.
double central_angle_from_chord(double radius, double chord);

double deg_to_rad(double deg);
double rad_to_deg(double rad);

}  // namespace leosg
