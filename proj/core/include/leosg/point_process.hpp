#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "leosg/rng.hpp"
#include "leosg/sphere_geom.hpp"

namespace leosg {

// Latitude occupancy of circular orbits with the given inclination. Areal density
// 1/sqrt(sin^2 i - sin^2 phi) on |phi| < i, which makes the latitude marginal
// cos(phi)/sqrt(sin^2 i - sin^2 phi).
struct InclinedOrbitDensity {
  double inclination;  // radians, (0, pi/2]
};

// Arbitrary nonnegative areal density over latitude, sampled by rejection.
struct CustomLatitudeDensity {
  std::function<double(double)> density;
  // Upper bound of `density` on [-pi/2, pi/2]; estimated on a fine grid when absent.
  std::optional<double> bound;
};

using LatitudeDensity = std::variant<InclinedOrbitDensity, CustomLatitudeDensity>;

double evaluate(const LatitudeDensity& density, double latitude);

struct Bpp {
  std::size_t count = 0;
};

struct Ppp {
  // Exactly one of the two is used: satellites per km^2, or the mean total count.
  std::optional<double> density_per_km2;
  std::optional<double> mean_count;
};

struct Nppp {
  std::size_t count = 0;
  LatitudeDensity latitude_density = InclinedOrbitDensity{0.9250245035569946};  // 53 degrees
};

using ShellKind = std::variant<Bpp, Ppp, Nppp>;

struct ShellSpec {
  ShellKind kind = Bpp{};
  double altitude_km = 1000.0;
  double tx_power_dbw = 15.0;
  int tier_id = 0;

  double shell_radius(double r_earth = kEarthRadiusKm) const { return r_earth + altitude_km; }
  // Throws config_error on negative counts/densities or non-positive altitude.
  void validate() const;
};

// Expected number of points of the shell.
double mean_point_count(const ShellSpec& shell, double r_earth = kEarthRadiusKm);

enum class GroundNodeKind { gateway, base_station, user };

struct GroundField {
  double density_per_km2 = 3.0;
  GroundNodeKind node_kind = GroundNodeKind::gateway;
};

enum class AngleSampling {
  area_uniform,  // cos(polar angle) uniform: the binomial point process
  angle_uniform, // polar angle uniform: concentrates points at the poles
};

SurfacePoint sample_uniform_sphere(RngStream& rng, double radius);
SurfacePoint sample_angle_uniform_sphere(RngStream& rng, double radius);

std::vector<SurfacePoint> sample_bpp(const ShellSpec& spec, RngStream& rng, double r_earth = kEarthRadiusKm,
                                     AngleSampling sampling = AngleSampling::area_uniform);
std::vector<SurfacePoint> sample_ppp(const ShellSpec& spec, RngStream& rng, double r_earth = kEarthRadiusKm);
std::vector<SurfacePoint> sample_nppp(const ShellSpec& spec, RngStream& rng, double r_earth = kEarthRadiusKm);

// Dispatches on spec.kind.
std::vector<SurfacePoint> sample_shell(const ShellSpec& spec, RngStream& rng, double r_earth = kEarthRadiusKm);

// Distance from the origin to the nearest point of a planar PPP of the field's density.
double sample_nearest_ground_distance(const GroundField& field, RngStream& rng);

}  // namespace leosg
