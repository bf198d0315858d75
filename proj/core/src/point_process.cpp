#include "leosg/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "leosg/errors.hpp"

namespace leosg {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

double density_integral(const CustomLatitudeDensity& d) {
  auto weighted = [&](double phi) { return d.density(phi) * std::cos(phi); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(weighted, -kHalfPi, kHalfPi, 15, 1e-10);
}

double grid_bound(const CustomLatitudeDensity& d) {
  constexpr int kGrid = 4096;
  double sup = 0.0;
  for (int k = 0; k <= kGrid; ++k) {
    sup = std::max(sup, d.density(-kHalfPi + std::numbers::pi * k / kGrid));
  }
  return 1.01 * sup;
}

SurfacePoint sample_inclined(const InclinedOrbitDensity& d, RngStream& rng, double radius) {
  const double sin_lat = std::sin(d.inclination) * std::sin(rng.uniform(0.0, 2.0 * std::numbers::pi));
  const double lon = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return SurfacePoint::from_lat_lon(std::asin(sin_lat), lon, radius);
}

}  // namespace

double evaluate(const LatitudeDensity& density, double latitude) {
  return std::visit(
      [latitude](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, InclinedOrbitDensity>) {
          const double si = std::sin(d.inclination);
          const double sp = std::sin(latitude);
          const double gap = si * si - sp * sp;
          return gap > 0.0 ? 1.0 / std::sqrt(gap) : 0.0;
        } else {
          return d.density(latitude);
        }
      },
      density);
}

void ShellSpec::validate() const {
  if (!(altitude_km > 0.0) || !std::isfinite(altitude_km)) {
    throw config_error("shell altitude must be positive");
  }
  if (const auto* ppp = std::get_if<Ppp>(&kind)) {
    if (ppp->density_per_km2.has_value() == ppp->mean_count.has_value()) {
      throw config_error("PPP shell needs exactly one of density or mean count");
    }
    const double v = ppp->density_per_km2 ? *ppp->density_per_km2 : *ppp->mean_count;
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw config_error("PPP density / mean count must be nonnegative");
    }
  }
  if (const auto* nppp = std::get_if<Nppp>(&kind)) {
    if (const auto* inc = std::get_if<InclinedOrbitDensity>(&nppp->latitude_density)) {
      if (!(inc->inclination > 0.0 && inc->inclination <= kHalfPi)) {
        throw config_error("inclination must lie in (0, pi/2]");
      }
    } else if (!std::get<CustomLatitudeDensity>(nppp->latitude_density).density) {
      throw config_error("custom latitude density is empty");
    }
  }
}

double mean_point_count(const ShellSpec& shell, double r_earth) {
  const double r = shell.shell_radius(r_earth);
  return std::visit(
      [r](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Ppp>) {
          return k.mean_count ? *k.mean_count : *k.density_per_km2 * 4.0 * std::numbers::pi * r * r;
        } else {
          return static_cast<double>(k.count);
        }
      },
      shell.kind);
}

SurfacePoint sample_uniform_sphere(RngStream& rng, double radius) {
  const double z = rng.uniform(-1.0, 1.0);
  const double azimuth = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return SurfacePoint(Eigen::Vector3d(s * std::cos(azimuth), s * std::sin(azimuth), z), radius);
}

SurfacePoint sample_angle_uniform_sphere(RngStream& rng, double radius) {
  const double polar = rng.uniform(0.0, std::numbers::pi);
  const double azimuth = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double s = std::sin(polar);
  return SurfacePoint(Eigen::Vector3d(s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)), radius);
}

std::vector<SurfacePoint> sample_bpp(const ShellSpec& spec, RngStream& rng, double r_earth, AngleSampling sampling) {
  const auto* bpp = std::get_if<Bpp>(&spec.kind);
  if (bpp == nullptr) {
    throw config_error("sample_bpp: shell is not a BPP");
  }
  spec.validate();
  const double radius = spec.shell_radius(r_earth);
  std::vector<SurfacePoint> points;
  points.reserve(bpp->count);
  for (std::size_t i = 0; i < bpp->count; ++i) {
    points.push_back(sampling == AngleSampling::area_uniform ? sample_uniform_sphere(rng, radius)
                                                             : sample_angle_uniform_sphere(rng, radius));
  }
  return points;
}

std::vector<SurfacePoint> sample_ppp(const ShellSpec& spec, RngStream& rng, double r_earth) {
  if (!std::holds_alternative<Ppp>(spec.kind)) {
    throw config_error("sample_ppp: shell is not a PPP");
  }
  spec.validate();
  const double radius = spec.shell_radius(r_earth);
  const auto count = rng.poisson(mean_point_count(spec, r_earth));
  std::vector<SurfacePoint> points;
  points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    points.push_back(sample_uniform_sphere(rng, radius));
  }
  return points;
}

std::vector<SurfacePoint> sample_nppp(const ShellSpec& spec, RngStream& rng, double r_earth) {
  const auto* nppp = std::get_if<Nppp>(&spec.kind);
  if (nppp == nullptr) {
    throw config_error("sample_nppp: shell is not an NPPP");
  }
  spec.validate();
  const double radius = spec.shell_radius(r_earth);
  std::vector<SurfacePoint> points;
  points.reserve(nppp->count);

  if (const auto* inclined = std::get_if<InclinedOrbitDensity>(&nppp->latitude_density)) {
    for (std::size_t i = 0; i < nppp->count; ++i) {
      points.push_back(sample_inclined(*inclined, rng, radius));
    }
    return points;
  }

  const auto& custom = std::get<CustomLatitudeDensity>(nppp->latitude_density);
  if (nppp->count == 0) {
    return points;
  }
  if (!(density_integral(custom) > 0.0)) {
    throw config_error("latitude density has zero integral");
  }
  const double bound = custom.bound ? *custom.bound : grid_bound(custom);
  // Area-uniform proposals thinned by density / bound give latitude marginal ∝ density * cos.
  while (points.size() < nppp->count) {
    SurfacePoint candidate = sample_uniform_sphere(rng, radius);
    const double value = custom.density(candidate.latitude());
    if (value < 0.0 || value > bound) {
      throw config_error("latitude density negative or above its bound");
    }
    if (rng.uniform() * bound < value) {
      points.push_back(candidate);
    }
  }
  return points;
}

std::vector<SurfacePoint> sample_shell(const ShellSpec& spec, RngStream& rng, double r_earth) {
  return std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Bpp>) {
          return sample_bpp(spec, rng, r_earth);
        } else if constexpr (std::is_same_v<T, Ppp>) {
          return sample_ppp(spec, rng, r_earth);
        } else {
          return sample_nppp(spec, rng, r_earth);
        }
      },
      spec.kind);
}

double sample_nearest_ground_distance(const GroundField& field, RngStream& rng) {
  if (!(field.density_per_km2 > 0.0) || !std::isfinite(field.density_per_km2)) {
    throw config_error("ground field density must be positive to have a nearest node");
  }
  return std::sqrt(-std::log(rng.uniform_positive()) / (std::numbers::pi * field.density_per_km2));
}

}  // namespace leosg
