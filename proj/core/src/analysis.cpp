#include "leosg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "leosg/errors.hpp"
#include "leosg/parallel.hpp"

namespace leosg {

namespace {

// Probability that a uniform point on the sphere falls outside a cap of the given polar angle.
double outside_cap_fraction(double polar_angle) { return 1.0 - 0.5 * (1.0 - std::cos(polar_angle)); }

double void_probability(const ShellSpec& shell, double polar_angle, double r_earth) {
  shell.validate();
  if (const auto* bpp = std::get_if<Bpp>(&shell.kind)) {
    return std::pow(outside_cap_fraction(polar_angle), static_cast<double>(bpp->count));
  }
  if (std::holds_alternative<Ppp>(shell.kind)) {
    const double r = shell.shell_radius(r_earth);
    const double density = mean_point_count(shell, r_earth) / (4.0 * std::numbers::pi * r * r);
    return std::exp(-density * cap_area(r, polar_angle));
  }
  throw config_error("no closed-form contact law for NPPP shells");
}

}  // namespace

double contact_distance_ccdf(const DistanceLaw& law, double d0) {
  const double r_shell = law.shell.shell_radius(law.r_earth);
  return void_probability(law.shell, polar_angle_from_slant(law.r_earth, r_shell, d0), law.r_earth);
}

double contact_angle_ccdf(const DistanceLaw& law, double zenith) {
  if (!(zenith >= 0.0 && zenith <= 0.5 * std::numbers::pi)) {
    throw domain_error("contact_angle_ccdf: zenith outside [0, pi/2]");
  }
  const double r_shell = law.shell.shell_radius(law.r_earth);
  return contact_distance_ccdf(law, slant_from_zenith(law.r_earth, r_shell, zenith));
}

double nearest_neighbor_ccdf(const ShellSpec& shell, double d, double r_earth) {
  const auto* bpp = std::get_if<Bpp>(&shell.kind);
  if (bpp == nullptr) {
    throw config_error("nearest_neighbor_ccdf: shell must be a BPP");
  }
  if (bpp->count < 2) {
    throw domain_error("nearest_neighbor_ccdf: needs at least two satellites");
  }
  const double r = shell.shell_radius(r_earth);
  if (!(d >= 0.0 && d <= 2.0 * r)) {
    throw domain_error("nearest_neighbor_ccdf: distance outside [0, 2 r_shell]");
  }
  // The reference satellite is itself one of the N points, leaving N - 1 others.
  return std::pow(outside_cap_fraction(central_angle_from_chord(r, d)), static_cast<double>(bpp->count - 1));
}

double availability_probability(const ShellSpec& shell, double r_earth) {
  const double r_shell = shell.shell_radius(r_earth);
  return 1.0 - contact_distance_ccdf({shell, r_earth}, max_slant_range(r_earth, r_shell));
}

std::optional<std::size_t> nearest_in_region(const SurfacePoint& receiver, std::span<const SurfacePoint> satellites,
                                             const ServingRegion& region, double r_earth) {
  const Eigen::Vector3d origin = receiver.position();
  std::optional<std::size_t> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < satellites.size(); ++i) {
    const Eigen::Vector3d p = satellites[i].position();
    const double distance = (p - origin).norm();
    if (!(distance < best_distance)) {
      continue;
    }
    if (region.visible_only || region.max_zenith) {
      if (!is_visible(origin, p, r_earth)) {
        continue;
      }
      if (region.max_zenith) {
        const Eigen::Vector3d up = receiver.direction();
        const double cos_zenith = up.dot(p - origin) / distance;
        if (cos_zenith < std::cos(*region.max_zenith)) {
          continue;
        }
      }
    }
    best = i;
    best_distance = distance;
  }
  return best;
}

double association_power(const ChannelSpec& channel, double tx_power_dbw, double distance_km) {
  double large_scale_db = -channel.large_scale.rain_attenuation_db;
  if (channel.large_scale.include_free_space_term) {
    large_scale_db += free_space_gain_db(channel.large_scale.carrier_frequency_ghz);
  }
  return small_scale_mean(channel.small_scale) *
         mean_rx_power(tx_power_dbw, antenna_gain(channel.antenna, 0.0), large_scale_db, distance_km,
                       channel.path_loss_exponent);
}

std::vector<double> association_probability(std::span<const AssociationTier> tiers, std::size_t trials,
                                            const RngStream& rng, const ServingRegion& region, double r_earth) {
  if (tiers.empty()) {
    throw config_error("association_probability: no tiers");
  }
  if (trials == 0) {
    throw config_error("association_probability: trials must be positive");
  }
  for (const auto& tier : tiers) {
    tier.shell.validate();
    tier.channel.validate();
  }
  const SurfacePoint user(Eigen::Vector3d::UnitZ(), r_earth);
  // Winning tier per draw, -1 when no tier had an eligible satellite.
  std::vector<int> winner(trials, -1);
  parallel_for(trials, [&](std::size_t t) {
    RngStream stream = rng.child(t);
    double best_power = -1.0;
    int best_tier = -1;
    int best_id = std::numeric_limits<int>::max();
    for (std::size_t k = 0; k < tiers.size(); ++k) {
      const auto satellites = sample_shell(tiers[k].shell, stream, r_earth);
      const auto nearest = nearest_in_region(user, satellites, region, r_earth);
      if (!nearest) {
        continue;
      }
      const double distance = (satellites[*nearest].position() - user.position()).norm();
      const double power = association_power(tiers[k].channel, tiers[k].tx_power_dbw, distance);
      const int id = tiers[k].shell.tier_id;
      if (power > best_power || (power == best_power && id < best_id)) {
        best_power = power;
        best_tier = static_cast<int>(k);
        best_id = id;
      }
    }
    winner[t] = best_tier;
  });
  std::vector<double> probability(tiers.size(), 0.0);
  std::size_t decided = 0;
  for (int w : winner) {
    if (w >= 0) {
      probability[static_cast<std::size_t>(w)] += 1.0;
      ++decided;
    }
  }
  if (decided > 0) {
    for (double& p : probability) {
      p /= static_cast<double>(decided);
    }
  }
  return probability;
}

}  // namespace leosg
