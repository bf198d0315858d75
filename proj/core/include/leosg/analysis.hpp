#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "leosg/channel.hpp"
#include "leosg/point_process.hpp"
#include "leosg/rng.hpp"
#include "leosg/sphere_geom.hpp"

namespace leosg {

struct DistanceLaw {
  ShellSpec shell;
  double r_earth = kEarthRadiusKm;
};

// P(no satellite closer than d0 to a ground point); closed form for BPP and PPP shells.
double contact_distance_ccdf(const DistanceLaw& law, double d0);

// Same law parameterized by the zenith angle of the slant range.
double contact_angle_ccdf(const DistanceLaw& law, double zenith);

// P(no other satellite within chord distance d of a satellite of a BPP shell).
double nearest_neighbor_ccdf(const ShellSpec& shell, double d, double r_earth = kEarthRadiusKm);

// P(at least one satellite above the horizon).
double availability_probability(const ShellSpec& shell, double r_earth = kEarthRadiusKm);

// Which satellites may serve a ground receiver.
struct ServingRegion {
  // Only satellites above the horizon.
  bool visible_only = false;
  // Further restrict to zenith <= max_zenith (receive main lobe pointing at the zenith).
  std::optional<double> max_zenith;
};

// Index of the nearest satellite inside `region`, lowest index on ties.
std::optional<std::size_t> nearest_in_region(const SurfacePoint& receiver, std::span<const SurfacePoint> satellites,
                                             const ServingRegion& region, double r_earth = kEarthRadiusKm);

// Average received power used for association: boresight antenna gain, deterministic
// large-scale term (0 dB LoS mean minus rain, plus free space if enabled) and mean fading.
double association_power(const ChannelSpec& channel, double tx_power_dbw, double distance_km);

struct AssociationTier {
  ShellSpec shell;
  ChannelSpec channel;
  double tx_power_dbw = 15.0;
};

// Monte Carlo share of draws in which each tier's nearest satellite offers the strongest
// average received power. Draws in which no tier has an eligible satellite are skipped,
// so the result sums to 1 whenever any draw had a candidate.
std::vector<double> association_probability(std::span<const AssociationTier> tiers, std::size_t trials,
                                            const RngStream& rng, const ServingRegion& region = {},
                                            double r_earth = kEarthRadiusKm);

}  // namespace leosg
