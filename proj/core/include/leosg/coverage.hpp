#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "leosg/analysis.hpp"
#include "leosg/channel.hpp"
#include "leosg/point_process.hpp"
#include "leosg/rng.hpp"
#include "leosg/sphere_geom.hpp"

namespace leosg {

enum class SystemType { ideal, noise_limited, interference_limited, generic };

// How satellites below the receiver's horizon contribute to interference.
struct NlosZero {};
struct NlosConstant {
  double power_dbw;  // aggregate, added once per realization
};
struct NlosFaded {};  // each one drawn through the channel's NLoS branch

using NlosInterference = std::variant<NlosZero, NlosConstant, NlosFaded>;

struct SinrConfig {
  std::vector<ShellSpec> shells;
  ChannelSpec channel;
  double noise_dbw = -120.0;
  double threshold_db = -10.0;
  int bands = 1;
  SystemType system_type = SystemType::generic;
  NlosInterference nlos_interference = NlosZero{};
  // Serving candidates; interferers are always every other satellite above the horizon.
  ServingRegion serving_region{true, std::nullopt};
  double r_earth = kEarthRadiusKm;

  void validate() const;
};

// Terrestrial gateway-to-user (or base-station-to-user) hop to the nearest node of a
// planar field; noise-limited.
struct GroundLink {
  GroundField field;
  ChannelSpec channel;
  double tx_power_dbw = 0.0;
  double noise_dbw = -120.0;
};

struct Direct {};
struct GwRelayed {
  GroundLink gw_link;
};
struct Hybrid {
  GroundLink gw_link;
};

// The satellite hop of every scenario is described by the SinrConfig.
using LinkScenario = std::variant<Direct, GwRelayed, Hybrid>;

struct SatelliteRef {
  std::size_t tier;
  std::size_t index;
  bool operator==(const SatelliteRef&) const = default;
};

struct NetworkRealization {
  SurfacePoint user;
  std::vector<std::vector<SurfacePoint>> satellites;  // per tier
  std::optional<SatelliteRef> serving{};
  double serving_mean_power = 0.0;  // watts, no fading
  double serving_power = 0.0;       // watts, faded
  std::vector<SatelliteRef> interferers{};
  std::vector<double> interferer_mean_powers{};
  std::vector<double> interferer_powers{};
  double los_interference = 0.0;   // sum of interferer_powers
  double nlos_interference = 0.0;  // faded below-horizon contribution (NlosFaded only)
};

using Constellation = std::vector<std::vector<SurfacePoint>>;

NetworkRealization realize(const SinrConfig& config, const SurfacePoint& user, RngStream& rng);

// Evaluates a given constellation instead of sampling one.
NetworkRealization realize_with(const SinrConfig& config, const SurfacePoint& user, Constellation satellites,
                                RngStream& rng);

// Linear SINR; 0 without a server, +inf for an ideal system with a server or when the
// denominator vanishes.
double sinr(const NetworkRealization& realization, const SinrConfig& config);

// Compact per-trial record sufficient to evaluate SINR under any noise level or system type.
struct LinkDraw {
  bool has_server = false;
  double serving_power = 0.0;
  double los_interference = 0.0;
  double nlos_interference = 0.0;
};

LinkDraw summarize(const NetworkRealization& realization);
double sinr(const LinkDraw& draw, const SinrConfig& config);

// One LinkDraw per trial; trial t uses rng.child(t). `pinned` replaces the sampled constellation.
std::vector<LinkDraw> sample_link_draws(const SinrConfig& config, std::size_t trials, const RngStream& rng,
                                        const Constellation* pinned = nullptr);

struct CoverageEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

CoverageEstimate estimate_from(std::size_t covered, std::size_t trials);

CoverageEstimate coverage_from_draws(std::span<const LinkDraw> draws, const SinrConfig& config);

// Noise-limited coverage of the terrestrial hop; trial t uses rng.child(t).
CoverageEstimate ground_link_coverage(const GroundLink& link, double threshold_db, std::size_t trials,
                                      const RngStream& rng);

// Direct: satellite hop alone (substream rng.child(0)). Relayed and hybrid: product of the
// satellite hop and the terrestrial hop (substream rng.child(1)) estimated independently.
CoverageEstimate coverage_probability(const SinrConfig& config, const LinkScenario& scenario, std::size_t trials,
                                      const RngStream& rng, const Constellation* pinned = nullptr);

// Mean of log2(1 + SINR) over trials divided by the band count, in bit/s/Hz.
// Relayed and hybrid scenarios are limited by the weaker hop per trial.
double average_rate(const SinrConfig& config, const LinkScenario& scenario, std::size_t trials,
                    const RngStream& rng, const Constellation* pinned = nullptr);

// Monte Carlo E[exp(-s I)] of the aggregate interference, one value per s, all sharing
// the same draws.
std::vector<double> interference_laplace(const SinrConfig& config, std::span<const double> s, std::size_t trials,
                                         const RngStream& rng);
double interference_laplace(const SinrConfig& config, double s, std::size_t trials, const RngStream& rng);

}  // namespace leosg
