#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "leosg/point_process.hpp"
#include "leosg/rng.hpp"
#include "leosg/sphere_geom.hpp"

namespace leosg {

struct InterSatellite {};

struct RelayCount {
  std::size_t count = 200;
};
struct RelayDensity {
  double per_km2 = 0.0;
};
using RelayPositions = std::vector<SurfacePoint>;

using RelaySource = std::variant<RelayPositions, RelayCount, RelayDensity>;

// Satellites have no inter-satellite links and bounce traffic through ground gateways.
struct GwRelay {
  RelaySource relays = RelayCount{};
};

using RoutingMode = std::variant<InterSatellite, GwRelay>;

enum class ProgressMetric {
  great_circle,  // angular distance of sub-points to the destination, on its sphere
  euclidean,
};

enum class NodeKind { gateway, satellite, relay_gateway };

struct PathNode {
  NodeKind kind;
  SurfacePoint position;
};

enum class DeliveryStatus { delivered, unreachable };

struct PathTrace {
  std::vector<PathNode> nodes;
  std::vector<double> hop_distances_km;
  double latency_ms = 0.0;
  DeliveryStatus status = DeliveryStatus::unreachable;
};

struct RoutingOptions {
  double blocking_radius = kEarthRadiusKm;
  ProgressMetric metric = ProgressMetric::great_circle;
};

double remaining_distance(const SurfacePoint& node, const SurfacePoint& destination, ProgressMetric metric);

// Greedy geographic forwarding: among candidates visible from `current` that strictly
// reduce the remaining distance to `destination`, the one with the least remaining
// distance (lowest index on ties).
std::optional<std::size_t> next_hop(const SurfacePoint& current, const SurfacePoint& destination,
                                    std::span<const SurfacePoint> candidates, const RoutingOptions& options = {});

// Routes src -> satellites (-> relay gateways -> satellites ...) -> dst. GwRelay modes
// must carry explicit RelayPositions here; see materialize_relays.
PathTrace route(const SurfacePoint& src_gw, const SurfacePoint& dst_gw, std::span<const SurfacePoint> satellites,
                const RoutingMode& mode, const RoutingOptions& options = {});

// Draws relay gateways on the earth's surface for RelayCount / RelayDensity sources.
RoutingMode materialize_relays(const RoutingMode& mode, RngStream& rng, double r_earth = kEarthRadiusKm);

struct LatencyStats {
  double mean_latency_ms = 0.0;  // over delivered trials; NaN when none delivered
  double standard_error_ms = 0.0;
  double unreachable_fraction = 0.0;
  std::size_t delivered = 0;
  std::size_t trials = 0;
};

struct LatencyTrial {
  DeliveryStatus status;
  double latency_ms;
};

// Antipodal gateways at the poles; trial t draws the constellation and then any relay
// gateways from rng.child(t), so both routing modes see the same constellations.
std::vector<LatencyTrial> latency_trials(const ShellSpec& shell, const RoutingMode& mode, std::size_t trials,
                                         const RngStream& rng, const RoutingOptions& options = {},
                                         double r_earth = kEarthRadiusKm);

LatencyStats summarize(std::span<const LatencyTrial> trials);

LatencyStats average_latency(const ShellSpec& shell, const RoutingMode& mode, std::size_t trials,
                             const RngStream& rng, const RoutingOptions& options = {},
                             double r_earth = kEarthRadiusKm);

const char* to_string(NodeKind kind);

// CSV, one line per node: kind,latitude_deg,longitude_deg,radius_km,hop_distance_km.
void write_trace_csv(std::ostream& out, const PathTrace& trace);

}  // namespace leosg
