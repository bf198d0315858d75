#include "leosg/latency.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "leosg/errors.hpp"
#include "leosg/parallel.hpp"

namespace leosg {

namespace {

std::vector<SurfacePoint> sample_surface(std::size_t count, RngStream& rng, double r_earth) {
  std::vector<SurfacePoint> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(sample_uniform_sphere(rng, r_earth));
  }
  return points;
}

}  // namespace

double remaining_distance(const SurfacePoint& node, const SurfacePoint& destination, ProgressMetric metric) {
  if (metric == ProgressMetric::euclidean) {
    return (node.position() - destination.position()).norm();
  }
  return great_circle_distance(node.direction(), destination.direction(), destination.radius());
}

std::optional<std::size_t> next_hop(const SurfacePoint& current, const SurfacePoint& destination,
                                    std::span<const SurfacePoint> candidates, const RoutingOptions& options) {
  const double here = remaining_distance(current, destination, options.metric);
  const Eigen::Vector3d origin = current.position();
  std::optional<std::size_t> best;
  double best_remaining = here;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double remaining = remaining_distance(candidates[i], destination, options.metric);
    if (remaining < best_remaining && is_visible(origin, candidates[i].position(), options.blocking_radius)) {
      best = i;
      best_remaining = remaining;
    }
  }
  return best;
}

PathTrace route(const SurfacePoint& src_gw, const SurfacePoint& dst_gw, std::span<const SurfacePoint> satellites,
                const RoutingMode& mode, const RoutingOptions& options) {
  std::span<const SurfacePoint> relays;
  if (const auto* relay = std::get_if<GwRelay>(&mode)) {
    const auto* positions = std::get_if<RelayPositions>(&relay->relays);
    if (positions == nullptr) {
      throw config_error("route: relay gateways must be materialized first");
    }
    relays = *positions;
  }
  const bool use_relays = std::holds_alternative<GwRelay>(mode);

  PathTrace trace;
  trace.nodes.push_back({NodeKind::gateway, src_gw});
  auto append = [&](NodeKind kind, const SurfacePoint& p) {
    trace.hop_distances_km.push_back((p.position() - trace.nodes.back().position.position()).norm());
    trace.nodes.push_back({kind, p});
  };
  auto hop_to_satellite = [&]() {
    const auto h = next_hop(trace.nodes.back().position, dst_gw, satellites, options);
    if (h) {
      append(NodeKind::satellite, satellites[*h]);
    }
    return h.has_value();
  };

  // Strict progress bounds the walk; the cap only guards against pathological input.
  const std::size_t max_steps = satellites.size() + relays.size() + 2;
  bool delivered = false;
  if (hop_to_satellite()) {
    for (std::size_t step = 0; step < max_steps; ++step) {
      if (is_visible(trace.nodes.back().position.position(), dst_gw.position(), options.blocking_radius)) {
        append(NodeKind::gateway, dst_gw);
        delivered = true;
        break;
      }
      if (use_relays) {
        const auto g = next_hop(trace.nodes.back().position, dst_gw, relays, options);
        if (!g) {
          break;
        }
        append(NodeKind::relay_gateway, relays[*g]);
      }
      if (!hop_to_satellite()) {
        break;
      }
    }
  }
  if (delivered) {
    trace.status = DeliveryStatus::delivered;
    trace.latency_ms = pairwise_sum(trace.hop_distances_km.data(), trace.hop_distances_km.size()) /
                       kSpeedOfLightKmPerS * 1000.0;
  }
  return trace;
}

RoutingMode materialize_relays(const RoutingMode& mode, RngStream& rng, double r_earth) {
  const auto* relay = std::get_if<GwRelay>(&mode);
  if (relay == nullptr || std::holds_alternative<RelayPositions>(relay->relays)) {
    return mode;
  }
  std::size_t count = 0;
  if (const auto* fixed = std::get_if<RelayCount>(&relay->relays)) {
    count = fixed->count;
  } else {
    const double density = std::get<RelayDensity>(relay->relays).per_km2;
    if (!(density >= 0.0)) {
      throw config_error("relay density must be nonnegative");
    }
    count = rng.poisson(density * 4.0 * std::numbers::pi * r_earth * r_earth);
  }
  if (count == 0) {
    throw config_error("GwRelay mode needs at least one relay gateway");
  }
  return GwRelay{sample_surface(count, rng, r_earth)};
}

std::vector<LatencyTrial> latency_trials(const ShellSpec& shell, const RoutingMode& mode, std::size_t trials,
                                         const RngStream& rng, const RoutingOptions& options, double r_earth) {
  if (trials == 0) {
    throw config_error("latency: trials must be positive");
  }
  shell.validate();
  const SurfacePoint src(Eigen::Vector3d::UnitZ(), r_earth);
  const SurfacePoint dst(-Eigen::Vector3d::UnitZ(), r_earth);
  std::vector<LatencyTrial> out(trials);
  parallel_for(trials, [&](std::size_t t) {
    RngStream stream = rng.child(t);
    const auto satellites = sample_shell(shell, stream, r_earth);
    const RoutingMode concrete = materialize_relays(mode, stream, r_earth);
    const PathTrace trace = route(src, dst, satellites, concrete, options);
    out[t] = {trace.status, trace.latency_ms};
  });
  return out;
}

LatencyStats summarize(std::span<const LatencyTrial> trials) {
  LatencyStats stats;
  stats.trials = trials.size();
  std::vector<double> delivered;
  for (const auto& t : trials) {
    if (t.status == DeliveryStatus::delivered) {
      delivered.push_back(t.latency_ms);
    }
  }
  stats.delivered = delivered.size();
  stats.unreachable_fraction =
      trials.empty() ? 0.0 : static_cast<double>(trials.size() - delivered.size()) / static_cast<double>(trials.size());
  if (delivered.empty()) {
    stats.mean_latency_ms = std::numeric_limits<double>::quiet_NaN();
    stats.standard_error_ms = std::numeric_limits<double>::quiet_NaN();
    return stats;
  }
  const double n = static_cast<double>(delivered.size());
  const double mean = pairwise_sum(delivered.data(), delivered.size()) / n;
  std::vector<double> squares(delivered.size());
  for (std::size_t i = 0; i < delivered.size(); ++i) {
    squares[i] = (delivered[i] - mean) * (delivered[i] - mean);
  }
  const double variance = delivered.size() > 1 ? pairwise_sum(squares.data(), squares.size()) / (n - 1.0) : 0.0;
  stats.mean_latency_ms = mean;
  stats.standard_error_ms = std::sqrt(variance / n);
  return stats;
}

LatencyStats average_latency(const ShellSpec& shell, const RoutingMode& mode, std::size_t trials,
                             const RngStream& rng, const RoutingOptions& options, double r_earth) {
  const auto per_trial = latency_trials(shell, mode, trials, rng, options, r_earth);
  return summarize(per_trial);
}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::gateway:
      return "gateway";
    case NodeKind::satellite:
      return "satellite";
    case NodeKind::relay_gateway:
      return "relay_gateway";
  }
  return "unknown";
}

void write_trace_csv(std::ostream& out, const PathTrace& trace) {
  out << "kind,latitude_deg,longitude_deg,radius_km,hop_distance_km\n";
  for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
    const auto& node = trace.nodes[i];
    const double hop = i == 0 ? 0.0 : trace.hop_distances_km[i - 1];
    out << fmt::format("{},{:.9g},{:.9g},{:.9g},{:.9g}\n", to_string(node.kind),
                       rad_to_deg(node.position.latitude()), rad_to_deg(node.position.longitude()),
                       node.position.radius(), hop);
  }
}

}  // namespace leosg
