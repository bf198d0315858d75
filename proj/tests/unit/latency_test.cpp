#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "leosg/errors.hpp"
#include "leosg/latency.hpp"

namespace leosg {
namespace {

constexpr double kRe = 6371.0;
constexpr double kRs = 7371.0;
constexpr double kC = 299792.458;

SurfacePoint at_longitude(double arc_km, double radius) {
  const double a = arc_km / kRe;
  return SurfacePoint(Eigen::Vector3d(std::cos(a), std::sin(a), 0.0), radius);
}

ShellSpec bpp(std::size_t n, double altitude = 1000.0) {
  ShellSpec s;
  s.kind = Bpp{n};
  s.altitude_km = altitude;
  return s;
}

TEST(NextHop, EmptyCandidates) {
  const std::vector<SurfacePoint> none;
  EXPECT_FALSE(next_hop(at_longitude(0, kRe), at_longitude(1000, kRe), none).has_value());
}

TEST(NextHop, VisibleDestinationWins) {
  const SurfacePoint current = at_longitude(0, kRs);
  const SurfacePoint dst = at_longitude(800, kRe);
  const std::vector<SurfacePoint> candidates = {at_longitude(700, kRs), dst};
  EXPECT_EQ(next_hop(current, dst, candidates), 1u);
}

TEST(NextHop, LeastRemainingDistance) {
  const SurfacePoint current = at_longitude(0, kRe);
  const SurfacePoint dst = at_longitude(1000, kRe);
  const std::vector<SurfacePoint> candidates = {at_longitude(300, kRs), at_longitude(500, kRs)};
  EXPECT_NEAR(remaining_distance(candidates[0], dst, ProgressMetric::great_circle), 700.0, 1e-9);
  EXPECT_EQ(next_hop(current, dst, candidates), 1u);
}

TEST(NextHop, RequiresStrictProgressAndVisibility) {
  const SurfacePoint current = at_longitude(0, kRe);
  const SurfacePoint dst = at_longitude(1000, kRe);
  const std::vector<SurfacePoint> behind = {at_longitude(-200, kRs)};
  EXPECT_FALSE(next_hop(current, dst, behind).has_value());
  const std::vector<SurfacePoint> hidden = {at_longitude(8000, kRs)};
  EXPECT_FALSE(next_hop(at_longitude(0, kRe), at_longitude(9000, kRe), hidden).has_value());
}

TEST(Route, SingleCommonSatellite) {
  const SurfacePoint src = at_longitude(0, kRe);
  const SurfacePoint dst = at_longitude(1000, kRe);
  const std::vector<SurfacePoint> sats = {at_longitude(500, kRs)};
  const PathTrace trace = route(src, dst, sats, InterSatellite{});
  ASSERT_EQ(trace.status, DeliveryStatus::delivered);
  ASSERT_EQ(trace.nodes.size(), 3u);
  const double up = (sats[0].position() - src.position()).norm();
  const double down = (sats[0].position() - dst.position()).norm();
  EXPECT_NEAR(trace.latency_ms, (up + down) / kC * 1000.0, 1e-9);
}

TEST(Route, NoSatellitesIsUnreachable) {
  const std::vector<SurfacePoint> none;
  const PathTrace trace = route(at_longitude(0, kRe), at_longitude(1000, kRe), none, InterSatellite{});
  EXPECT_EQ(trace.status, DeliveryStatus::unreachable);
}

TEST(Route, RelaysMustBeMaterialized) {
  const std::vector<SurfacePoint> sats = {at_longitude(500, kRs)};
  EXPECT_THROW(route(at_longitude(0, kRe), at_longitude(1000, kRe), sats, GwRelay{}), config_error);
  RngStream rng(1);
  EXPECT_THROW(materialize_relays(GwRelay{RelayCount{0}}, rng), config_error);
  const auto concrete = materialize_relays(GwRelay{RelayCount{25}}, rng);
  EXPECT_EQ(std::get<RelayPositions>(std::get<GwRelay>(concrete).relays).size(), 25u);
}

TEST(Route, GwRelayAlternatesSatellitesAndGateways) {
  const SurfacePoint src = at_longitude(0, kRe);
  const SurfacePoint dst = at_longitude(6000, kRe);
  const std::vector<SurfacePoint> sats = {at_longitude(1500, kRs), at_longitude(4500, kRs)};
  const RelayPositions relays = {at_longitude(3000, kRe)};
  const PathTrace trace = route(src, dst, sats, GwRelay{relays});
  ASSERT_EQ(trace.status, DeliveryStatus::delivered);
  std::vector<NodeKind> kinds;
  for (const auto& n : trace.nodes) kinds.push_back(n.kind);
  EXPECT_EQ(kinds, (std::vector<NodeKind>{NodeKind::gateway, NodeKind::satellite, NodeKind::relay_gateway,
                                          NodeKind::satellite, NodeKind::gateway}));
  const PathTrace isl = route(src, dst, sats, InterSatellite{});
  ASSERT_EQ(isl.status, DeliveryStatus::delivered);
  EXPECT_LT(isl.latency_ms, trace.latency_ms);
}

TEST(Latency, DeliveredTracesRespectChordBound) {
  const auto trials = latency_trials(bpp(300), InterSatellite{}, 300, RngStream(2));
  const double bound = 2.0 * kRe / kC * 1000.0;
  EXPECT_NEAR(bound, 42.50, 0.01);
  for (const auto& t : trials) {
    if (t.status == DeliveryStatus::delivered) {
      EXPECT_GE(t.latency_ms, bound);
    }
  }
}

TEST(Latency, LargeConstellationAlmostAlwaysDelivers) {
  const auto stats = average_latency(bpp(1000), InterSatellite{}, 300, RngStream(3));
  EXPECT_LT(stats.unreachable_fraction, 0.01);
  EXPECT_EQ(stats.trials, 300u);
}

TEST(Latency, InterSatelliteNoSlowerThanGwRelayOnSharedDraws) {
  const RngStream rng(4);
  const auto isl = average_latency(bpp(300), InterSatellite{}, 400, rng);
  const auto gw = average_latency(bpp(300), GwRelay{}, 400, rng);
  EXPECT_LE(isl.mean_latency_ms, gw.mean_latency_ms);
  EXPECT_GE(gw.unreachable_fraction, isl.unreachable_fraction);
}

TEST(Latency, SummaryOfNothingDeliveredIsNaN) {
  const std::vector<LatencyTrial> trials = {{DeliveryStatus::unreachable, 0.0}};
  const auto stats = summarize(trials);
  EXPECT_TRUE(std::isnan(stats.mean_latency_ms));
  EXPECT_EQ(stats.unreachable_fraction, 1.0);
}

TEST(Trace, CsvHasHeaderAndOneLinePerNode) {
  const std::vector<SurfacePoint> sats = {at_longitude(500, kRs)};
  const PathTrace trace = route(at_longitude(0, kRe), at_longitude(1000, kRe), sats, InterSatellite{});
  std::ostringstream out;
  write_trace_csv(out, trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "kind,latitude_deg,longitude_deg,radius_km,hop_distance_km");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_STREQ(to_string(NodeKind::relay_gateway), "relay_gateway");
}

}  // namespace
}  // namespace leosg
