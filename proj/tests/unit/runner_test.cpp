#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "experiments/config.hpp"
#include "experiments/runner.hpp"
#include "leosg/errors.hpp"
#include "leosg/parallel.hpp"

namespace leosg::experiments {
namespace {

namespace fs = std::filesystem;

ExperimentConfig small_custom() {
  ExperimentConfig c = preset(ExperimentKind::custom);
  c.trials = 100;
  c.counts = {30};
  c.altitudes_km = {1000};
  c.gw_densities_per_km2 = {3};
  return c;
}

TEST(Run, SingleGridPointIsOneFastRow) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult r = run(small_custom());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(r.rows.size(), 1u);
  EXPECT_LT(seconds, 1.0);
  EXPECT_EQ(r.header, csv_header(ExperimentKind::custom));
}

TEST(Run, RowsAreTheGridProduct) {
  ExperimentConfig c = small_custom();
  c.counts = {10, 20};
  c.altitudes_km = {500, 1000, 1500};
  c.gw_densities_per_km2 = {1, 3};
  EXPECT_EQ(run(c).rows.size(), 12u);
}

TEST(Run, CsvIsDeterministicAcrossRunsAndWorkers) {
  ExperimentConfig c = preset(ExperimentKind::fig3);
  c.trials = 100;
  c.altitudes_km = {1000};
  set_worker_count(1);
  const std::string a = run(c).csv();
  set_worker_count(6);
  const std::string b = run(c).csv();
  const std::string again = run(c).csv();
  set_worker_count(0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, again);
}

TEST(Run, HeadersAreFixed) {
  EXPECT_EQ(csv_header(ExperimentKind::fig3),
            (std::vector<std::string>{"altitude_km", "n_sats", "mode", "mean_latency_ms", "stderr_ms",
                                      "unreachable_frac", "trials"}));
  EXPECT_EQ(csv_header(ExperimentKind::fig4),
            (std::vector<std::string>{"n_sats", "gw_density_per_km2", "coverage", "stderr", "trials"}));
  EXPECT_EQ(csv_header(ExperimentKind::fig5),
            (std::vector<std::string>{"n_sats", "altitude_km", "coverage", "stderr", "trials"}));
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
}

TEST(Run, SummaryCarriesMetadataAndReparsableConfig) {
  const ExperimentConfig c = small_custom();
  const ExperimentResult r = run(c);
  const std::string summary = r.summary(c);
  EXPECT_NE(summary.find("master_seed: 1"), std::string::npos);
  EXPECT_NE(summary.find("wall_time_s"), std::string::npos);
  EXPECT_NE(summary.find("code_version"), std::string::npos);
  const auto pos = summary.find("[config]\n");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_EQ(parse_config_text(summary.substr(pos + 9)), c);
}

TEST(Run, WritesOutputFiles) {
  ExperimentConfig c = small_custom();
  c.output_dir = (fs::temp_directory_path() / "leosg_runner_test").string();
  fs::remove_all(c.output_dir);
  const ExperimentResult r = run(c);
  write_outputs(r, c);
  for (const char* name : {"custom.csv", "custom_summary.txt", "custom_config.cfg"}) {
    EXPECT_TRUE(fs::exists(fs::path(c.output_dir) / name)) << name;
  }
  std::ifstream in(fs::path(c.output_dir) / "custom.csv");
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), r.csv());
  fs::remove_all(c.output_dir);
}

TEST(Run, UnwritableOutputIsIoError) {
  ExperimentConfig c = small_custom();
  c.output_dir = "/proc/leosg_cannot_write_here";
  EXPECT_THROW(write_outputs(run(c), c), std::ios_base::failure);
}

ExperimentConfig curve_config() {
  ExperimentConfig c = preset(ExperimentKind::fig4);
  c.trials = 1500;
  return c;
}

TEST(Calibration, NoiseLimitsMoveTheArgmax) {
  const ExperimentConfig c = curve_config();
  const CoverageCurve curve(c, 1000.0, RngStream(5));
  const std::size_t last = curve.counts().size() - 1;
  // High noise favours dense constellations, low noise the interference-limited optimum.
  EXPECT_GE(curve.argmax(-95.0), last - 8);
  EXPECT_LT(curve.argmax(-160.0) + 10, curve.argmax(-95.0));
}

TEST(Calibration, ReachableTargetConvergesAndReproduces) {
  const ExperimentConfig c = curve_config();
  const CoverageCurve curve(c, 1000.0, RngStream(6));
  const CalibrationResult cal = calibrate_noise(110.0, curve, -110.0, 60.0);
  EXPECT_TRUE(cal.converged);
  const double achieved = curve.counts()[curve.argmax(cal.noise_dbw)];
  EXPECT_LE(std::abs(achieved - 110.0), 5.0);
  EXPECT_EQ(achieved, cal.achieved_peak_n);
}

TEST(Calibration, TargetMustBeInterior) {
  const ExperimentConfig c = curve_config();
  const CoverageCurve curve(c, 1000.0, RngStream(7));
  EXPECT_THROW(calibrate_noise(5.0, curve, -110.0, 60.0), config_error);
}

}  // namespace
}  // namespace leosg::experiments
