#include "experiments/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include <fmt/format.h>

#include "experiments/validation.hpp"
#include "leosg/errors.hpp"

#ifndef LEOSG_VERSION
#define LEOSG_VERSION "unknown"
#endif

namespace leosg::experiments {

namespace {

// Substream layout under RngStream(master_seed).
constexpr std::uint64_t kSatelliteHop = 0;
constexpr std::uint64_t kGroundHop = 1;
constexpr std::uint64_t kLatency = 2;
constexpr std::uint64_t kCalibration = 3;

std::size_t grid_index_of(const std::vector<double>& grid, double value) {
  const auto it = std::find(grid.begin(), grid.end(), value);
  return it == grid.end() ? grid.size() : static_cast<std::size_t>(it - grid.begin());
}

// Substream for the satellite hop at one altitude; the count index is added by CoverageCurve.
RngStream satellite_stream(const ExperimentConfig& config, double altitude_km) {
  const RngStream base(config.master_seed);
  const std::size_t a = grid_index_of(config.altitudes_km, altitude_km);
  if (a == config.altitudes_km.size()) {
    return base.child(kCalibration);
  }
  return base.child(kSatelliteHop).child(a);
}

CoverageEstimate ground_estimate(const ExperimentConfig& config, std::size_t density_index) {
  const double density = config.gw_densities_per_km2[density_index];
  const LinkScenario scenario = make_scenario(config, density);
  if (std::holds_alternative<Direct>(scenario)) {
    return {1.0, 0.0, config.trials};
  }
  const GroundLink link = make_ground_link(config, density);
  return ground_link_coverage(link, config.threshold_db, config.trials,
                              RngStream(config.master_seed).child(kGroundHop).child(density_index));
}

CoverageEstimate combine(const CoverageEstimate& a, const CoverageEstimate& b) {
  return {a.probability * b.probability,
          std::sqrt(b.probability * b.probability * a.standard_error * a.standard_error +
                    a.probability * a.probability * b.standard_error * b.standard_error),
          a.trials};
}

std::size_t peak_index(const std::vector<CoverageEstimate>& cov) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cov.size(); ++i) {
    if (cov[i].probability > cov[best].probability) {
      best = i;
    }
  }
  return best;
}

}  // namespace

bool peak_resolved(const std::vector<CoverageEstimate>& cov, std::size_t peak) {
  // Compare against the lower of the two grid ends (excluding the peak itself).
  const std::size_t last = cov.size() - 1;
  std::size_t end = peak == 0 ? last : (peak == last ? 0 : (cov[0].probability < cov[last].probability ? 0 : last));
  const double gap = cov[peak].probability - cov[end].probability;
  return gap > 3.0 * std::hypot(cov[peak].standard_error, cov[end].standard_error) && gap > 0.0;
}

namespace {

struct NoiseChoice {
  double noise_dbw;
  std::vector<std::pair<std::string, std::string>> metadata;
};

NoiseChoice resolve_noise(const ExperimentConfig& config, const CoverageCurve* reference) {
  NoiseChoice choice{config.noise_dbw.value_or(0.0), {}};
  if (!config.calibrate) {
    choice.metadata.emplace_back("noise_dbw", format_number(choice.noise_dbw));
    return choice;
  }
  const CalibrationResult cal =
      reference != nullptr
          ? calibrate_noise(config.calibration_target_n, *reference, *config.noise_dbw, config.calibration_window_db)
          : calibrate_noise(config.calibration_target_n, config);
  choice.noise_dbw = cal.noise_dbw;
  choice.metadata = {{"noise_dbw", format_number(cal.noise_dbw)},
                     {"calibration_target_n", format_number(config.calibration_target_n)},
                     {"calibration_altitude_km", format_number(config.calibration_altitude_km)},
                     {"calibration_achieved_peak_n", format_number(cal.achieved_peak_n)},
                     {"calibration_converged", cal.converged ? "true" : "false"},
                     {"calibration_iterations", std::to_string(cal.iterations)}};
  return choice;
}

std::string count_string(double n) { return std::to_string(static_cast<std::uint64_t>(n)); }

ExperimentResult run_fig4(const ExperimentConfig& config) {
  ExperimentResult result{"fig4", csv_header(ExperimentKind::fig4)};
  const double altitude = config.altitudes_km.front();
  const CoverageCurve curve(config, altitude, satellite_stream(config, altitude));
  const bool reuse = config.calibration_altitude_km == altitude;
  const NoiseChoice noise = resolve_noise(config, reuse ? &curve : nullptr);
  result.metadata = noise.metadata;
  result.metadata.emplace_back("altitude_km", format_number(altitude));

  const auto satellite = curve.coverage(noise.noise_dbw);
  for (std::size_t d = 0; d < config.gw_densities_per_km2.size(); ++d) {
    const CoverageEstimate ground = ground_estimate(config, d);
    std::size_t best = 0;
    for (std::size_t i = 0; i < curve.counts().size(); ++i) {
      const CoverageEstimate total = combine(satellite[i], ground);
      result.rows.push_back({count_string(curve.counts()[i]), format_number(config.gw_densities_per_km2[d]),
                             format_number(total.probability), format_number(total.standard_error),
                             std::to_string(config.trials)});
      if (total.probability > combine(satellite[best], ground).probability) {
        best = i;
      }
    }
    result.notes.push_back(fmt::format("gw_density={} coverage_optimal_n={} ground_hop_coverage={}",
                                       format_number(config.gw_densities_per_km2[d]),
                                       count_string(curve.counts()[best]), format_number(ground.probability)));
  }
  return result;
}

ExperimentResult run_fig5(const ExperimentConfig& config) {
  if (config.gw_densities_per_km2.size() != 1) {
    throw config_error("fig5 takes a single gateway density");
  }
  ExperimentResult result{"fig5", csv_header(ExperimentKind::fig5)};
  std::vector<CoverageCurve> curves;
  for (double altitude : config.altitudes_km) {
    curves.emplace_back(config, altitude, satellite_stream(config, altitude));
  }
  const std::size_t ref = grid_index_of(config.altitudes_km, config.calibration_altitude_km);
  const NoiseChoice noise = resolve_noise(config, ref < curves.size() ? &curves[ref] : nullptr);
  result.metadata = noise.metadata;
  result.metadata.emplace_back("gw_density_per_km2", format_number(config.gw_densities_per_km2.front()));

  const CoverageEstimate ground = ground_estimate(config, 0);
  for (std::size_t a = 0; a < curves.size(); ++a) {
    const auto satellite = curves[a].coverage(noise.noise_dbw);
    std::size_t best = 0;
    for (std::size_t i = 0; i < satellite.size(); ++i) {
      const CoverageEstimate total = combine(satellite[i], ground);
      result.rows.push_back({count_string(config.counts[i]), format_number(config.altitudes_km[a]),
                             format_number(total.probability), format_number(total.standard_error),
                             std::to_string(config.trials)});
      if (satellite[i].probability > satellite[best].probability) {
        best = i;
      }
    }
    result.notes.push_back(fmt::format("altitude_km={} coverage_optimal_n={}", format_number(config.altitudes_km[a]),
                                       count_string(config.counts[best])));
  }
  return result;
}

ExperimentResult run_fig3(const ExperimentConfig& config) {
  ExperimentResult result{"fig3", csv_header(ExperimentKind::fig3)};
  result.metadata.emplace_back("relay_gw_count", std::to_string(config.relay_gw_count));
  result.metadata.emplace_back("progress_metric", config.progress_metric);
  const RngStream base = RngStream(config.master_seed).child(kLatency);
  const RoutingOptions options = make_routing_options(config);
  for (std::size_t a = 0; a < config.altitudes_km.size(); ++a) {
    for (std::size_t n = 0; n < config.counts.size(); ++n) {
      const ShellSpec shell = make_shell(config, static_cast<std::size_t>(config.counts[n]), config.altitudes_km[a]);
      // Same substream for every mode: modes are compared on identical constellations.
      const RngStream stream = base.child(a * config.counts.size() + n);
      for (const auto& mode : config.routing_modes) {
        const LatencyStats stats = average_latency(shell, make_routing_mode(config, mode), config.trials, stream,
                                                   options, config.earth_radius_km);
        result.rows.push_back({format_number(config.altitudes_km[a]), count_string(config.counts[n]), mode,
                               format_number(stats.mean_latency_ms), format_number(stats.standard_error_ms),
                               format_number(stats.unreachable_fraction), std::to_string(config.trials)});
      }
    }
  }
  return result;
}

ExperimentResult run_custom(const ExperimentConfig& config) {
  ExperimentResult result{"custom", csv_header(ExperimentKind::custom)};
  const double noise = config.noise_dbw.value_or(-300.0);
  result.metadata.emplace_back("noise_dbw", format_number(noise));
  const RngStream base(config.master_seed);
  for (std::size_t a = 0; a < config.altitudes_km.size(); ++a) {
    for (std::size_t n = 0; n < config.counts.size(); ++n) {
      const SinrConfig sinr_config =
          make_sinr_config(config, static_cast<std::size_t>(config.counts[n]), config.altitudes_km[a], noise);
      for (std::size_t d = 0; d < config.gw_densities_per_km2.size(); ++d) {
        const LinkScenario scenario = make_scenario(config, config.gw_densities_per_km2[d]);
        const RngStream stream = base.child(kSatelliteHop).child(a).child(n).child(d);
        const CoverageEstimate cov = coverage_probability(sinr_config, scenario, config.trials, stream);
        const double rate = sinr_config.system_type == SystemType::ideal
                                ? std::numeric_limits<double>::infinity()
                                : average_rate(sinr_config, scenario, config.trials, stream);
        result.rows.push_back({count_string(config.counts[n]), format_number(config.altitudes_km[a]),
                               format_number(config.gw_densities_per_km2[d]), format_number(cov.probability),
                               format_number(cov.standard_error), format_number(rate),
                               std::to_string(config.trials)});
      }
    }
  }
  return result;
}

ExperimentResult run_validate(const ExperimentConfig& config) {
  ExperimentResult result{"validate", csv_header(ExperimentKind::validate)};
  const auto checks = run_oracle_suite(config.master_seed);
  for (const auto& check : checks) {
    result.rows.push_back({check.name, check.passed ? "pass" : "fail", check.detail});
    result.validation_failed = result.validation_failed || !check.passed;
  }
  return result;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return out + "\"";
}

}  // namespace

CoverageCurve::CoverageCurve(const ExperimentConfig& config, double altitude_km, const RngStream& rng)
    : config_(&config), altitude_km_(altitude_km), counts_(config.counts) {
  draws_.reserve(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    // Noise does not enter the draws; any value gives the same samples.
    const SinrConfig sinr_config = make_sinr_config(config, static_cast<std::size_t>(counts_[i]), altitude_km, 0.0);
    draws_.push_back(sample_link_draws(sinr_config, config.trials, rng.child(i)));
  }
}

std::vector<CoverageEstimate> CoverageCurve::coverage(double noise_dbw) const {
  std::vector<CoverageEstimate> out;
  out.reserve(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const SinrConfig sinr_config =
        make_sinr_config(*config_, static_cast<std::size_t>(counts_[i]), altitude_km_, noise_dbw);
    out.push_back(coverage_from_draws(draws_[i], sinr_config));
  }
  return out;
}

std::size_t CoverageCurve::argmax(double noise_dbw) const { return peak_index(coverage(noise_dbw)); }

CalibrationResult calibrate_noise(double target_peak_n, const CoverageCurve& curve, double noise_guess_dbw,
                                  double window_db) {
  const auto& counts = curve.counts();
  const std::size_t target = grid_index_of(counts, target_peak_n);
  if (target == 0 || target + 1 >= counts.size()) {
    throw config_error("calibration target must be an interior point of the count grid");
  }
  auto interior = [&](std::size_t idx) { return idx > 0 && idx + 1 < counts.size(); };
  auto distance = [&](std::size_t idx) { return idx > target ? idx - target : target - idx; };
  // Peak index, or nullopt when noise swamps the signal and the peak is not statistically resolved.
  auto peak = [&](double noise) -> std::optional<std::size_t> {
    const auto cov = curve.coverage(noise);
    const std::size_t best_idx = peak_index(cov);
    if (!peak_resolved(cov, best_idx)) {
      return std::nullopt;
    }
    return best_idx;
  };

  const double window_lo = noise_guess_dbw - window_db;
  const double window_hi = noise_guess_dbw + window_db;
  double lo = window_lo;
  double hi = window_hi;
  bool any_interior = false;
  std::optional<CalibrationResult> best;
  std::size_t best_distance = counts.size();
  auto consider = [&](double noise, std::size_t idx, int iteration) {
    if (!best || distance(idx) < best_distance) {
      best_distance = distance(idx);
      best = CalibrationResult{noise, counts[idx], false, iteration};
    }
  };
  for (int k = 0; k <= 12; ++k) {
    const double noise = lo + (hi - lo) * k / 12.0;
    if (const auto idx = peak(noise)) {
      any_interior = any_interior || interior(*idx);
      consider(noise, *idx, 0);
    }
  }
  if (!any_interior) {
    throw CalibrationError("no noise level in the calibration window yields an interior coverage peak");
  }

  // More noise moves the peak to larger counts until the signal is lost altogether.
  constexpr int kMaxIterations = 40;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto idx = peak(mid);
    if (!idx) {
      hi = mid;
      continue;
    }
    consider(mid, *idx, it);
    if (distance(*idx) <= 1) {
      return {mid, counts[*idx], true, it};
    }
    if (*idx > target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // The argmax of a Monte Carlo curve is not exactly monotone in noise, so bisection can
  // step over a narrow band of good levels; fall back to a fine scan of the whole window.
  constexpr double kScanStepDb = 0.25;
  const int scan_points = static_cast<int>(std::ceil((window_hi - window_lo) / kScanStepDb));
  for (int k = 0; k <= scan_points; ++k) {
    const double noise = window_lo + k * kScanStepDb;
    if (const auto idx = peak(noise)) {
      consider(noise, *idx, kMaxIterations);
      if (distance(*idx) <= 1) {
        return {noise, counts[*idx], true, kMaxIterations + k + 1};
      }
    }
  }
  CalibrationResult result = *best;
  result.iterations = kMaxIterations + scan_points + 1;
  return result;
}

CalibrationResult calibrate_noise(double target_peak_n, const ExperimentConfig& config) {
  if (!config.noise_dbw) {
    throw config_error("calibration needs coverage.noise_dbw as the starting guess");
  }
  const CoverageCurve curve(config, config.calibration_altitude_km,
                            satellite_stream(config, config.calibration_altitude_km));
  return calibrate_noise(target_peak_n, curve, *config.noise_dbw, config.calibration_window_db);
}

std::vector<std::string> csv_header(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::fig3:
      return {"altitude_km", "n_sats", "mode", "mean_latency_ms", "stderr_ms", "unreachable_frac", "trials"};
    case ExperimentKind::fig4:
      return {"n_sats", "gw_density_per_km2", "coverage", "stderr", "trials"};
    case ExperimentKind::fig5:
      return {"n_sats", "altitude_km", "coverage", "stderr", "trials"};
    case ExperimentKind::custom:
      return {"n_sats", "altitude_km", "gw_density_per_km2", "coverage", "stderr", "average_rate_bps_hz", "trials"};
    case ExperimentKind::validate:
      return {"check", "result", "detail"};
  }
  return {};
}

std::string format_number(double v) { return fmt::format("{:.9g}", v); }

std::string ExperimentResult::csv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out += (i == 0 ? "" : ",") + csv_field(fields[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& row : rows) {
    line(row);
  }
  return out;
}

std::string ExperimentResult::summary(const ExperimentConfig& config) const {
  std::string out = fmt::format("experiment: {}\ncode_version: {}\nmaster_seed: {}\ntrials: {}\n", name,
                                LEOSG_VERSION, config.master_seed, config.trials);
  for (const auto& [key, value] : metadata) {
    out += fmt::format("{}: {}\n", key, value);
  }
  out += "\n[rows]\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size() && i < header.size(); ++i) {
      out += fmt::format("{}{}={}", i == 0 ? "" : " ", header[i], row[i]);
    }
    out += '\n';
  }
  if (!notes.empty()) {
    out += "\n[notes]\n";
    for (const auto& note : notes) {
      out += note + '\n';
    }
  }
  out += "\n[config]\n" + serialize_config(config);
  return out;
}

ExperimentResult run(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  switch (config.experiment) {
    case ExperimentKind::fig3:
      result = run_fig3(config);
      break;
    case ExperimentKind::fig4:
      result = run_fig4(config);
      break;
    case ExperimentKind::fig5:
      result = run_fig5(config);
      break;
    case ExperimentKind::custom:
      result = run_custom(config);
      break;
    case ExperimentKind::validate:
      result = run_validate(config);
      break;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.metadata.emplace_back("wall_time_s", fmt::format("{:.3f}", seconds));
  return result;
}

void write_outputs(const ExperimentResult& result, const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw std::ios_base::failure("cannot create output directory " + config.output_dir + ": " + ec.message());
  }
  auto write = [&](const std::string& filename, const std::string& content) {
    const fs::path path = fs::path(config.output_dir) / filename;
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
      throw std::ios_base::failure("cannot write " + path.string());
    }
  };
  write(result.name + ".csv", result.csv());
  write(result.name + "_summary.txt", result.summary(config));
  write(result.name + "_config.cfg", serialize_config(config));
}

}  // namespace leosg::experiments
