#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "leosg/coverage.hpp"
#include "leosg/latency.hpp"

namespace leosg::experiments {

enum class ExperimentKind { fig3, fig4, fig5, custom, validate };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::custom;
  double earth_radius_km = kEarthRadiusKm;
  std::size_t trials = 2000;
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";

  // Satellite shell.
  std::string shell_kind = "bpp";  // bpp | ppp | nppp
  std::vector<double> counts{30};
  std::vector<double> altitudes_km{1000};
  double tx_power_dbw = 15.0;
  double inclination_deg = 53.0;

  // Channel of both hops.
  double alpha = 2.0;
  std::string small_scale = "shadowed_rician";  // none | rayleigh | rician | shadowed_rician
  double sr_omega = 1.29;
  double sr_b = 0.158;
  double sr_m = 19.4;
  double rician_k = 0.0;
  double los_shadowing_sigma_db = 0.0;
  double rain_attenuation_db = 0.0;
  double nlos_loss_db = 20.0;

  // SINR evaluation of the satellite hop.
  double threshold_db = -10.0;
  std::optional<double> noise_dbw;
  std::string system_type = "generic";  // ideal | noise_limited | interference_limited | generic
  int bands = 1;
  std::string nlos_interference = "zero";  // zero | constant | faded
  double nlos_constant_dbw = -200.0;
  std::string scenario = "gw_relayed";  // direct | gw_relayed | hybrid

  // Terrestrial gateway-to-user hop.
  std::vector<double> gw_densities_per_km2{3.0};
  double gw_tx_power_dbw = 0.0;
  double gw_noise_dbw = -50.0;

  // Noise calibration against a target coverage-optimal satellite count.
  bool calibrate = false;
  double calibration_target_n = 30.0;
  double calibration_altitude_km = 1000.0;
  double calibration_window_db = 60.0;

  // Latency experiment.
  std::vector<std::string> routing_modes{"inter_satellite", "gw_relay"};
  std::size_t relay_gw_count = 200;
  std::string progress_metric = "great_circle";  // great_circle | euclidean

  bool operator==(const ExperimentConfig&) const = default;

  // Throws config_error on invalid values or missing required keys.
  void validate() const;
};

const char* to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

// Flat "dotted.key = value" format; '#' starts a comment, lists are comma separated.
// Unknown keys are errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Writes every key; parse_config of the result reproduces the config exactly.
std::string serialize_config(const ExperimentConfig& config);

// Built-in presets mirroring presets/*.cfg.
ExperimentConfig preset(ExperimentKind kind);

ShellSpec make_shell(const ExperimentConfig& config, std::size_t count, double altitude_km);
ChannelSpec make_channel(const ExperimentConfig& config);
SinrConfig make_sinr_config(const ExperimentConfig& config, std::size_t count, double altitude_km, double noise_dbw);
GroundLink make_ground_link(const ExperimentConfig& config, double density_per_km2);
LinkScenario make_scenario(const ExperimentConfig& config, double density_per_km2);
RoutingMode make_routing_mode(const ExperimentConfig& config, const std::string& mode);
RoutingOptions make_routing_options(const ExperimentConfig& config);

}  // namespace leosg::experiments
