#include "experiments/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "leosg/errors.hpp"

namespace leosg::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      items.push_back(item);
    }
  }
  return items;
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw config_error(fmt::format("{}: '{}' is not a number", key, value));
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw config_error(fmt::format("{}: '{}' is not a nonnegative integer", key, value));
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true") {
    return true;
  }
  if (value == "false") {
    return false;
  }
  throw config_error(fmt::format("{}: expected true or false, got '{}'", key, value));
}

std::string number(double v) { return fmt::format("{}", v); }

std::string number_list(const std::vector<double>& v) {
  std::vector<std::string> parts;
  for (double x : v) {
    parts.push_back(number(x));
  }
  return fmt::format("{}", fmt::join(parts, ","));
}

struct Field {
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string& key, const std::string& value)> set;
};

template <typename T>
Field double_field(T ExperimentConfig::*member) {
  return {[member](const ExperimentConfig& c) { return number(c.*member); },
          [member](ExperimentConfig& c, const std::string& k, const std::string& v) { c.*member = to_double(k, v); }};
}

Field string_field(std::string ExperimentConfig::*member) {
  return {[member](const ExperimentConfig& c) { return c.*member; },
          [member](ExperimentConfig& c, const std::string&, const std::string& v) { c.*member = v; }};
}

Field list_field(std::vector<double> ExperimentConfig::*member) {
  return {[member](const ExperimentConfig& c) { return number_list(c.*member); },
          [member](ExperimentConfig& c, const std::string& k, const std::string& v) {
            std::vector<double> out;
            for (const auto& item : split_list(v)) {
              out.push_back(to_double(k, item));
            }
            c.*member = out;
          }};
}

// Ordered table of every key; order defines the serialized layout.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"experiment",
       {[](const ExperimentConfig& c) { return std::string(to_string(c.experiment)); },
        [](ExperimentConfig& c, const std::string&, const std::string& v) { c.experiment = parse_experiment_kind(v); }}},
      {"earth_radius_km", double_field(&ExperimentConfig::earth_radius_km)},
      {"trials",
       {[](const ExperimentConfig& c) { return std::to_string(c.trials); },
        [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.trials = to_uint(k, v); }}},
      {"master_seed",
       {[](const ExperimentConfig& c) { return std::to_string(c.master_seed); },
        [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.master_seed = to_uint(k, v); }}},
      {"output_dir", string_field(&ExperimentConfig::output_dir)},
      {"shell.kind", string_field(&ExperimentConfig::shell_kind)},
      {"shell.counts", list_field(&ExperimentConfig::counts)},
      {"shell.altitudes_km", list_field(&ExperimentConfig::altitudes_km)},
      {"shell.tx_power_dbw", double_field(&ExperimentConfig::tx_power_dbw)},
      {"shell.inclination_deg", double_field(&ExperimentConfig::inclination_deg)},
      {"channel.alpha", double_field(&ExperimentConfig::alpha)},
      {"channel.small_scale", string_field(&ExperimentConfig::small_scale)},
      {"channel.sr_omega", double_field(&ExperimentConfig::sr_omega)},
      {"channel.sr_b", double_field(&ExperimentConfig::sr_b)},
      {"channel.sr_m", double_field(&ExperimentConfig::sr_m)},
      {"channel.rician_k", double_field(&ExperimentConfig::rician_k)},
      {"channel.los_shadowing_sigma_db", double_field(&ExperimentConfig::los_shadowing_sigma_db)},
      {"channel.rain_attenuation_db", double_field(&ExperimentConfig::rain_attenuation_db)},
      {"channel.nlos_loss_db", double_field(&ExperimentConfig::nlos_loss_db)},
      {"coverage.threshold_db", double_field(&ExperimentConfig::threshold_db)},
      {"coverage.noise_dbw",
       {[](const ExperimentConfig& c) { return c.noise_dbw ? number(*c.noise_dbw) : std::string("none"); },
        [](ExperimentConfig& c, const std::string& k, const std::string& v) {
          if (v == "none") {
            c.noise_dbw.reset();
          } else {
            c.noise_dbw = to_double(k, v);
          }
        }}},
      {"coverage.system", string_field(&ExperimentConfig::system_type)},
      {"coverage.bands",
       {[](const ExperimentConfig& c) { return std::to_string(c.bands); },
        [](ExperimentConfig& c, const std::string& k, const std::string& v) {
          c.bands = static_cast<int>(to_uint(k, v));
        }}},
      {"coverage.nlos_interference", string_field(&ExperimentConfig::nlos_interference)},
      {"coverage.nlos_constant_dbw", double_field(&ExperimentConfig::nlos_constant_dbw)},
      {"coverage.scenario", string_field(&ExperimentConfig::scenario)},
      {"gw.densities_per_km2", list_field(&ExperimentConfig::gw_densities_per_km2)},
      {"gw.tx_power_dbw", double_field(&ExperimentConfig::gw_tx_power_dbw)},
      {"gw.noise_dbw", double_field(&ExperimentConfig::gw_noise_dbw)},
      {"calibration.enabled",
       {[](const ExperimentConfig& c) { return std::string(c.calibrate ? "true" : "false"); },
        [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.calibrate = to_bool(k, v); }}},
      {"calibration.target_n", double_field(&ExperimentConfig::calibration_target_n)},
      {"calibration.altitude_km", double_field(&ExperimentConfig::calibration_altitude_km)},
      {"calibration.window_db", double_field(&ExperimentConfig::calibration_window_db)},
      {"latency.modes",
       {[](const ExperimentConfig& c) { return fmt::format("{}", fmt::join(c.routing_modes, ",")); },
        [](ExperimentConfig& c, const std::string&, const std::string& v) { c.routing_modes = split_list(v); }}},
      {"latency.relay_gw_count",
       {[](const ExperimentConfig& c) { return std::to_string(c.relay_gw_count); },
        [](ExperimentConfig& c, const std::string& k, const std::string& v) { c.relay_gw_count = to_uint(k, v); }}},
      {"latency.progress_metric", string_field(&ExperimentConfig::progress_metric)},
  };
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& [name, field] : fields()) {
    if (name == key) {
      return &field;
    }
  }
  return nullptr;
}

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
  return std::any_of(options.begin(), options.end(), [&](const char* o) { return v == o; });
}

std::vector<double> range_step(double first, double last, double step) {
  std::vector<double> out;
  for (double v = first; v <= last + 1e-9; v += step) {
    out.push_back(v);
  }
  return out;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::fig3:
      return "fig3";
    case ExperimentKind::fig4:
      return "fig4";
    case ExperimentKind::fig5:
      return "fig5";
    case ExperimentKind::custom:
      return "custom";
    case ExperimentKind::validate:
      return "validate";
  }
  return "custom";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (auto kind : {ExperimentKind::fig3, ExperimentKind::fig4, ExperimentKind::fig5, ExperimentKind::custom,
                    ExperimentKind::validate}) {
    if (name == to_string(kind)) {
      return kind;
    }
  }
  throw config_error(fmt::format("unknown experiment '{}'", name));
}

void ExperimentConfig::validate() const {
  if (!(earth_radius_km > 0.0)) {
    throw config_error("earth_radius_km must be positive");
  }
  if (trials == 0) {
    throw config_error("trials must be positive");
  }
  const bool figure = experiment == ExperimentKind::fig3 || experiment == ExperimentKind::fig4 ||
                      experiment == ExperimentKind::fig5;
  if (figure && trials < 100) {
    throw config_error("figure presets need at least 100 trials");
  }
  if (counts.empty() || altitudes_km.empty() || gw_densities_per_km2.empty()) {
    throw config_error("grids must be nonempty");
  }
  for (double n : counts) {
    if (!(n >= 0.0) || n != std::floor(n)) {
      throw config_error("shell.counts must be nonnegative integers");
    }
  }
  for (double a : altitudes_km) {
    if (!(a > 0.0)) {
      throw config_error("shell.altitudes_km must be positive");
    }
  }
  for (double d : gw_densities_per_km2) {
    if (!(d > 0.0)) {
      throw config_error("gw.densities_per_km2 must be positive");
    }
  }
  if (!one_of(shell_kind, {"bpp", "ppp", "nppp"})) {
    throw config_error("shell.kind must be bpp, ppp or nppp");
  }
  if (!one_of(small_scale, {"none", "rayleigh", "rician", "shadowed_rician"})) {
    throw config_error("channel.small_scale must be none, rayleigh, rician or shadowed_rician");
  }
  if (!one_of(system_type, {"ideal", "noise_limited", "interference_limited", "generic"})) {
    throw config_error("coverage.system must be ideal, noise_limited, interference_limited or generic");
  }
  if (!one_of(nlos_interference, {"zero", "constant", "faded"})) {
    throw config_error("coverage.nlos_interference must be zero, constant or faded");
  }
  if (!one_of(scenario, {"direct", "gw_relayed", "hybrid"})) {
    throw config_error("coverage.scenario must be direct, gw_relayed or hybrid");
  }
  if (!one_of(progress_metric, {"great_circle", "euclidean"})) {
    throw config_error("latency.progress_metric must be great_circle or euclidean");
  }
  if (bands < 1) {
    throw config_error("coverage.bands must be at least 1");
  }
  if (experiment == ExperimentKind::fig3) {
    if (routing_modes.empty()) {
      throw config_error("latency.modes must be nonempty");
    }
    for (const auto& m : routing_modes) {
      if (!one_of(m, {"inter_satellite", "gw_relay"})) {
        throw config_error(fmt::format("unknown routing mode '{}'", m));
      }
    }
    if (relay_gw_count == 0) {
      throw config_error("latency.relay_gw_count must be positive");
    }
  }
  if ((experiment == ExperimentKind::fig4 || experiment == ExperimentKind::fig5) && !noise_dbw) {
    throw config_error("coverage.noise_dbw is required for fig4/fig5");
  }
  if (experiment == ExperimentKind::custom && !noise_dbw && system_type != "ideal" &&
      system_type != "interference_limited") {
    throw config_error("coverage.noise_dbw is required unless the system ignores noise");
  }
  if (calibrate && !(calibration_window_db > 0.0)) {
    throw config_error("calibration.window_db must be positive");
  }
  make_channel(*this).validate();
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw config_error(fmt::format("line {}: expected key = value", line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Field* field = find_field(key);
    if (field == nullptr) {
      throw config_error(fmt::format("line {}: unknown key '{}'", line_no, key));
    }
    if (seen.contains(key)) {
      throw config_error(fmt::format("line {}: duplicate key '{}' (first on line {})", line_no, key, seen[key]));
    }
    seen[key] = line_no;
    field->set(config, key, value);
  }
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open config file " + path);
  }
  return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [name, field] : fields()) {
    out += fmt::format("{} = {}\n", name, field.get(config));
  }
  return out;
}

ExperimentConfig preset(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  switch (kind) {
    case ExperimentKind::fig3:
      c.trials = 2000;
      c.counts = {100, 300, 1000};
      c.altitudes_km = {500, 750, 1000, 1250, 1500};
      break;
    case ExperimentKind::fig4:
      c.trials = 20000;
      c.counts = range_step(5, 200, 5);
      c.altitudes_km = {1000};
      c.gw_densities_per_km2 = {0.3, 1.0, 3.0};
      c.noise_dbw = -110.0;
      c.calibrate = true;
      break;
    case ExperimentKind::fig5:
      c.trials = 20000;
      c.counts = range_step(5, 200, 5);
      c.altitudes_km = {500, 1000, 1500};
      c.gw_densities_per_km2 = {3.0};
      c.noise_dbw = -110.0;
      c.calibrate = true;
      break;
    case ExperimentKind::custom:
    case ExperimentKind::validate:
      c.noise_dbw = -110.0;
      break;
  }
  return c;
}

ShellSpec make_shell(const ExperimentConfig& config, std::size_t count, double altitude_km) {
  ShellSpec shell;
  shell.altitude_km = altitude_km;
  shell.tx_power_dbw = config.tx_power_dbw;
  if (config.shell_kind == "bpp") {
    shell.kind = Bpp{count};
  } else if (config.shell_kind == "ppp") {
    shell.kind = Ppp{std::nullopt, static_cast<double>(count)};
  } else {
    shell.kind = Nppp{count, InclinedOrbitDensity{deg_to_rad(config.inclination_deg)}};
  }
  return shell;
}

ChannelSpec make_channel(const ExperimentConfig& config) {
  ChannelSpec channel;
  channel.path_loss_exponent = config.alpha;
  channel.large_scale.shadowing_sigma_db = config.los_shadowing_sigma_db;
  channel.large_scale.rain_attenuation_db = config.rain_attenuation_db;
  channel.large_scale.nlos_mean_loss_db = config.nlos_loss_db;
  if (config.small_scale == "none") {
    channel.small_scale = NonFading{};
  } else if (config.small_scale == "rayleigh") {
    channel.small_scale = Rayleigh{};
  } else if (config.small_scale == "rician") {
    channel.small_scale = Rician{config.rician_k};
  } else {
    channel.small_scale = ShadowedRician{config.sr_b, config.sr_m, config.sr_omega};
  }
  return channel;
}

SinrConfig make_sinr_config(const ExperimentConfig& config, std::size_t count, double altitude_km, double noise_dbw) {
  SinrConfig sinr;
  sinr.shells = {make_shell(config, count, altitude_km)};
  sinr.channel = make_channel(config);
  sinr.noise_dbw = noise_dbw;
  sinr.threshold_db = config.threshold_db;
  sinr.bands = config.bands;
  sinr.r_earth = config.earth_radius_km;
  if (config.system_type == "ideal") {
    sinr.system_type = SystemType::ideal;
  } else if (config.system_type == "noise_limited") {
    sinr.system_type = SystemType::noise_limited;
  } else if (config.system_type == "interference_limited") {
    sinr.system_type = SystemType::interference_limited;
  } else {
    sinr.system_type = SystemType::generic;
  }
  if (config.nlos_interference == "constant") {
    sinr.nlos_interference = NlosConstant{config.nlos_constant_dbw};
  } else if (config.nlos_interference == "faded") {
    sinr.nlos_interference = NlosFaded{};
  } else {
    sinr.nlos_interference = NlosZero{};
  }
  return sinr;
}

GroundLink make_ground_link(const ExperimentConfig& config, double density_per_km2) {
  return GroundLink{GroundField{density_per_km2, GroundNodeKind::gateway}, make_channel(config),
                    config.gw_tx_power_dbw, config.gw_noise_dbw};
}

LinkScenario make_scenario(const ExperimentConfig& config, double density_per_km2) {
  if (config.scenario == "direct") {
    return Direct{};
  }
  if (config.scenario == "hybrid") {
    return Hybrid{make_ground_link(config, density_per_km2)};
  }
  return GwRelayed{make_ground_link(config, density_per_km2)};
}

RoutingMode make_routing_mode(const ExperimentConfig& config, const std::string& mode) {
  if (mode == "gw_relay") {
    return GwRelay{RelayCount{config.relay_gw_count}};
  }
  return InterSatellite{};
}

RoutingOptions make_routing_options(const ExperimentConfig& config) {
  return RoutingOptions{config.earth_radius_km, config.progress_metric == "euclidean" ? ProgressMetric::euclidean
                                                                                      : ProgressMetric::great_circle};
}

}  // namespace leosg::experiments
