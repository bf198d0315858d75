#include "leosg/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "leosg/errors.hpp"
#include "leosg/parallel.hpp"

namespace leosg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double zenith_between(const SurfacePoint& receiver, const Eigen::Vector3d& target) {
  const Eigen::Vector3d los = target - receiver.position();
  return std::acos(std::clamp(receiver.direction().dot(los) / los.norm(), -1.0, 1.0));
}

double interferer_antenna_gain(const AntennaModel& antenna) { return antenna_gain(antenna, std::numbers::pi); }

double faded_power(const ChannelSpec& channel, double tx_power_dbw, double antenna_gain_db, double distance_km,
                   double zenith, RngStream& rng) {
  const LargeScaleSample large = sample_large_scale(channel.large_scale, zenith, rng);
  const double fading = sample_small_scale(channel.small_scale, rng);
  return fading *
         mean_rx_power(tx_power_dbw, antenna_gain_db, large.gain_db, distance_km, channel.path_loss_exponent);
}

double ground_link_snr(const GroundLink& link, RngStream& rng) {
  const double distance = sample_nearest_ground_distance(link.field, rng);
  if (distance == 0.0) {
    return kInf;
  }
  const double power =
      rx_power_sample(link.channel, link.tx_power_dbw, {distance, 0.5 * std::numbers::pi, 0.0}, rng);
  return power / db_to_linear(link.noise_dbw);
}

const GroundLink* ground_link_of(const LinkScenario& scenario) {
  if (const auto* relayed = std::get_if<GwRelayed>(&scenario)) {
    return &relayed->gw_link;
  }
  if (const auto* hybrid = std::get_if<Hybrid>(&scenario)) {
    return &hybrid->gw_link;
  }
  return nullptr;
}

}  // namespace

void SinrConfig::validate() const {
  for (const auto& shell : shells) {
    shell.validate();
  }
  channel.validate();
  if (bands < 1) {
    throw config_error("band count must be at least 1");
  }
  if (!std::isfinite(threshold_db)) {
    throw config_error("SINR threshold must be finite");
  }
  if (!std::isfinite(noise_dbw)) {
    throw config_error("noise power must be finite");
  }
}

NetworkRealization realize(const SinrConfig& config, const SurfacePoint& user, RngStream& rng) {
  Constellation satellites;
  satellites.reserve(config.shells.size());
  for (const auto& shell : config.shells) {
    satellites.push_back(sample_shell(shell, rng, config.r_earth));
  }
  return realize_with(config, user, std::move(satellites), rng);
}

NetworkRealization realize_with(const SinrConfig& config, const SurfacePoint& user, Constellation satellites,
                                RngStream& rng) {
  if (satellites.size() != config.shells.size()) {
    throw config_error("constellation tier count does not match the configured shells");
  }
  NetworkRealization out{.user = user, .satellites = std::move(satellites)};
  const Eigen::Vector3d origin = user.position();

  // Server: highest average received power among eligible satellites.
  for (std::size_t k = 0; k < out.satellites.size(); ++k) {
    const auto& tier = out.satellites[k];
    const auto nearest = nearest_in_region(user, tier, config.serving_region, config.r_earth);
    if (!nearest) {
      continue;
    }
    const double distance = (tier[*nearest].position() - origin).norm();
    const double power = association_power(config.channel, config.shells[k].tx_power_dbw, distance);
    if (power > out.serving_mean_power) {
      out.serving_mean_power = power;
      out.serving = SatelliteRef{k, *nearest};
    }
  }
  if (out.serving) {
    const auto& sat = out.satellites[out.serving->tier][out.serving->index];
    const double distance = (sat.position() - origin).norm();
    out.serving_power =
        faded_power(config.channel, config.shells[out.serving->tier].tx_power_dbw,
                    antenna_gain(config.channel.antenna, 0.0), distance, zenith_between(user, sat.position()), rng);
  }

  const double side_lobe = interferer_antenna_gain(config.channel.antenna);
  const double boresight = antenna_gain(config.channel.antenna, 0.0);
  const bool faded_nlos = std::holds_alternative<NlosFaded>(config.nlos_interference);
  std::vector<double> nlos_terms;
  for (std::size_t k = 0; k < out.satellites.size(); ++k) {
    const double tx = config.shells[k].tx_power_dbw;
    for (std::size_t i = 0; i < out.satellites[k].size(); ++i) {
      const SatelliteRef ref{k, i};
      if (out.serving && *out.serving == ref) {
        continue;
      }
      const Eigen::Vector3d p = out.satellites[k][i].position();
      const double distance = (p - origin).norm();
      if (is_visible(origin, p, config.r_earth)) {
        out.interferers.push_back(ref);
        out.interferer_mean_powers.push_back(association_power(config.channel, tx, distance) *
                                             db_to_linear(side_lobe - boresight));
        out.interferer_powers.push_back(
            faded_power(config.channel, tx, side_lobe, distance, zenith_between(user, p), rng));
      } else if (faded_nlos) {
        nlos_terms.push_back(faded_power(config.channel, tx, side_lobe, distance, zenith_between(user, p), rng));
      }
    }
  }
  out.los_interference = pairwise_sum(out.interferer_powers.data(), out.interferer_powers.size());
  out.nlos_interference = pairwise_sum(nlos_terms.data(), nlos_terms.size());
  return out;
}

LinkDraw summarize(const NetworkRealization& realization) {
  return {realization.serving.has_value(), realization.serving_power, realization.los_interference,
          realization.nlos_interference};
}

double sinr(const LinkDraw& draw, const SinrConfig& config) {
  if (!draw.has_server) {
    return 0.0;
  }
  double nlos = 0.0;
  if (const auto* constant = std::get_if<NlosConstant>(&config.nlos_interference)) {
    nlos = db_to_linear(constant->power_dbw);
  } else if (std::holds_alternative<NlosFaded>(config.nlos_interference)) {
    nlos = draw.nlos_interference;
  }
  const double noise = db_to_linear(config.noise_dbw);
  double denominator = 0.0;
  switch (config.system_type) {
    case SystemType::ideal:
      return kInf;
    case SystemType::noise_limited:
      denominator = noise + (std::holds_alternative<NlosConstant>(config.nlos_interference) ? nlos : 0.0);
      break;
    case SystemType::interference_limited:
      denominator = draw.los_interference + nlos;
      break;
    case SystemType::generic:
      denominator = draw.los_interference + nlos + noise;
      break;
  }
  return denominator > 0.0 ? draw.serving_power / denominator : kInf;
}

double sinr(const NetworkRealization& realization, const SinrConfig& config) {
  return sinr(summarize(realization), config);
}

std::vector<LinkDraw> sample_link_draws(const SinrConfig& config, std::size_t trials, const RngStream& rng,
                                        const Constellation* pinned) {
  config.validate();
  const SurfacePoint user(Eigen::Vector3d::UnitZ(), config.r_earth);
  std::vector<LinkDraw> draws(trials);
  parallel_for(trials, [&](std::size_t t) {
    RngStream stream = rng.child(t);
    draws[t] = summarize(pinned != nullptr ? realize_with(config, user, *pinned, stream)
                                           : realize(config, user, stream));
  });
  return draws;
}

CoverageEstimate estimate_from(std::size_t covered, std::size_t trials) {
  if (trials == 0) {
    throw config_error("coverage estimate needs at least one trial");
  }
  const double p = static_cast<double>(covered) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

CoverageEstimate coverage_from_draws(std::span<const LinkDraw> draws, const SinrConfig& config) {
  const double threshold = db_to_linear(config.threshold_db);
  const auto covered = std::count_if(draws.begin(), draws.end(),
                                     [&](const LinkDraw& d) { return sinr(d, config) > threshold; });
  return estimate_from(static_cast<std::size_t>(covered), draws.size());
}

CoverageEstimate ground_link_coverage(const GroundLink& link, double threshold_db, std::size_t trials,
                                      const RngStream& rng) {
  link.channel.validate();
  const double threshold = db_to_linear(threshold_db);
  std::vector<char> covered(trials, 0);
  parallel_for(trials, [&](std::size_t t) {
    RngStream stream = rng.child(t);
    covered[t] = ground_link_snr(link, stream) > threshold ? 1 : 0;
  });
  return estimate_from(static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1)), trials);
}

CoverageEstimate coverage_probability(const SinrConfig& config, const LinkScenario& scenario, std::size_t trials,
                                      const RngStream& rng, const Constellation* pinned) {
  const auto draws = sample_link_draws(config, trials, rng.child(0), pinned);
  const CoverageEstimate satellite = coverage_from_draws(draws, config);
  const GroundLink* ground = ground_link_of(scenario);
  if (ground == nullptr) {
    return satellite;
  }
  const CoverageEstimate terrestrial = ground_link_coverage(*ground, config.threshold_db, trials, rng.child(1));
  const double p1 = satellite.probability;
  const double p2 = terrestrial.probability;
  return {p1 * p2,
          std::sqrt(p2 * p2 * satellite.standard_error * satellite.standard_error +
                    p1 * p1 * terrestrial.standard_error * terrestrial.standard_error),
          trials};
}

double average_rate(const SinrConfig& config, const LinkScenario& scenario, std::size_t trials,
                    const RngStream& rng, const Constellation* pinned) {
  if (config.system_type == SystemType::ideal) {
    throw config_error("average rate is unbounded for an ideal system");
  }
  const auto draws = sample_link_draws(config, trials, rng.child(0), pinned);
  const GroundLink* ground = ground_link_of(scenario);
  std::vector<double> rates(trials);
  parallel_for(trials, [&](std::size_t t) {
    double value = sinr(draws[t], config);
    if (ground != nullptr) {
      RngStream stream = rng.child(1).child(t);
      value = std::min(value, ground_link_snr(*ground, stream));
    }
    rates[t] = std::log2(1.0 + value);
  });
  return pairwise_sum(rates.data(), rates.size()) / static_cast<double>(trials) / config.bands;
}

std::vector<double> interference_laplace(const SinrConfig& config, std::span<const double> s, std::size_t trials,
                                         const RngStream& rng) {
  for (double v : s) {
    if (!(v >= 0.0)) {
      throw domain_error("interference_laplace: s must be nonnegative");
    }
  }
  const auto draws = sample_link_draws(config, trials, rng.child(0));
  double constant = 0.0;
  if (const auto* c = std::get_if<NlosConstant>(&config.nlos_interference)) {
    constant = db_to_linear(c->power_dbw);
  }
  const bool faded = std::holds_alternative<NlosFaded>(config.nlos_interference);
  std::vector<double> out;
  out.reserve(s.size());
  std::vector<double> terms(trials);
  for (double v : s) {
    for (std::size_t t = 0; t < trials; ++t) {
      const double interference = draws[t].los_interference + constant + (faded ? draws[t].nlos_interference : 0.0);
      terms[t] = std::exp(-v * interference);
    }
    out.push_back(pairwise_sum(terms.data(), terms.size()) / static_cast<double>(trials));
  }
  return out;
}

double interference_laplace(const SinrConfig& config, double s, std::size_t trials, const RngStream& rng) {
  return interference_laplace(config, std::span<const double>(&s, 1), trials, rng).front();
}

}  // namespace leosg
