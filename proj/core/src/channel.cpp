#include "leosg/channel.hpp"

#include <cmath>
#include <numbers>

#include "leosg/errors.hpp"

namespace leosg {

namespace {

constexpr double kSpeedOfLightMPerS = 299792458.0;
constexpr double kSeriesTolerance = 1e-12;
constexpr int kSeriesMaxTerms = 10000;

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double step_los_probability(double zenith) { return zenith <= 0.5 * std::numbers::pi ? 1.0 : 0.0; }

void validate(const AntennaModel& antenna) {
  if (const auto* d = std::get_if<Directional>(&antenna)) {
    if (!(d->main_lobe_gain_db >= d->side_lobe_gain_db)) {
      throw config_error("directional antenna: main lobe gain below side lobe gain");
    }
    if (!(d->half_beamwidth > 0.0 && d->half_beamwidth <= std::numbers::pi)) {
      throw config_error("directional antenna: half beamwidth outside (0, pi]");
    }
  }
}

void validate(const LargeScaleModel& model) {
  if (!(model.carrier_frequency_ghz > 0.0)) {
    throw config_error("carrier frequency must be positive");
  }
  if (!(model.shadowing_sigma_db >= 0.0) || !(model.nlos_sigma_db >= 0.0)) {
    throw config_error("shadowing sigmas must be nonnegative");
  }
  if (!model.los_probability) {
    throw config_error("LoS probability function is empty");
  }
}

void validate(const SmallScaleModel& model) {
  if (const auto* r = std::get_if<Rician>(&model)) {
    if (!(r->k_factor >= 0.0)) {
      throw config_error("Rician K factor must be nonnegative");
    }
  } else if (const auto* sr = std::get_if<ShadowedRician>(&model)) {
    if (!(sr->b > 0.0) || !(sr->m > 0.0) || !(sr->omega >= 0.0)) {
      throw config_error("Shadowed-Rician requires b > 0, m > 0, omega >= 0");
    }
  }
}

void ChannelSpec::validate() const {
  leosg::validate(antenna);
  leosg::validate(large_scale);
  leosg::validate(small_scale);
  if (!(path_loss_exponent >= 2.0 && path_loss_exponent <= 4.0)) {
    throw config_error("path loss exponent must lie in [2, 4]");
  }
}

double small_scale_mean(const SmallScaleModel& model) {
  if (const auto* sr = std::get_if<ShadowedRician>(&model)) {
    return 2.0 * sr->b + sr->omega;
  }
  return 1.0;
}

double mean_rx_power(double tx_power_dbw, double antenna_gain_db, double large_scale_gain_db, double distance_km,
                     double alpha) {
  if (!(distance_km > 0.0)) {
    throw domain_error("mean_rx_power: distance must be positive");
  }
  return db_to_linear(tx_power_dbw + antenna_gain_db + large_scale_gain_db) * std::pow(1000.0 * distance_km, -alpha);
}

double antenna_gain(const AntennaModel& model, double off_boresight) {
  if (const auto* iso = std::get_if<Isotropic>(&model)) {
    return iso->eirp_gain_db;
  }
  const auto& d = std::get<Directional>(model);
  return off_boresight <= d.half_beamwidth ? d.main_lobe_gain_db : d.side_lobe_gain_db;
}

double sample_small_scale(const SmallScaleModel& model, RngStream& rng) {
  return std::visit(
      [&rng](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NonFading>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, Rayleigh>) {
          return rng.exponential(1.0);
        } else if constexpr (std::is_same_v<T, Rician>) {
          const double los = std::sqrt(m.k_factor / (m.k_factor + 1.0));
          const double sigma = std::sqrt(0.5 / (m.k_factor + 1.0));
          const double re = los + rng.normal(0.0, sigma);
          const double im = rng.normal(0.0, sigma);
          return re * re + im * im;
        } else {
          // |A e^{i theta} + Z|^2 with A^2 ~ Gamma(m, omega/m) and Z ~ CN(0, 2b).
          const double amplitude = m.omega > 0.0 ? std::sqrt(rng.gamma(m.m, m.omega / m.m)) : 0.0;
          const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
          const double sigma = std::sqrt(m.b);
          const double re = amplitude * std::cos(phase) + rng.normal(0.0, sigma);
          const double im = amplitude * std::sin(phase) + rng.normal(0.0, sigma);
          return re * re + im * im;
        }
      },
      model);
}

double log_hypergeometric_1f1(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0)) {
    throw domain_error("log_hypergeometric_1f1: requires a > 0, b > 0, x >= 0");
  }
  if (x == 0.0) {
    return 0.0;
  }
  // Terms are accumulated relative to the largest term seen so far (log-domain scaling).
  const double log_x = std::log(x);
  double log_term = 0.0;
  double scale = 0.0;
  double scaled_sum = 1.0;
  for (int k = 0; k < kSeriesMaxTerms; ++k) {
    const double log_ratio = std::log(a + k) - std::log(b + k) + log_x - std::log(k + 1.0);
    log_term += log_ratio;
    if (log_term > scale) {
      scaled_sum = scaled_sum * std::exp(scale - log_term) + 1.0;
      scale = log_term;
    } else {
      scaled_sum += std::exp(log_term - scale);
    }
    if (log_ratio < 0.0 && std::exp(log_term - scale) < kSeriesTolerance * scaled_sum) {
      return scale + std::log(scaled_sum);
    }
  }
  // Series did not settle within the term cap: leading-order asymptotic for large x.
  return std::lgamma(b) - std::lgamma(a) + x + (a - b) * log_x;
}

double sr_log_pdf(double w, double b, double m, double omega) {
  if (!(w >= 0.0)) {
    throw domain_error("sr_pdf: power gain must be nonnegative");
  }
  validate(SmallScaleModel{ShadowedRician{b, m, omega}});
  const double two_b = 2.0 * b;
  const double denom = two_b * m + omega;
  const double x = omega * w / (two_b * denom);
  return m * std::log(two_b * m / denom) - std::log(two_b) - w / two_b + log_hypergeometric_1f1(m, 1.0, x);
}

double sr_pdf(double w, double b, double m, double omega) { return std::exp(sr_log_pdf(w, b, m, omega)); }

double free_space_gain_db(double carrier_frequency_ghz) {
  const double wavelength = kSpeedOfLightMPerS / (carrier_frequency_ghz * 1e9);
  return 20.0 * std::log10(wavelength / (4.0 * std::numbers::pi));
}

LargeScaleSample sample_large_scale(const LargeScaleModel& model, double zenith, RngStream& rng) {
  if (!(zenith >= 0.0 && zenith <= std::numbers::pi)) {
    throw domain_error("sample_large_scale: zenith outside [0, pi]");
  }
  const double p_los = model.los_probability(zenith);
  const bool los = rng.uniform() < p_los;
  double gain = los ? rng.normal(0.0, model.shadowing_sigma_db)
                    : rng.normal(-model.nlos_mean_loss_db, model.nlos_sigma_db);
  gain -= model.rain_attenuation_db;
  if (model.include_free_space_term) {
    gain += free_space_gain_db(model.carrier_frequency_ghz);
  }
  return {gain, los};
}

double rx_power_sample(const ChannelSpec& spec, double tx_power_dbw, const LinkGeometry& geometry, RngStream& rng) {
  const LargeScaleSample large = sample_large_scale(spec.large_scale, geometry.zenith, rng);
  const double fading = sample_small_scale(spec.small_scale, rng);
  return fading * mean_rx_power(tx_power_dbw, antenna_gain(spec.antenna, geometry.off_boresight), large.gain_db,
                                geometry.distance_km, spec.path_loss_exponent);
}

}  // namespace leosg
