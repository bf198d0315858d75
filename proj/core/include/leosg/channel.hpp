#pragma once

#include <functional>
#include <variant>

#include "leosg/rng.hpp"

namespace leosg {

double db_to_linear(double db);
double linear_to_db(double linear);

struct Isotropic {
  double eirp_gain_db = 0.0;
};

struct Directional {
  double main_lobe_gain_db = 0.0;
  double side_lobe_gain_db = 0.0;
  double half_beamwidth = 0.1;  // radians
};

using AntennaModel = std::variant<Isotropic, Directional>;

// 1 at or above the horizon (zenith <= pi/2), 0 below.
double step_los_probability(double zenith);

struct LargeScaleModel {
  double carrier_frequency_ghz = 20.0;
  double shadowing_sigma_db = 0.0;
  double rain_attenuation_db = 0.0;
  std::function<double(double)> los_probability = step_los_probability;
  double nlos_mean_loss_db = 20.0;
  double nlos_sigma_db = 0.0;
  // Adds the reference free-space gain (c / (4 pi f))^2 at 1 m.
  bool include_free_space_term = false;
};

struct NonFading {};
struct Rayleigh {};
struct Rician {
  double k_factor = 0.0;
};
// b: half the average scatter power, m: Nakagami shape of the LoS amplitude,
// omega: average LoS power.
struct ShadowedRician {
  double b = 0.158;
  double m = 19.4;
  double omega = 1.29;
};

using SmallScaleModel = std::variant<NonFading, Rayleigh, Rician, ShadowedRician>;

struct ChannelSpec {
  AntennaModel antenna = Isotropic{};
  LargeScaleModel large_scale;
  SmallScaleModel small_scale = ShadowedRician{};
  // Positive; received power falls off as distance^-alpha.
  double path_loss_exponent = 2.0;

  void validate() const;
};

void validate(const AntennaModel& antenna);
void validate(const LargeScaleModel& model);
void validate(const SmallScaleModel& model);

// Mean of the small-scale power gain.
double small_scale_mean(const SmallScaleModel& model);

// Received power in watts; distance in km, converted to metres before applying distance^-alpha.
double mean_rx_power(double tx_power_dbw, double antenna_gain_db, double large_scale_gain_db, double distance_km,
                     double alpha);

double antenna_gain(const AntennaModel& model, double off_boresight);

double sample_small_scale(const SmallScaleModel& model, RngStream& rng);

// Kummer's confluent hypergeometric function 1F1(a; b; x) for a > 0, b > 0, x >= 0, in log form.
double log_hypergeometric_1f1(double a, double b, double x);

// Density of the Shadowed-Rician power gain.
double sr_pdf(double w, double b, double m, double omega);
double sr_log_pdf(double w, double b, double m, double omega);

double free_space_gain_db(double carrier_frequency_ghz);

struct LargeScaleSample {
  double gain_db;
  bool los;
};

LargeScaleSample sample_large_scale(const LargeScaleModel& model, double zenith, RngStream& rng);

struct LinkGeometry {
  double distance_km;
  double zenith;
  double off_boresight = 0.0;
};

double rx_power_sample(const ChannelSpec& spec, double tx_power_dbw, const LinkGeometry& geometry, RngStream& rng);

}  // namespace leosg
