#include "experiments/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "leosg/analysis.hpp"
#include "leosg/channel.hpp"
#include "leosg/coverage.hpp"
#include "leosg/point_process.hpp"
#include "leosg/sphere_geom.hpp"

namespace leosg::experiments {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kRe = kEarthRadiusKm;

template <typename Body>
CheckResult timed(const std::string& name, Body body) {
  const auto start = Clock::now();
  CheckResult r = body();
  r.name = name;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

ShellSpec bpp_shell(std::size_t count, double altitude_km) {
  ShellSpec shell;
  shell.kind = Bpp{count};
  shell.altitude_km = altitude_km;
  return shell;
}

}  // namespace

double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}

double ks_distance(std::vector<double>& a, std::vector<double>& b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) {
      ++i;
    }
    while (j < b.size() && b[j] <= x) {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

CheckResult check_contact_distance_law(std::uint64_t seed, std::size_t draws) {
  return timed("contact_distance_law", [&] {
    const ShellSpec shell = bpp_shell(30, 1000.0);
    const DistanceLaw law{shell, kRe};
    const double r_shell = shell.shell_radius();
    const Eigen::Vector3d user = kRe * Eigen::Vector3d::UnitZ();
    RngStream rng(seed, 1);
    std::vector<double> contact(draws);
    const auto start = Clock::now();
    for (auto& c : contact) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& sat : sample_bpp(shell, rng)) {
        nearest = std::min(nearest, (sat.position() - user).norm());
      }
      c = nearest;
    }
    const double lo = r_shell - kRe;
    const double hi = r_shell + kRe;
    const double ks = ks_distance(contact, [&](double d) {
      return 1.0 - contact_distance_ccdf(law, std::clamp(d, lo, hi));
    });
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return CheckResult{{}, ks < 0.01 && seconds < 10.0,
                       fmt::format("KS={:.5f} (< 0.01) over {} draws in {:.2f} s (< 10 s)", ks, draws, seconds)};
  });
}

CheckResult check_availability(std::uint64_t seed, std::size_t draws) {
  return timed("availability", [&] {
    bool ok = true;
    double worst = 0.0;
    std::string detail;
    std::uint64_t sub = 0;
    for (std::size_t n : {10, 30, 100}) {
      for (double altitude : {500.0, 1000.0, 1500.0}) {
        const ShellSpec shell = bpp_shell(n, altitude);
        // A satellite is above the horizon iff its direction's cosine to the zenith is >= r_E / r_S.
        const double horizon_cos = kRe / shell.shell_radius();
        RngStream rng(seed, 100 + sub++);
        std::size_t available = 0;
        for (std::size_t t = 0; t < draws; ++t) {
          const auto sats = sample_bpp(shell, rng);
          available += std::any_of(sats.begin(), sats.end(),
                                   [&](const SurfacePoint& s) { return s.direction().z() >= horizon_cos; });
        }
        const double mc = static_cast<double>(available) / static_cast<double>(draws);
        const double closed = availability_probability(shell);
        const double err = std::abs(mc - closed);
        worst = std::max(worst, err);
        ok = ok && err <= 0.005;
        detail += fmt::format("N={} h={}: {:.4f} vs {:.4f}; ", n, altitude, closed, mc);
      }
    }
    return CheckResult{{}, ok, fmt::format("max |closed - MC| = {:.4f} (<= 0.005); {}", worst, detail)};
  });
}

CheckResult check_shadowed_rician(std::uint64_t seed, std::size_t draws) {
  return timed("shadowed_rician", [&] {
    using boost::math::quadrature::gauss_kronrod;
    struct Params {
      double b, m, omega;
    };
    const Params sets[] = {{0.158, 19.4, 1.29}, {0.126, 10.1, 0.835}, {0.063, 0.739, 8.97e-4}};
    bool ok = true;
    std::string detail;
    std::uint64_t sub = 0;
    for (const auto& p : sets) {
      auto pdf = [&](double w) { return sr_pdf(w, p.b, p.m, p.omega); };
      const double inf = std::numeric_limits<double>::infinity();
      const double norm = gauss_kronrod<double, 61>::integrate(pdf, 0.0, inf, 15, 1e-13);
      const double mean_pdf =
          gauss_kronrod<double, 61>::integrate([&](double w) { return w * pdf(w); }, 0.0, inf, 15, 1e-13);

      RngStream rng(seed, 200 + sub++);
      const SmallScaleModel model = ShadowedRician{p.b, p.m, p.omega};
      std::vector<double> samples(draws);
      for (auto& s : samples) {
        s = sample_small_scale(model, rng);
      }
      double sum = 0.0;
      for (double s : samples) {
        sum += s;
      }
      const double mean = sum / static_cast<double>(draws);
      const double expected_mean = 2.0 * p.b + p.omega;

      // CDF by accumulating quadrature between consecutive sorted samples.
      std::sort(samples.begin(), samples.end());
      double cdf = 0.0;
      double prev = 0.0;
      double ks = 0.0;
      const double n = static_cast<double>(draws);
      for (std::size_t i = 0; i < samples.size(); ++i) {
        cdf += gauss_kronrod<double, 15>::integrate(pdf, prev, samples[i], 0, 0.0);
        prev = samples[i];
        ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - cdf)});
      }
      const bool mean_ok = std::abs(mean - expected_mean) <= 0.01 * expected_mean;
      const bool set_ok = mean_ok && std::abs(norm - 1.0) <= 1e-6 && std::abs(mean_pdf - expected_mean) <= 1e-6 &&
                          ks < 0.01;
      ok = ok && set_ok;
      detail += fmt::format("(b={}, m={}, omega={}): mean {:.4f} vs {:.4f}, int pdf {:.9f}, int w pdf {:.9f}, KS {:.5f}; ",
                            p.b, p.m, p.omega, mean, expected_mean, norm, mean_pdf, ks);
    }
    return CheckResult{{}, ok, detail};
  });
}

CheckResult check_rayleigh_noise_limited(std::uint64_t seed, std::size_t trials) {
  return timed("rayleigh_noise_limited", [&] {
    const double altitude = 1000.0;
    // 15 dBW, isotropic 0 dB, 0 dB large scale, alpha = 2 at 1000 km straight overhead.
    const double mean_signal = std::pow(10.0, 1.5) / (1e6 * 1e6);
    SinrConfig config;
    config.shells = {bpp_shell(1, altitude)};
    config.channel.small_scale = Rayleigh{};
    config.system_type = SystemType::noise_limited;
    const Constellation pinned = {{SurfacePoint(Eigen::Vector3d::UnitZ(), kRe + altitude)}};

    struct Case {
      double threshold_db, snr_db;
    };
    bool ok = true;
    std::string detail;
    std::uint64_t sub = 0;
    for (const Case c : {Case{-10.0, 0.0}, Case{0.0, 3.0}, Case{5.0, 5.0}}) {
      config.threshold_db = c.threshold_db;
      config.noise_dbw = 10.0 * std::log10(mean_signal) - c.snr_db;
      const double expected = std::exp(-std::pow(10.0, c.threshold_db / 10.0) * std::pow(10.0, -c.snr_db / 10.0));
      const CoverageEstimate est =
          coverage_probability(config, Direct{}, trials, RngStream(seed, 300 + sub++), &pinned);
      ok = ok && std::abs(est.probability - expected) <= 0.01;
      detail += fmt::format("T={} dB, S/N={} dB: {:.4f} vs exp(-T N/S) = {:.4f}; ", c.threshold_db, c.snr_db,
                            est.probability, expected);
    }
    return CheckResult{{}, ok, detail};
  });
}

CheckResult check_interference_laplace(std::uint64_t seed, std::size_t trials) {
  return timed("interference_laplace", [&] {
    SinrConfig config;
    config.shells = {bpp_shell(100, 1000.0)};
    const std::vector<double> s_grid = {0.0, 1e9, 1e10, 1e11, 3e11, 1e12, 3e12, 1e13, 1e14};
    const RngStream rng(seed, 400);
    const auto values = interference_laplace(config, s_grid, trials, rng);
    bool monotone = true;
    for (std::size_t i = 1; i < values.size(); ++i) {
      monotone = monotone && values[i] <= values[i - 1];
    }
    config.shells = {bpp_shell(0, 1000.0)};
    const auto empty = interference_laplace(config, s_grid, trials, rng);
    const bool empty_ok = std::all_of(empty.begin(), empty.end(), [](double v) { return v == 1.0; });
    const bool ok = values.front() == 1.0 && monotone && empty_ok;
    return CheckResult{{}, ok,
                       fmt::format("L(0)={} monotone={} zero-constellation all ones={} L(1e12)={:.4f}", values.front(),
                                   monotone, empty_ok, values[5])};
  });
}

CheckResult check_geometry(std::uint64_t seed, std::size_t cases) {
  return timed("geometry", [&] {
    RngStream rng(seed, 500);
    double worst_round_trip = 0.0;
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < cases; ++i) {
      const double r_shell = kRe + rng.uniform(200.0, 3000.0);
      const double slant = rng.uniform(r_shell - kRe, r_shell + kRe);
      const double back = slant_from_polar(kRe, r_shell, polar_angle_from_slant(kRe, r_shell, slant));
      worst_round_trip = std::max(worst_round_trip, std::abs(back - slant) / slant);

      const SurfacePoint ground(Eigen::Vector3d::UnitZ(), kRe);
      const SurfacePoint sat = sample_uniform_sphere(rng, r_shell);
      const double d = (sat.position() - ground.position()).norm();
      const bool visible = is_visible(ground, sat, kRe);
      const bool in_range = d <= max_slant_range(kRe, r_shell);
      const bool above = zenith_angle(kRe, r_shell, d) <= 0.5 * std::numbers::pi;
      mismatches += !(visible == in_range && in_range == above);
    }
    return CheckResult{{}, worst_round_trip < 1e-9 && mismatches == 0,
                       fmt::format("max round-trip relative error {:.3g} (< 1e-9); visibility mismatches {} / {}",
                                   worst_round_trip, mismatches, cases)};
  });
}

CheckResult check_nearest_ground_distance(std::uint64_t seed, std::size_t draws) {
  return timed("nearest_ground_distance", [&] {
    const GroundField field{3.0, GroundNodeKind::gateway};
    RngStream rng(seed, 600);
    std::vector<double> samples(draws);
    for (auto& s : samples) {
      s = sample_nearest_ground_distance(field, rng);
    }
    const double ks =
        ks_distance(samples, [&](double d) { return 1.0 - std::exp(-std::numbers::pi * field.density_per_km2 * d * d); });
    const double median = samples[draws / 2];
    const double expected_median = std::sqrt(std::log(2.0) / (3.0 * std::numbers::pi));
    return CheckResult{{}, ks < 0.01 && std::abs(median - expected_median) < 0.005,
                       fmt::format("KS={:.5f} (< 0.01); median {:.4f} vs {:.4f}", ks, median, expected_median)};
  });
}

CheckResult check_nearest_neighbor_law(std::uint64_t seed, std::size_t draws) {
  return timed("nearest_neighbor_law", [&] {
    const ShellSpec shell = bpp_shell(100, 1000.0);
    const double d = 1000.0;
    RngStream rng(seed, 700);
    std::size_t beyond = 0;
    for (std::size_t t = 0; t < draws; ++t) {
      const auto sats = sample_bpp(shell, rng);
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t i = 1; i < sats.size(); ++i) {
        nearest = std::min(nearest, (sats[i].position() - sats[0].position()).norm());
      }
      beyond += nearest > d;
    }
    const double mc = static_cast<double>(beyond) / static_cast<double>(draws);
    const double closed = nearest_neighbor_ccdf(shell, d);
    return CheckResult{{}, std::abs(mc - closed) <= 0.01,
                       fmt::format("P(nn > 1000 km): closed {:.4f} vs MC {:.4f} (+-0.01)", closed, mc)};
  });
}

CheckResult check_poisson_counts(std::uint64_t seed, std::size_t draws) {
  return timed("poisson_counts", [&] {
    ShellSpec shell;
    shell.kind = Ppp{std::nullopt, 100.0};
    RngStream rng(seed, 800);
    std::vector<double> counts(draws);
    for (auto& c : counts) {
      c = static_cast<double>(sample_ppp(shell, rng).size());
    }
    double mean = 0.0;
    for (double c : counts) {
      mean += c;
    }
    mean /= static_cast<double>(draws);
    double var = 0.0;
    for (double c : counts) {
      var += (c - mean) * (c - mean);
    }
    var /= static_cast<double>(draws - 1);
    return CheckResult{{}, std::abs(mean - 100.0) <= 1.0 && std::abs(var - 100.0) <= 5.0,
                       fmt::format("count mean {:.3f} (100 +- 1), variance {:.3f} (100 +- 5)", mean, var)};
  });
}

std::vector<CheckResult> run_oracle_suite(std::uint64_t seed) {
  return {check_geometry(seed),
          check_contact_distance_law(seed),
          check_availability(seed),
          check_nearest_neighbor_law(seed),
          check_shadowed_rician(seed),
          check_rayleigh_noise_limited(seed),
          check_interference_laplace(seed),
          check_nearest_ground_distance(seed),
          check_poisson_counts(seed)};
}

}  // namespace leosg::experiments
