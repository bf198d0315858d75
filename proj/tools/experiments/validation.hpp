#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace leosg::experiments {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// One-sample Kolmogorov-Smirnov distance of `samples` (sorted in place) against `cdf`.
double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance; both inputs are sorted in place.
double ks_distance(std::vector<double>& a, std::vector<double>& b);

// Each check compares the library against an independent oracle (Monte Carlo
// frequency, quadrature or closed-form arithmetic) at the stated sample sizes.
CheckResult check_contact_distance_law(std::uint64_t seed, std::size_t draws = 100000);
CheckResult check_availability(std::uint64_t seed, std::size_t draws = 100000);
CheckResult check_shadowed_rician(std::uint64_t seed, std::size_t draws = 100000);
CheckResult check_rayleigh_noise_limited(std::uint64_t seed, std::size_t trials = 100000);
CheckResult check_interference_laplace(std::uint64_t seed, std::size_t trials = 2000);
CheckResult check_geometry(std::uint64_t seed, std::size_t cases = 10000);
CheckResult check_nearest_ground_distance(std::uint64_t seed, std::size_t draws = 100000);
CheckResult check_nearest_neighbor_law(std::uint64_t seed, std::size_t draws = 100000);
CheckResult check_poisson_counts(std::uint64_t seed, std::size_t draws = 10000);

// Everything above, in order.
std::vector<CheckResult> run_oracle_suite(std::uint64_t seed);

}  // namespace leosg::experiments
