#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "experiments/config.hpp"

namespace leosg::experiments {

// Satellite-hop draws per count for one altitude, reusable across noise levels.
class CoverageCurve {
 public:
  CoverageCurve(const ExperimentConfig& config, double altitude_km, const RngStream& rng);

  const std::vector<double>& counts() const { return counts_; }
  std::vector<CoverageEstimate> coverage(double noise_dbw) const;
  // Index of the first maximum of coverage(noise_dbw).
  std::size_t argmax(double noise_dbw) const;

 private:
  const ExperimentConfig* config_;
  double altitude_km_;
  std::vector<double> counts_;
  std::vector<std::vector<LinkDraw>> draws_;
};

// True when coverage at `peak` exceeds the lower grid end by more than three combined
// standard errors, i.e. the location of the maximum is not a Monte Carlo artefact.
bool peak_resolved(const std::vector<CoverageEstimate>& coverage, std::size_t peak);

struct CalibrationResult {
  double noise_dbw = 0.0;
  double achieved_peak_n = 0.0;
  bool converged = false;
  int iterations = 0;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bisection over the noise power inside [guess - window, guess + window] until the
// coverage-optimal count is within one grid step of target_peak_n. When no noise level
// gets there the closest one is returned with converged = false. Throws CalibrationError
// when no probed level yields an interior peak.
CalibrationResult calibrate_noise(double target_peak_n, const CoverageCurve& curve, double noise_guess_dbw,
                                  double window_db);
CalibrationResult calibrate_noise(double target_peak_n, const ExperimentConfig& config);

struct ExperimentResult {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows{};
  std::vector<std::pair<std::string, std::string>> metadata{};
  // Free-form lines appended to the summary report.
  std::vector<std::string> notes{};
  bool validation_failed = false;

  std::string csv() const;
  std::string summary(const ExperimentConfig& config) const;
};

// Fixed CSV headers per experiment.
std::vector<std::string> csv_header(ExperimentKind kind);

std::string format_number(double v);

ExperimentResult run(const ExperimentConfig& config);

// Writes <name>.csv, <name>_summary.txt and <name>_config.cfg into config.output_dir.
// Throws std::ios_base::failure on I/O problems.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& config);

}  // namespace leosg::experiments
