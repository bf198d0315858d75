#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "experiments/config.hpp"
#include "experiments/runner.hpp"
#include "leosg/errors.hpp"
#include "leosg/parallel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace leosg::experiments;

  CLI::App app{"Stochastic-geometry simulator for LEO satellite coverage and latency"};
  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> out_dir;
  std::size_t workers = 0;
  app.add_option("experiment", experiment, "fig3 | fig4 | fig5 | custom | validate")->required();
  app.add_option("--config", config_path, "Config file (defaults to the built-in preset)");
  app.add_option("--seed", seed, "Master seed override");
  app.add_option("--trials", trials, "Trials per grid point override");
  app.add_option("--out", out_dir, "Output directory override");
  app.add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  ExperimentConfig config;
  try {
    const ExperimentKind kind = parse_experiment_kind(experiment);
    if (config_path.empty()) {
      config = preset(kind);
    } else {
      config = load_config(config_path);
      if (config.experiment != kind) {
        throw leosg::config_error(fmt::format("config file is for '{}' but '{}' was requested",
                                              to_string(config.experiment), experiment));
      }
    }
    if (seed) {
      config.master_seed = *seed;
    }
    if (trials) {
      config.trials = *trials;
    }
    if (out_dir) {
      config.output_dir = *out_dir;
    }
    config.validate();
  } catch (const leosg::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }

  leosg::set_worker_count(workers);
  try {
    const ExperimentResult result = run(config);
    write_outputs(result, config);
    std::cout << result.summary(config);
    return result.validation_failed ? kExitValidation : kExitOk;
  } catch (const leosg::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CalibrationError& e) {
    std::cerr << "calibration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
