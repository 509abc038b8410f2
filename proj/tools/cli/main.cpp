#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "iongate/errors.hpp"
#include "iongate_runner/config.hpp"
#include "iongate_runner/experiments.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace iongate;

  CLI::App app{"Bichromatic trapped-ion gate experiments"};
  std::string experiment;
  std::string config_path;
  std::string out_path;
  runner::Overrides overrides;
  int steps_per_cycle = 0;
  int fock_cutoff = 0;

  app.add_option("experiment", experiment, "fig3, fig4, fig5, table1, sweep or calibrate")
      ->required()
      ->check(CLI::IsMember(runner::experiment_ids()));
  app.add_option("--config", config_path, "key=value configuration file")->required();
  app.add_option("--out", out_path, "CSV output path (standard output if omitted)");
  auto* steps_opt = app.add_option("--steps-per-cycle", steps_per_cycle,
                                   "integration steps per trap period");
  auto* cutoff_opt = app.add_option("--fock-cutoff", fock_cutoff, "highest retained Fock state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  if (*steps_opt) overrides.steps_per_cycle = steps_per_cycle;
  if (*cutoff_opt) overrides.fock_cutoff = fock_cutoff;

  try {
    const runner::Config config = runner::Config::load(config_path);
    const runner::ExperimentResult result = runner::run_experiment(experiment, config, overrides);
    const std::string csv = runner::to_csv(result, experiment, config.hash());
    if (out_path.empty()) out_path = config.text("out", "");
    if (out_path.empty()) {
      std::cout << csv;
      std::cerr << result.summary << "\n";
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitValidation;
      }
      out << csv;
      std::cout << result.summary << "\n";
    }
    return 0;
  } catch (const CutoffError& e) {
    std::cerr << "numerical guard (fock cutoff): " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical guard (step convergence): " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NoConvergence& e) {
    std::cerr << "numerical guard (calibration): " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NonPSDError& e) {
    std::cerr << "numerical guard (positivity): " << e.what() << "\n";
    return kExitNumerical;
  } catch (const runner::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
}
