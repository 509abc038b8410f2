#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iongate/gate_params.hpp"
#include "iongate/hilbert.hpp"
#include "iongate/propagator.hpp"
#include "iongate/sequences.hpp"
#include "iongate_runner/config.hpp"

namespace iongate::runner {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Overrides {
  std::optional<int> steps_per_cycle;
  std::optional<int> fock_cutoff;
};

struct ExperimentResult {
  Table table;
  std::string summary;
  int fock_cutoff = 0;
  int steps_per_cycle = 0;
};

[[nodiscard]] const std::vector<std::string>& experiment_ids();

// Runs one experiment. Unknown keys and invalid values raise ConfigError or
// std::invalid_argument; numerical guards raise iongate errors.
[[nodiscard]] ExperimentResult run_experiment(const std::string& id, const Config& config,
                                              const Overrides& overrides = {});

// CSV text: provenance comment lines, a header row, and one row per grid
// point with numbers printed to 12 significant digits.
[[nodiscard]] std::string to_csv(const ExperimentResult& result, const std::string& id,
                                 std::uint64_t config_hash);

[[nodiscard]] std::string format_number(double value);

// Building blocks shared with the acceptance suite.

struct Fig3Sample {
  double t = 0.0;
  double p_dd = 0.0;
  double p_uu = 0.0;
  double re_coh = 0.0;
  double im_coh = 0.0;
  double fidelity = 0.0;
};

[[nodiscard]] Fig3Sample fig3_sample(double t, const Matrix& qubit_rho);
// Effective-propagator state averaged over the thermal distribution.
[[nodiscard]] std::vector<Fig3Sample> fig3_closed_form(const GateParams& params, double n_bar,
                                                       const std::vector<double>& times);
// Direct integration of |dd> (x) thermal, one column per Fock state whose
// weight is at least weight_floor (weights renormalised).
[[nodiscard]] std::vector<Fig3Sample> fig3_simulation(const GateParams& params, double n_bar,
                                                      const std::vector<double>& times,
                                                      const EvolveOptions& options,
                                                      double weight_floor = 1e-10);

struct Fig4Setup {
  double eta = 0.05;
  double epsilon = 0.04;
  double omega_max = 0.167;
  double omega_constant = 0.147;
  double total_cycles = 50.0;
  double ramp_cycles = 8.0;
  SignFlip flip = SignFlip::ZetaShift;
};

// exp(i sign(epsilon) (pi/8) S_y^2) applied to a two-qubit state.
[[nodiscard]] Vector ideal_ms_image(const Vector& qubit_state, double epsilon);

// Infidelity of the final qubit state from |uu, 0> against the ideal gate
// image of |uu>. shaped selects the two-pulse cos^2 scheme, otherwise one
// constant pulse of the same total length.
[[nodiscard]] double fig4_infidelity(const Fig4Setup& setup, double zeta, bool shaped,
                                     const EvolveOptions& options);

struct Fig5Point {
  double zeta = 0.0;
  double d_model = 0.0;
  double d_ideal_psi = 0.0;
  double d_ideal_y = 0.0;
  double d_pert = 0.0;
};

// Distances between the exact gate channel at t = loops 2 pi/|eps| and the
// effective propagator, the psi-rotated ideal gate, the unrotated ideal gate
// and the weak-drive perturbative gate.
[[nodiscard]] Fig5Point fig5_point(const GateParams& params, const EvolveOptions& options);

}  // namespace iongate::runner
