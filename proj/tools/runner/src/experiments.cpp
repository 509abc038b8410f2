#include "iongate_runner/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "iongate/analysis.hpp"
#include "iongate/effective_models.hpp"
#include "iongate/hamiltonian.hpp"
#include "iongate/operators.hpp"
#include "iongate/version.hpp"

namespace iongate::runner {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

EvolveOptions read_options(const Config& config, const Overrides& overrides, int default_cutoff,
                           Coupling default_coupling) {
  EvolveOptions options;
  options.steps_per_cycle = overrides.steps_per_cycle.value_or(config.integer("steps_per_cycle", 256));
  options.fock_cutoff = overrides.fock_cutoff.value_or(config.integer("n_max", default_cutoff));
  if (options.steps_per_cycle < 64) throw ConfigError("steps_per_cycle must be at least 64");
  if (options.fock_cutoff < 1) throw ConfigError("n_max must be at least 1");
  const std::string coupling =
      config.text("coupling", default_coupling == Coupling::Full ? "full" : "lamb_dicke");
  if (coupling == "full") {
    options.coupling = Coupling::Full;
  } else if (coupling == "lamb_dicke") {
    options.coupling = Coupling::LambDicke;
  } else {
    throw ConfigError("coupling must be 'full' or 'lamb_dicke', got '" + coupling + "'");
  }
  const std::string scheme = config.text("scheme", "fourth");
  if (scheme == "fourth") {
    options.scheme = Scheme::Fourth;
  } else if (scheme == "midpoint") {
    options.scheme = Scheme::Midpoint;
  } else if (scheme == "averaged") {
    options.scheme = Scheme::Averaged;
  } else {
    throw ConfigError("scheme must be 'fourth', 'midpoint' or 'averaged', got '" + scheme + "'");
  }
  return options;
}

GateType read_gate_type(const Config& config, const std::string& fallback) {
  const std::string gate = config.text("gate", fallback);
  if (gate == "ms") return GateType::MolmerSorensen;
  if (gate == "zz") return GateType::SigmaZ;
  throw ConfigError("gate must be 'ms' or 'zz', got '" + gate + "'");
}

struct GateDefaults {
  double eta;
  double omega;
  double epsilon;
  int loops;
};

GateParams read_gate(const Config& config, GateType type, const GateDefaults& defaults) {
  if (config.number("nu", 1.0) != 1.0) throw ConfigError("nu is fixed to 1");
  const double eta = config.number("eta", defaults.eta);
  const double epsilon = config.number("epsilon", defaults.epsilon);
  const int loops = config.integer("loops", defaults.loops);
  double omega = defaults.omega;
  if (config.text("omega", "") == "calibrate") {
    omega = calibrate(type, eta, epsilon, 1.0, loops).omega;
  } else {
    omega = config.number("omega", defaults.omega);
  }
  const double zeta = config.number("zeta", 0.0);
  GateParams p = type == GateType::MolmerSorensen
                     ? GateParams::molmer_sorensen(eta, omega, epsilon, zeta, loops)
                     : GateParams::sigma_z(eta, omega, epsilon, zeta, loops);
  p.phi = config.number("phi", 0.0);
  p.validate();
  if (p.epsilon == 0.0) throw ConfigError("epsilon must be non-zero");
  return p;
}

Matrix qubit_gate(const Matrix& generator, double angle) {
  return hermitian_expm(generator * generator, kI * angle);
}

Matrix reduced_state(const Matrix& columns, const HilbertSpace& space,
                     const Eigen::VectorXd& weights) {
  const Eigen::Index q = space.qubit_dim();
  const Eigen::Index m = space.motion_dim();
  Matrix rho = Matrix::Zero(q, q);
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    const Eigen::Map<const Matrix, 0, Eigen::OuterStride<>> block(
        columns.col(j).data(), m, q, Eigen::OuterStride<>(m));
    // block(n, a) = <a, n|psi_j>
    rho += weights(j) * (block.transpose() * block.conjugate());
  }
  return rho;
}

std::string fixed4(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::string sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  return buf;
}

ExperimentResult run_fig3(const Config& config, const Overrides& overrides) {
  const GateParams p = read_gate(config, GateType::MolmerSorensen, {0.1, 0.0885, 0.05, 2});
  const double n_bar = config.number("n_bar", 2.0);
  const std::string source = config.text("source", "closed_form");
  const EvolveOptions options = read_options(config, overrides, 60, Coupling::LambDicke);
  const double weight_floor = config.number("weight_floor", 1e-10);
  const double t_end = p.gate_time();
  const std::string grid = config.text("time_grid", "stroboscopic");
  std::vector<double> times;
  if (grid == "stroboscopic") {
    const auto count = static_cast<int>(std::floor(t_end * p.delta / (2.0 * kPi) + 1e-9));
    times = stroboscopic_times(p.delta, count);
  } else {
    times = parse_grid(grid);
    if (times.front() < 0.0 || times.back() > t_end * (1.0 + 1e-12)) {
      throw ConfigError("time_grid must lie within [0, loops * 2 pi / |epsilon|]");
    }
  }
  std::vector<Fig3Sample> samples;
  if (source == "closed_form") {
    samples = fig3_closed_form(p, n_bar, times);
  } else if (source == "simulation") {
    samples = fig3_simulation(p, n_bar, times, options, weight_floor);
  } else {
    throw ConfigError("source must be 'closed_form' or 'simulation', got '" + source + "'");
  }
  config.check_unused();

  ExperimentResult result;
  result.fock_cutoff = options.fock_cutoff;
  result.steps_per_cycle = options.steps_per_cycle;
  result.table.columns = {"nu_t", "p_dd", "p_uu", "re_coh", "im_coh", "fidelity"};
  const Fig3Sample* best = nullptr;
  for (const Fig3Sample& s : samples) {
    result.table.rows.push_back({s.t * p.nu, s.p_dd, s.p_uu, s.re_coh, s.im_coh, s.fidelity});
    if (best == nullptr || s.fidelity > best->fidelity) best = &s;
  }
  result.summary = "fig3 (" + source + "): " + std::to_string(samples.size()) +
                   " samples, peak fidelity " + fixed4(best->fidelity) + " at nu_t " +
                   fixed4(best->t * p.nu);
  return result;
}

ExperimentResult run_fig4(const Config& config, const Overrides& overrides) {
  Fig4Setup setup;
  setup.eta = config.number("eta", setup.eta);
  setup.epsilon = config.number("epsilon", setup.epsilon);
  setup.omega_max = config.number("omega_max", setup.omega_max);
  setup.omega_constant = config.number("omega_constant", setup.omega_constant);
  setup.total_cycles = config.number("total_cycles", setup.total_cycles);
  setup.ramp_cycles = config.number("ramp_cycles", setup.ramp_cycles);
  const std::string flip = config.text("sign_flip", "zeta");
  if (flip == "zeta") {
    setup.flip = SignFlip::ZetaShift;
  } else if (flip == "phi") {
    setup.flip = SignFlip::PhiShift;
  } else if (flip == "rabi") {
    setup.flip = SignFlip::RabiNegation;
  } else {
    throw ConfigError("sign_flip must be 'zeta', 'phi' or 'rabi', got '" + flip + "'");
  }
  const std::vector<double> zetas = config.grid("zeta_grid", "0:2*pi:33:open");
  const EvolveOptions options = read_options(config, overrides, 40, Coupling::Full);
  config.check_unused();

  ExperimentResult result;
  result.fock_cutoff = options.fock_cutoff;
  result.steps_per_cycle = options.steps_per_cycle;
  result.table.columns = {"zeta", "infidelity_shaped", "infidelity_constant"};
  double shaped_max = 0.0;
  double const_min = 1.0;
  double const_max = 0.0;
  for (double zeta : zetas) {
    const double shaped = fig4_infidelity(setup, zeta, true, options);
    const double constant = fig4_infidelity(setup, zeta, false, options);
    shaped_max = std::max(shaped_max, shaped);
    const_min = std::min(const_min, constant);
    const_max = std::max(const_max, constant);
    result.table.rows.push_back({zeta, shaped, constant});
  }
  result.summary = "fig4: max shaped infidelity " + sci(shaped_max) + ", constant infidelity in [" +
                   sci(const_min) + ", " + sci(const_max) + "]";
  return result;
}

ExperimentResult run_fig5(const Config& config, const Overrides& overrides) {
  Config local = config;
  if (!local.has("omega")) local.set("omega", "0.221");
  const GateParams base = read_gate(local, GateType::MolmerSorensen, {0.05, 0.221, 0.04, 1});
  const std::vector<double> zetas = local.grid("zeta_grid", "0:pi:17");
  const EvolveOptions options = read_options(local, overrides, 40, Coupling::Full);
  local.check_unused();

  ExperimentResult result;
  result.fock_cutoff = options.fock_cutoff;
  result.steps_per_cycle = options.steps_per_cycle;
  result.table.columns = {"zeta", "d_exact_vs_eq27", "d_exact_vs_ideal_psi", "d_exact_vs_ideal_y",
                          "d_exact_vs_pert"};
  double worst_model = 0.0;
  for (double zeta : zetas) {
    GateParams p = base;
    p.zeta = zeta;
    const Fig5Point point = fig5_point(p, options);
    worst_model = std::max(worst_model, point.d_model);
    result.table.rows.push_back(
        {zeta, point.d_model, point.d_ideal_psi, point.d_ideal_y, point.d_pert});
  }
  result.summary = "fig5: omega " + fixed4(base.omega) + ", max distance to effective propagator " +
                   sci(worst_model);
  return result;
}

ExperimentResult run_table1(const Config& config, const Overrides& overrides) {
  const double eta = config.number("eta", 0.1);
  const double cycles = config.number("trap_cycles", 100.0);
  const EvolveOptions options = read_options(config, overrides, 40, Coupling::Full);
  config.check_unused();
  const GateComparisonTable table = gate_comparison_table(eta, cycles);

  ExperimentResult result;
  result.fock_cutoff = options.fock_cutoff;
  result.steps_per_cycle = options.steps_per_cycle;
  result.table.columns = {"quantity", "sigma_z", "molmer_sorensen"};
  result.table.rows.push_back({std::string("rabi_frequency"), table.rabi.sigma_z,
                               table.rabi.molmer_sorensen});
  result.table.rows.push_back({std::string("saturation_strength"), table.saturation.sigma_z,
                               table.saturation.molmer_sorensen});
  result.table.rows.push_back({std::string("coupling_ratio"), table.coupling_ratio.sigma_z,
                               table.coupling_ratio.molmer_sorensen});
  result.summary = "table1: eta " + format_number(eta) + ", trap cycles " + format_number(cycles) +
                   ", rabi zz " + fixed4(table.rabi.sigma_z) + " ms " +
                   fixed4(table.rabi.molmer_sorensen);
  return result;
}

ExperimentResult run_sweep(const Config& config, const Overrides& overrides) {
  const GateType type = read_gate_type(config, "ms");
  const bool ms = type == GateType::MolmerSorensen;
  const GateParams base = read_gate(config, type, {0.05, 0.2, 0.04, 1});
  const std::vector<double> omegas = config.grid("omega_grid", "0.18:0.26:9");
  const EvolveOptions options = read_options(config, overrides, 40, Coupling::Full);
  config.check_unused();

  ExperimentResult result;
  result.fock_cutoff = options.fock_cutoff;
  result.steps_per_cycle = options.steps_per_cycle;
  result.table.columns = {"omega", "model_phase", "d_exact_vs_model", "d_exact_vs_ideal"};
  const HilbertSpace space(2, options.fock_cutoff);
  double best_distance = 2.0;
  double best_omega = 0.0;
  for (double omega : omegas) {
    GateParams p = base;
    p.omega = omega;
    p.validate();
    const double t = p.gate_time();
    const EffectiveCouplings c = effective_couplings(p);
    const double phase = (ms ? c.lambda_rate : c.theta_rate) * t;
    const Matrix columns = evolve_ground_columns(p, PulseSchedule::constant(t), t, options);
    const QuantumProcess exact = channel_from_ground_columns(columns, space);
    const Operator model = ms ? ms_propagator(p, t, options.fock_cutoff)
                              : zz_effective_propagator(p, t, options.fock_cutoff);
    const Matrix axis = rotated_spin(2, ms ? RotatedAxis::Y : RotatedAxis::Z, c.psi).matrix();
    const QuantumProcess ideal =
        channel_from_qubit_unitary(qubit_gate(axis, sign_of(p.epsilon) * kPi / 8.0));
    const double d_model = process_distance(exact, channel_from_unitary(model));
    const double d_ideal = process_distance(exact, ideal);
    if (d_ideal < best_distance) {
      best_distance = d_ideal;
      best_omega = omega;
    }
    result.table.rows.push_back({omega, phase, d_model, d_ideal});
  }
  result.summary = "sweep: closest to the ideal gate at omega " + fixed4(best_omega) +
                   " (distance " + sci(best_distance) + ")";
  return result;
}

ExperimentResult run_calibrate(const Config& config, const Overrides& overrides) {
  const GateType type = read_gate_type(config, "ms");
  const double eta = config.number("eta", 0.05);
  const double epsilon = config.number("epsilon", 0.04);
  const int loops = config.integer("loops", 1);
  const EvolveOptions options = read_options(config, overrides, 40, Coupling::Full);
  config.check_unused();
  const Calibration cal = calibrate(type, eta, epsilon, 1.0, loops);

  ExperimentResult result;
  result.fock_cutoff = options.fock_cutoff;
  result.steps_per_cycle = options.steps_per_cycle;
  result.table.columns = {"gate", "seed", "omega", "iterations", "residual"};
  result.table.rows.push_back({std::string(type == GateType::MolmerSorensen ? "ms" : "zz"),
                               cal.seed, cal.omega, static_cast<double>(cal.iterations),
                               cal.residual});
  result.summary = std::string("calibrate ") + (type == GateType::MolmerSorensen ? "ms" : "zz") +
                   ": seed " + fixed4(cal.seed) + " converged " + fixed4(cal.omega) + " after " +
                   std::to_string(cal.iterations) + " iterations";
  return result;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"fig3",  "fig4",  "fig5",
                                               "table1", "sweep", "calibrate"};
  return ids;
}

ExperimentResult run_experiment(const std::string& id, const Config& config,
                                const Overrides& overrides) {
  const std::string declared = config.text("experiment", id);
  if (declared != id) {
    throw ConfigError("config declares experiment '" + declared + "' but '" + id + "' was requested");
  }
  (void)config.text("out", "");
  if (id == "fig3") return run_fig3(config, overrides);
  if (id == "fig4") return run_fig4(config, overrides);
  if (id == "fig5") return run_fig5(config, overrides);
  if (id == "table1") return run_table1(config, overrides);
  if (id == "sweep") return run_sweep(config, overrides);
  if (id == "calibrate") return run_calibrate(config, overrides);
  throw ConfigError("unknown experiment '" + id + "'");
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_csv(const ExperimentResult& result, const std::string& id,
                   std::uint64_t config_hash) {
  std::ostringstream out;
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash));
  out << "# experiment=" << id << " config_hash=" << hash << "\n";
  out << "# modules operator-core=" << kVersion << " dynamics=" << kVersion
      << " effective-models=" << kVersion << " analysis=" << kVersion
      << " sequences=" << kVersion << " cli=" << kVersion << "\n";
  out << "# n_max=" << result.fock_cutoff << " steps_per_cycle=" << result.steps_per_cycle
      << "\n";
  for (std::size_t k = 0; k < result.table.columns.size(); ++k) {
    out << (k ? "," : "") << result.table.columns[k];
  }
  out << "\n";
  for (const auto& row : result.table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ",";
      if (const auto* number = std::get_if<double>(&row[k])) {
        out << format_number(*number);
      } else {
        out << std::get<std::string>(row[k]);
      }
    }
    out << "\n";
  }
  return out.str();
}

Fig3Sample fig3_sample(double t, const Matrix& rho) {
  Fig3Sample s;
  s.t = t;
  s.p_dd = rho(0, 0).real();
  s.p_uu = rho(3, 3).real();
  s.re_coh = rho(0, 3).real();
  s.im_coh = rho(0, 3).imag();
  s.fidelity = state_fidelity(rho, max_entangled_target().amplitudes());
  return s;
}

std::vector<Fig3Sample> fig3_closed_form(const GateParams& params, double n_bar,
                                         const std::vector<double>& times) {
  std::vector<Fig3Sample> samples;
  samples.reserve(times.size());
  for (double t : times) samples.push_back(fig3_sample(t, ms_thermal_qubit_state(params, n_bar, t)));
  return samples;
}

std::vector<Fig3Sample> fig3_simulation(const GateParams& params, double n_bar,
                                        const std::vector<double>& times,
                                        const EvolveOptions& options, double weight_floor) {
  const DensityMatrix thermal = thermal_state(n_bar, options.fock_cutoff);
  const HilbertSpace space(params.num_ions, options.fock_cutoff);
  std::vector<Eigen::Index> levels;
  for (Eigen::Index n = 0; n < space.motion_dim(); ++n) {
    if (thermal.matrix()(n, n).real() >= weight_floor) levels.push_back(n);
  }
  Matrix initial = Matrix::Zero(space.dim(), static_cast<Eigen::Index>(levels.size()));
  Eigen::VectorXd weights(static_cast<Eigen::Index>(levels.size()));
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    initial(space.index(0, levels[j]), col) = 1.0;
    weights(col) = thermal.matrix()(levels[j], levels[j]).real();
  }
  weights /= weights.sum();

  const double t_end = times.empty() ? 0.0 : times.back();
  const Propagator propagator(params, PulseSchedule::constant(std::max(t_end, 1e-12)), options);
  const std::vector<Matrix> states = propagator.evolve_sampled(initial, 0.0, times);
  std::vector<Fig3Sample> samples;
  samples.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    check_fock_guard(states[k], space, &weights);
    samples.push_back(fig3_sample(times[k], reduced_state(states[k], space, weights)));
  }
  return samples;
}

Vector ideal_ms_image(const Vector& qubit_state, double epsilon) {
  const Matrix sy = collective_spin(2, SpinComponent::Y).matrix();
  return qubit_gate(sy, sign_of(epsilon) * kPi / 8.0) * qubit_state;
}

double fig4_infidelity(const Fig4Setup& setup, double zeta, bool shaped,
                       const EvolveOptions& options) {
  const double total = setup.total_cycles * 2.0 * kPi;
  GateParams p = GateParams::molmer_sorensen(setup.eta, setup.omega_constant, setup.epsilon, zeta);
  const PulseSchedule schedule =
      shaped ? two_pulse_sign_flip(
                   shaped_envelope(setup.omega_max, 0.5 * setup.total_cycles, setup.ramp_cycles),
                   GateType::MolmerSorensen, setup.flip)
             : PulseSchedule::constant(total);
  const HilbertSpace space(2, options.fock_cutoff);
  Matrix initial = Matrix::Zero(space.dim(), 1);
  initial(space.index(3, 0), 0) = 1.0;
  const Matrix final_state = evolve_columns(p, schedule, initial, total, options);
  const Matrix rho = reduced_state(final_state, space, Eigen::VectorXd::Ones(1));
  Vector up_up = Vector::Zero(4);
  up_up(3) = 1.0;
  return 1.0 - state_fidelity(rho, ideal_ms_image(up_up, setup.epsilon));
}

Fig5Point fig5_point(const GateParams& params, const EvolveOptions& options) {
  const double t = params.gate_time();
  const HilbertSpace space(params.num_ions, options.fock_cutoff);
  const Matrix columns = evolve_ground_columns(params, PulseSchedule::constant(t), t, options);
  const QuantumProcess exact = channel_from_ground_columns(columns, space);
  const EffectiveCouplings c = ms_couplings(params);
  const double s = sign_of(params.epsilon);
  const Matrix sy = collective_spin(2, SpinComponent::Y).matrix();
  const Matrix sy_psi = rotated_spin(2, RotatedAxis::Y, c.psi).matrix();
  const double pert = 2.0 * kPi * params.eta * params.eta * params.omega * params.omega /
                      (params.epsilon * params.epsilon);
  Fig5Point point;
  point.zeta = params.zeta;
  point.d_model = process_distance(exact, channel_from_unitary(ms_propagator(params, t, options.fock_cutoff)));
  point.d_ideal_psi = process_distance(exact, channel_from_qubit_unitary(qubit_gate(sy_psi, s * kPi / 8.0)));
  point.d_ideal_y = process_distance(exact, channel_from_qubit_unitary(qubit_gate(sy, s * kPi / 8.0)));
  point.d_pert = process_distance(exact, channel_from_qubit_unitary(qubit_gate(sy, pert)));
  return point;
}

}  // namespace iongate::runner
