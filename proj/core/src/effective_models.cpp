#include "iongate/effective_models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "iongate/bessel.hpp"
#include "iongate/errors.hpp"
#include "iongate/hamiltonian.hpp"
#include "iongate/operators.hpp"

namespace iongate {

namespace {

constexpr double kPi = std::numbers::pi;

void require_epsilon(const GateParams& params) {
  if (params.epsilon == 0.0) throw std::invalid_argument("effective model needs epsilon != 0");
}

void require_ms(const GateParams& params) {
  if (params.type != GateType::MolmerSorensen) {
    throw ModeError("operation needs a Molmer-Sorensen gate");
  }
  params.validate();
  require_epsilon(params);
}

void require_zz(const GateParams& params) {
  if (params.type != GateType::SigmaZ) throw ModeError("operation needs a sigma_z gate");
  params.validate();
  require_epsilon(params);
}

// Spin axes after the optical phase rotation: S_x^(phi), and S_{y,psi} and
// S_{z,psi} built on S_y^(phi).
struct Axes {
  Matrix sx;
  Matrix sy_psi;
  Matrix sz_psi;
};

Axes spin_axes(int num_ions, double phi, double psi) {
  const Matrix sx = collective_spin(num_ions, SpinComponent::X, phi).matrix();
  const Matrix sy = collective_spin(num_ions, SpinComponent::Y, phi).matrix();
  const Matrix sz = collective_spin(num_ions, SpinComponent::Z).matrix();
  return {sx, std::cos(psi) * sy + std::sin(psi) * sz, std::cos(psi) * sz - std::sin(psi) * sy};
}

Operator qubit_unitary(const Matrix& h, double angle, int num_ions, int fock_cutoff) {
  return embed_qubits(Operator(qubit_layout(num_ions), hermitian_expm(h, kI * angle)),
                      fock_cutoff);
}

Matrix two_ion_projector(Eigen::Index bra, Eigen::Index ket) {
  Matrix m = Matrix::Zero(4, 4);
  m(ket, bra) = 1.0;
  return m;
}

Matrix observable_matrix(Observable observable) {
  constexpr Eigen::Index dd = 0;
  constexpr Eigen::Index uu = 3;
  switch (observable) {
    case Observable::PDownDown:
      return two_ion_projector(dd, dd);
    case Observable::PUpUp:
      return two_ion_projector(uu, uu);
    case Observable::ReCoherence:
      return 0.5 * (two_ion_projector(dd, uu) + two_ion_projector(uu, dd));
    case Observable::ImCoherence:
      return (two_ion_projector(dd, uu) - two_ion_projector(uu, dd)) / (2.0 * kI);
    case Observable::Fidelity: {
      Vector psi = Vector::Zero(4);
      psi(dd) = 1.0 / std::sqrt(2.0);
      psi(uu) = -kI / std::sqrt(2.0);
      return psi * psi.adjoint();
    }
  }
  throw std::invalid_argument("unknown observable");
}

void require_two_ion_ms_closed_form(const GateParams& params) {
  require_ms(params);
  if (params.num_ions != 2) throw ModeError("closed-form thermal observables need two ions");
  if (params.zeta != 0.0) throw ModeError("closed-form thermal observables need zeta = 0");
}

}  // namespace

DrivenOscResult driven_oscillator(const std::vector<Complex>& samples, double t) {
  if (samples.size() < 2) throw std::invalid_argument("driven_oscillator needs >= 2 samples");
  const double h = t / static_cast<double>(samples.size() - 1);
  Complex alpha = 0.0;
  double phase = 0.0;
  // d alpha = gamma dt, d phase = Im(gamma alpha^*) dt, both by the trapezoid rule.
  double prev_integrand = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    alpha += 0.5 * h * (samples[k - 1] + samples[k]);
    const double integrand = std::imag(samples[k] * std::conj(alpha));
    phase += 0.5 * h * (prev_integrand + integrand);
    prev_integrand = integrand;
  }
  return {alpha, phase};
}

DrivenOscResult driven_oscillator(const std::function<Complex(double)>& gamma, double t,
                                  int intervals) {
  if (intervals < 1) throw std::invalid_argument("driven_oscillator needs >= 1 interval");
  std::vector<Complex> samples(static_cast<std::size_t>(intervals) + 1);
  for (int k = 0; k <= intervals; ++k) samples[static_cast<std::size_t>(k)] = gamma(t * k / intervals);
  return driven_oscillator(samples, t);
}

DrivenOscResult driven_oscillator_harmonic(double amplitude, double detuning, double t) {
  if (detuning == 0.0) return {Complex(amplitude * t, 0.0), 0.0};
  const double r = amplitude / detuning;
  const Complex alpha = kI * r * (1.0 - std::polar(1.0, detuning * t));
  return {alpha, r * r * (detuning * t - std::sin(detuning * t))};
}

EffectiveCouplings effective_couplings(const GateParams& params) {
  if (!(params.delta > 0.0)) throw std::invalid_argument("effective couplings need delta > 0");
  EffectiveCouplings c;
  const double eta = params.eta;
  const double omega = params.omega;
  const double delta = params.delta;
  const double eps = params.epsilon;
  const double x = 4.0 * omega / delta;
  const double j0 = bessel_j(0, x);
  const double j1 = bessel_j(1, x);
  const double j2 = bessel_j(2, x);
  const double j3 = bessel_j(3, x);
  c.bessel_argument = x;
  c.psi = x * std::sin(params.zeta);
  c.omega_m = eta * omega * (j1 + j3);
  c.omega_ms_residual = 4.0 * eta * eta * omega * omega * j0 * j0 / (3.0 * delta);
  c.kappa_rate = c.omega_ms_residual;
  c.ms_sideband = eta * omega * (j0 + j2);
  c.mu_rate = 2.0 * eta * eta * omega * omega * j1 * j1 / (3.0 * delta);
  if (eps != 0.0) {
    const double s = j0 + j2;
    c.theta_rate = c.omega_m * c.omega_m / eps;
    c.lambda_rate = eta * eta * omega * omega / eps * (s * s + eps / (2.0 * delta) * j0 * j0);
    c.chi = eta * eta * omega * omega / (eps * eps) * s * s;
  }
  return c;
}

EffectiveCouplings zz_couplings(const GateParams& params) {
  if (params.type != GateType::SigmaZ) throw ModeError("zz_couplings needs a sigma_z gate");
  params.validate();
  return effective_couplings(params);
}

EffectiveCouplings ms_couplings(const GateParams& params) {
  if (params.type != GateType::MolmerSorensen) {
    throw ModeError("ms_couplings needs a Molmer-Sorensen gate");
  }
  params.validate();
  return effective_couplings(params);
}

double zz_weak_phase(const GateParams& params) {
  require_epsilon(params);
  const double r = 4.0 * params.eta * params.omega * params.omega / (params.epsilon * params.delta);
  return 0.5 * kPi * r * r * (params.epsilon > 0.0 ? 1.0 : -1.0);
}

Calibration calibrate(GateType type, double eta, double epsilon, double nu, int loops) {
  if (!(eta > 0.0)) throw std::invalid_argument("calibrate needs eta > 0");
  if (!(nu > 0.0)) throw std::invalid_argument("calibrate needs nu > 0");
  if (!(std::abs(epsilon) > 0.0 && std::abs(epsilon) < nu)) {
    throw std::invalid_argument("calibrate needs 0 < |epsilon| < nu");
  }
  if (loops < 1) throw std::invalid_argument("calibrate needs loops >= 1");
  if (type == GateType::Unconstrained) throw ModeError("calibrate needs a gate type");

  const double target = kPi / 8.0;
  const double n = loops;
  const double eps = std::abs(epsilon);
  const bool ms = type == GateType::MolmerSorensen;
  const double delta = ms ? nu - epsilon : 0.5 * (nu - epsilon);

  Calibration result;
  // Weak-drive seeds: per-loop phase pi/(8N).
  result.seed = ms ? eps / (4.0 * eta * std::sqrt(n)) : std::sqrt(eps * delta / (8.0 * eta * std::sqrt(n)));

  GateParams p = ms ? GateParams::molmer_sorensen(eta, result.seed, epsilon, 0.0, loops)
                    : GateParams::sigma_z(eta, result.seed, epsilon, 0.0, loops);
  p.nu = nu;
  p.delta = delta;

  auto total_phase = [&](double omega) {
    p.omega = omega;
    const EffectiveCouplings c = effective_couplings(p);
    const double rate = ms ? c.lambda_rate : c.theta_rate;
    return n * std::abs(rate) * 2.0 * kPi / eps;
  };
  // Ratio of the full coupling to its weak-drive form; the fixed point is
  // omega = seed / sqrt(ratio) for both gate types.
  auto ratio = [&](double omega) {
    const double x = 4.0 * omega / delta;
    if (ms) {
      const double s = bessel_j(0, x) + bessel_j(2, x);
      const double j0 = bessel_j(0, x);
      return s * s + epsilon / (2.0 * delta) * j0 * j0;
    }
    return (bessel_j(1, x) + bessel_j(3, x)) / (0.5 * x);
  };

  double omega = result.seed;
  if (4.0 * omega / delta > 8.0) throw NoConvergence("calibration seed is past the Bessel range");
  for (int it = 1; it <= kCalibrationMaxIterations; ++it) {
    const double r = ratio(omega);
    if (!(r > 0.0)) throw NoConvergence("calibration left the monotone Bessel regime");
    const double next = result.seed / std::sqrt(r);
    omega = (1.0 - kCalibrationDamping) * omega + kCalibrationDamping * next;
    if (4.0 * omega / delta > 8.0) {
      throw NoConvergence("calibration drove the Bessel argument past 8");
    }
    const double residual = std::abs(total_phase(omega) - target);
    if (residual < kCalibrationTolerance) {
      result.omega = omega;
      result.iterations = it;
      result.residual = residual;
      return result;
    }
  }
  throw NoConvergence("calibration residual stayed above 1e-10 after " +
                      std::to_string(kCalibrationMaxIterations) + " iterations");
}

double resonance_epsilon(GateType type, int periods, double nu) {
  if (periods < 1) throw std::invalid_argument("resonance_epsilon needs N >= 1");
  switch (type) {
    case GateType::SigmaZ:
      return nu / (2.0 * periods + 1.0);
    case GateType::MolmerSorensen:
      return nu / (periods + 1.0);
    case GateType::Unconstrained:
      break;
  }
  throw ModeError("resonance_epsilon needs a gate type");
}

Complex ms_alpha(const GateParams& params, double t) {
  require_epsilon(params);
  const EffectiveCouplings c = effective_couplings(params);
  return c.ms_sideband / params.epsilon * std::polar(1.0, -params.zeta) *
         (std::polar(1.0, params.epsilon * t) - 1.0);
}

double ms_gamma(const GateParams& params, double t) {
  require_epsilon(params);
  const EffectiveCouplings c = effective_couplings(params);
  return c.lambda_rate * t - c.chi * std::sin(params.epsilon * t);
}

Complex zz_lambda(const GateParams& params, double t) {
  require_epsilon(params);
  const EffectiveCouplings c = effective_couplings(params);
  return -kI * std::polar(1.0, -2.0 * params.zeta) * (c.omega_m / params.epsilon) *
         (std::polar(1.0, params.epsilon * t) - 1.0);
}

double zz_phi(const GateParams& params, double t) {
  require_epsilon(params);
  const EffectiveCouplings c = effective_couplings(params);
  const double r = c.omega_m / params.epsilon;
  return r * r * (params.epsilon * t - std::sin(params.epsilon * t));
}

Operator spin_displacement(const Operator& s_op, Complex alpha, int fock_cutoff) {
  if (s_op.layout().sector != Sector::Qubits) {
    throw DimensionError("spin_displacement needs a qubit operator");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s_op.matrix());
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Matrix& vectors = solver.eigenvectors();
  const Layout full{Sector::Full, s_op.layout().num_ions, fock_cutoff};
  Matrix total = Matrix::Zero(full.dim(), full.dim());
  Eigen::Index k = 0;
  while (k < values.size()) {
    Eigen::Index end = k + 1;
    while (end < values.size() && std::abs(values(end) - values(k)) < 1e-9) ++end;
    const Matrix block = vectors.middleCols(k, end - k);
    const double s = values.segment(k, end - k).mean();
    total += kron(block * block.adjoint(), displacement(alpha * s, fock_cutoff).matrix());
    k = end;
  }
  return {full, std::move(total)};
}

Operator ms_propagator(const GateParams& params, double t, int fock_cutoff) {
  require_ms(params);
  const EffectiveCouplings c = effective_couplings(params);
  const Axes axes = spin_axes(params.num_ions, params.phi, c.psi);
  const int m = params.num_ions;
  const Operator carrier = qubit_unitary(axes.sx, -carrier_phase_F(params, t), m, fock_cutoff);
  const Operator disp =
      spin_displacement(Operator(qubit_layout(m), axes.sy_psi), ms_alpha(params, t), fock_cutoff);
  const Operator phase = qubit_unitary(axes.sy_psi * axes.sy_psi, ms_gamma(params, t), m, fock_cutoff);
  return carrier * disp * phase;
}

Operator zz_effective_propagator(const GateParams& params, double t, int fock_cutoff) {
  require_zz(params);
  const EffectiveCouplings c = effective_couplings(params);
  const Axes axes = spin_axes(params.num_ions, params.phi, c.psi);
  const int m = params.num_ions;
  const Operator carrier = qubit_unitary(axes.sx, -carrier_phase_F(params, t), m, fock_cutoff);
  const Operator disp =
      spin_displacement(Operator(qubit_layout(m), axes.sz_psi), zz_lambda(params, t), fock_cutoff);
  const Operator phase =
      qubit_unitary(axes.sz_psi * axes.sz_psi, zz_phi(params, t), m, fock_cutoff);
  const Operator residual =
      qubit_unitary(axes.sx * axes.sx + axes.sy_psi * axes.sy_psi,
                    0.5 * c.omega_ms_residual * t, m, fock_cutoff);
  return carrier * disp * phase * residual;
}

Operator zz_residual_hamiltonian(const GateParams& params, double t, int fock_cutoff) {
  require_zz(params);
  const EffectiveCouplings c = effective_couplings(params);
  const Axes axes = spin_axes(params.num_ions, params.phi, c.psi);
  const Complex beta = 4.0 * zz_lambda(params, t);
  const Matrix plus = displacement(beta, fock_cutoff).matrix();
  const Matrix minus = displacement(-beta, fock_cutoff).matrix();
  const Matrix cos_part = 0.5 * (plus + minus);
  const Matrix sin_part = (plus - minus) / (2.0 * kI);
  const Matrix diff = axes.sx * axes.sx - axes.sy_psi * axes.sy_psi;
  const Matrix anti = axes.sx * axes.sy_psi + axes.sy_psi * axes.sx;
  Matrix h = 0.5 * c.omega_ms_residual * (kron(diff, cos_part) + kron(anti, sin_part));
  return {Layout{Sector::Full, params.num_ions, fock_cutoff}, std::move(h)};
}

double weak_sideband_rabi(double eta, double omega, double nu) {
  if (eta < 0.0 || omega < 0.0 || !(nu > 0.0)) {
    throw std::invalid_argument("weak_sideband_rabi needs non-negative eta, omega and nu > 0");
  }
  return 2.0 * eta * omega * omega / nu;
}

double thermal_displacement_expectation(Complex alpha, double n_bar) {
  if (n_bar < 0.0) throw std::invalid_argument("mean phonon number must be non-negative");
  return std::exp(-std::norm(alpha) * (n_bar + 0.5));
}

Matrix ms_thermal_qubit_state(const GateParams& params, double n_bar, double t) {
  require_ms(params);
  if (n_bar < 0.0) throw std::invalid_argument("mean phonon number must be non-negative");
  const EffectiveCouplings c = effective_couplings(params);
  const Axes axes = spin_axes(params.num_ions, params.phi, c.psi);
  const Eigen::Index dim = axes.sx.rows();

  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  const Matrix g = hermitian_expm(axes.sy_psi * axes.sy_psi, kI * ms_gamma(params, t));
  rho = g * rho * g.adjoint();

  Eigen::SelfAdjointEigenSolver<Matrix> solver(axes.sy_psi);
  const Matrix& v = solver.eigenvectors();
  const Eigen::VectorXd& s = solver.eigenvalues();
  Matrix in_basis = v.adjoint() * rho * v;
  const double a2 = std::norm(ms_alpha(params, t));
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double ds = s(j) - s(k);
      in_basis(j, k) *= std::exp(-a2 * ds * ds * (n_bar + 0.5));
    }
  }
  rho = v * in_basis * v.adjoint();
  const Matrix carrier = hermitian_expm(axes.sx, -kI * carrier_phase_F(params, t));
  return carrier * rho * carrier.adjoint();
}

double ms_thermal_observable(const GateParams& params, double n_bar, double t,
                             Observable observable) {
  require_two_ion_ms_closed_form(params);
  if (n_bar < 0.0) throw std::invalid_argument("mean phonon number must be non-negative");
  const Axes axes = spin_axes(2, params.phi, 0.0);
  const Matrix sz = collective_spin(2, SpinComponent::Z).matrix();
  const Matrix sx2 = axes.sx * axes.sx;
  const Matrix sz2 = sz * sz;
  const double a2 = std::norm(ms_alpha(params, t));
  const double e1 = std::exp(-4.0 * a2 * (n_bar + 0.5));
  const double e2 = std::exp(-16.0 * a2 * (n_bar + 0.5));
  const Matrix dephased = ((sz2 + sx2) - 4.0 * e1 * sz + e2 * (sz2 - sx2)) / 16.0;
  const Matrix v = hermitian_expm(axes.sx, -kI * carrier_phase_F(params, t)) *
                   hermitian_expm(axes.sy_psi * axes.sy_psi, kI * ms_gamma(params, t));
  return (v.adjoint() * observable_matrix(observable) * v * dephased).trace().real();
}

double ms_p_down_down(const GateParams& params, double n_bar, double t) {
  require_two_ion_ms_closed_form(params);
  if (n_bar < 0.0) throw std::invalid_argument("mean phonon number must be non-negative");
  const double f = carrier_phase_F(params, t);
  const double gamma = ms_gamma(params, t);
  const double a2 = std::norm(ms_alpha(params, t));
  const double c2f = std::cos(2.0 * f);
  return (2.0 + c2f * c2f) / 8.0 +
         0.5 * c2f * std::cos(4.0 * gamma) * std::exp(-4.0 * a2 * (n_bar + 0.5)) +
         c2f * c2f / 8.0 * std::exp(-16.0 * a2 * (n_bar + 0.5));
}

GateComparisonTable gate_comparison_table(double eta, double trap_cycles) {
  if (!(eta > 0.0) || !(trap_cycles > 0.0)) {
    throw std::invalid_argument("gate_comparison_table needs positive inputs");
  }
  const double en = eta * trap_cycles;
  GateComparisonTable table;
  table.rabi = {1.0 / (4.0 * std::sqrt(en)), 1.0 / (4.0 * en)};
  table.saturation = {2.0 / (3.0 * en), 1.0 / (4.0 * en * en)};
  table.coupling_ratio = {8.0 * eta / 3.0, 1.0 / (6.0 * en * en * trap_cycles)};
  return table;
}

SaturationCorrections ms_saturation_corrections(double eta, double trap_cycles, double nu) {
  if (!(eta > 0.0) || !(trap_cycles > 1.0)) {
    throw std::invalid_argument("ms_saturation_corrections needs eta > 0 and trap_cycles > 1");
  }
  const double eps = nu / trap_cycles;
  const double omega = eps / (4.0 * eta);
  GateParams p = GateParams::molmer_sorensen(eta, omega, eps);
  p.nu = nu;
  p.delta = nu - eps;
  const double x = 4.0 * omega / p.delta;
  const double s = bessel_j(0, x) + bessel_j(2, x);
  const double j0 = bessel_j(0, x);
  const EffectiveCouplings c = effective_couplings(p);
  return {std::abs(s * s - 1.0), std::abs(eps / (2.0 * p.delta)) * j0 * j0,
          std::abs(c.mu_rate / c.lambda_rate)};
}

}  // namespace iongate
