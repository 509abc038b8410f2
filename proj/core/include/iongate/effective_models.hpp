#pragma once

#include <functional>
#include <vector>

#include "iongate/gate_params.hpp"
#include "iongate/hilbert.hpp"

namespace iongate {

struct DrivenOscResult {
  Complex alpha;
  double phase = 0.0;
};

// Propagator D(alpha) exp(i phase) of H = i (gamma(t) a^dagger - gamma^*(t) a).
// `samples` are gamma at equally spaced times 0..t (at least two samples);
// both integrals use the trapezoidal rule.
[[nodiscard]] DrivenOscResult driven_oscillator(const std::vector<Complex>& samples, double t);
[[nodiscard]] DrivenOscResult driven_oscillator(const std::function<Complex(double)>& gamma,
                                                double t, int intervals);
// Closed form for gamma(t) = amplitude * exp(i detuning t).
[[nodiscard]] DrivenOscResult driven_oscillator_harmonic(double amplitude, double detuning,
                                                         double t);

// Coefficients of the effective two-ion interactions. Bessel functions are
// evaluated at bessel_argument = 4 Omega / delta.
struct EffectiveCouplings {
  double bessel_argument = 0.0;
  double psi = 0.0;                // bessel_argument * sin(zeta)
  double omega_m = 0.0;            // eta Omega (J1 + J3)
  double omega_ms_residual = 0.0;  // 4 eta^2 Omega^2 J0^2 / (3 delta)
  double theta_rate = 0.0;         // omega_m^2 / epsilon
  double kappa_rate = 0.0;         // omega_ms_residual
  double ms_sideband = 0.0;        // eta Omega (J0 + J2)
  double lambda_rate = 0.0;        // (eta Omega)^2/eps ((J0+J2)^2 + eps/(2 delta) J0^2)
  double chi = 0.0;                // (eta Omega / eps)^2 (J0+J2)^2
  double mu_rate = 0.0;            // 2 eta^2 Omega^2 J1^2 / (3 delta)
};

// Throws ModeError unless params describe a sigma_z gate.
[[nodiscard]] EffectiveCouplings zz_couplings(const GateParams& params);
// Throws ModeError unless params describe a Molmer-Sorensen gate.
[[nodiscard]] EffectiveCouplings ms_couplings(const GateParams& params);
// All coefficients without the gate-type check.
[[nodiscard]] EffectiveCouplings effective_couplings(const GateParams& params);

// theta t* for a sigma_z gate in the weak-drive limit,
// (pi/2) (4 eta Omega^2 / (epsilon delta))^2 sign(epsilon).
[[nodiscard]] double zz_weak_phase(const GateParams& params);

struct Calibration {
  double seed = 0.0;
  double omega = 0.0;
  int iterations = 0;
  double residual = 0.0;  // | N |phase per loop| - pi/8 |
};

inline constexpr double kCalibrationTolerance = 1e-10;
inline constexpr int kCalibrationMaxIterations = 100;
inline constexpr double kCalibrationDamping = 0.5;

// Rabi frequency giving a total geometric phase of pi/8 over `loops` loops.
// The weak-drive seed is refined by damped fixed-point iteration on the full
// Bessel expressions. Throws NoConvergence after kCalibrationMaxIterations.
[[nodiscard]] Calibration calibrate(GateType type, double eta, double epsilon, double nu = 1.0,
                                    int loops = 1);

// Gate detuning that makes the loop time a whole number of modulation
// periods: nu/(2N+1) for sigma_z, nu/(N+1) for Molmer-Sorensen.
[[nodiscard]] double resonance_epsilon(GateType type, int periods, double nu = 1.0);

// alpha(t) of the Molmer-Sorensen displacement.
[[nodiscard]] Complex ms_alpha(const GateParams& params, double t);
// lambda t - chi sin(epsilon t)
[[nodiscard]] double ms_gamma(const GateParams& params, double t);
// lambda(t) and Phi(t) of the sigma_z displacement.
[[nodiscard]] Complex zz_lambda(const GateParams& params, double t);
[[nodiscard]] double zz_phi(const GateParams& params, double t);

// D(alpha S) = sum_k P_k (x) D(alpha s_k) over the spectral projectors of the
// Hermitian qubit operator s_op.
[[nodiscard]] Operator spin_displacement(const Operator& s_op, Complex alpha, int fock_cutoff);

// exp(-i F S_x^(phi)) D(alpha S_{y,psi}) exp(i (lambda t - chi sin eps t) S_{y,psi}^2)
[[nodiscard]] Operator ms_propagator(const GateParams& params, double t, int fock_cutoff = 40);

// exp(-i F S_x^(phi)) D(lambda S_{z,psi}) exp(i Phi S_{z,psi}^2)
//   exp(i (Omega_MS t / 2)(S_x^2 + S_{y,psi}^2))
[[nodiscard]] Operator zz_effective_propagator(const GateParams& params, double t,
                                               int fock_cutoff = 40);

// (Omega_MS/2)(C (S_x^2 - S_{y,psi}^2) + S {S_x, S_{y,psi}}) with
// D(+-4 lambda) = C +- i S.
[[nodiscard]] Operator zz_residual_hamiltonian(const GateParams& params, double t,
                                               int fock_cutoff = 40);

// 2 eta Omega^2 / nu
[[nodiscard]] double weak_sideband_rabi(double eta, double omega, double nu = 1.0);

// sum_n p_n <n|D(alpha)|n> over a thermal distribution: exp(-|alpha|^2 (n_bar + 1/2)).
[[nodiscard]] double thermal_displacement_expectation(Complex alpha, double n_bar);

enum class Observable { PDownDown, PUpUp, ReCoherence, ImCoherence, Fidelity };

// Closed-form two-ion qubit state at time t for the Molmer-Sorensen
// propagator, starting from |down down> with a thermal oscillator. Any zeta.
[[nodiscard]] Matrix ms_thermal_qubit_state(const GateParams& params, double n_bar, double t);

// Trace formula with dephasing envelopes exp(-4|alpha|^2 (n_bar+1/2)) and
// exp(-16|alpha|^2 (n_bar+1/2)). Requires zeta = 0 (ModeError otherwise).
[[nodiscard]] double ms_thermal_observable(const GateParams& params, double n_bar, double t,
                                           Observable observable);

// Explicit three-term population of |down down>. Requires zeta = 0.
[[nodiscard]] double ms_p_down_down(const GateParams& params, double n_bar, double t);

struct GateComparisonRow {
  double sigma_z = 0.0;
  double molmer_sorensen = 0.0;
};

struct GateComparisonTable {
  GateComparisonRow rabi;        // Omega / nu
  GateComparisonRow saturation;  // relative reduction of the gate phase
  GateComparisonRow coupling_ratio;  // kappa/theta and mu/lambda
};

[[nodiscard]] GateComparisonTable gate_comparison_table(double eta, double trap_cycles);

// Relative size of the two corrections to lambda t* at the weak-drive
// Rabi frequency, from the full Bessel expression.
struct SaturationCorrections {
  double bessel = 0.0;            // |(J0+J2)^2 - 1|
  double counter_rotating = 0.0;  // |eps/(2 delta)| J0^2
  double mu_over_lambda = 0.0;
};

[[nodiscard]] SaturationCorrections ms_saturation_corrections(double eta, double trap_cycles,
                                                              double nu = 1.0);

}  // namespace iongate
