#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "iongate/gate_params.hpp"
#include "iongate/hamiltonian.hpp"
#include "iongate/hilbert.hpp"
#include "iongate/pulse_schedule.hpp"

namespace iongate {

// Midpoint: one exponential of H sampled at the step midpoint per step.
// Averaged: same splitting, with the drive integrated exactly over the step.
// Fourth: triple-jump composition of Averaged steps (fourth order).
enum class Scheme { Midpoint, Averaged, Fourth };

struct EvolveOptions {
  int steps_per_cycle = 256;  // per trap period 2 pi / nu
  int fock_cutoff = 40;
  Coupling coupling = Coupling::Full;
  Scheme scheme = Scheme::Fourth;
  // When set, the run is repeated with twice the steps and ConvergenceError is
  // thrown if any amplitude moves by more than this.
  std::optional<double> convergence_tolerance;
};

// Integrates i d/dt psi = H(t) psi for the bichromatic Hamiltonian under a
// pulse schedule. States are columns of a matrix on the full space.
//
// The coupling K(phi) is time independent, so in the frame rotating with the
// trap the generator is nu a^dagger a + f(t) K. Steps alternate a diagonal
// kick in the eigenbasis of K with a cached free-oscillator drift.
//
// Caches are filled lazily; use one instance per thread.
class Propagator {
 public:
  Propagator(const GateParams& params, PulseSchedule schedule, EvolveOptions options = {});

  [[nodiscard]] const HilbertSpace& space() const noexcept { return hamiltonian_.space(); }
  [[nodiscard]] const PulseSchedule& schedule() const noexcept { return schedule_; }
  [[nodiscard]] const EvolveOptions& options() const noexcept { return options_; }

  // States at t1 given states at t0, with 0 <= t0 <= t1 <= schedule end.
  [[nodiscard]] Matrix evolve(const Matrix& initial, double t0, double t1) const;

  // States at each of the ascending times, all >= t0.
  [[nodiscard]] std::vector<Matrix> evolve_sampled(const Matrix& initial, double t0,
                                                   const std::vector<double>& times) const;

 private:
  struct Eigenbasis {
    Matrix vectors;
    Eigen::VectorXd values;
  };

  const Eigenbasis& eigenbasis(double phi) const;
  const Matrix& drift(double phi, const Eigenbasis& basis, double duration) const;
  // Advances lab-frame states across [a, b] inside one segment.
  void advance(Matrix& lab, std::size_t segment, double a, double b) const;
  void to_lab(Matrix& states, double t) const;
  void from_lab(Matrix& states, double t) const;

  GateParams params_;
  PulseSchedule schedule_;
  EvolveOptions options_;
  BichromaticHamiltonian hamiltonian_;
  mutable std::map<double, Eigenbasis> bases_;
  mutable std::map<std::pair<double, double>, Matrix> drifts_;
};

// Throws CutoffError if the top two Fock levels hold more than
// kFockGuardThreshold of population. With weights, the check is on the
// weighted mixture of the columns; otherwise on every column separately.
void check_fock_guard(const Matrix& states, const HilbertSpace& space,
                      const Eigen::VectorXd* weights = nullptr);

// Propagates the given columns from t = 0 to t_final with the guard applied.
[[nodiscard]] Matrix evolve_columns(const GateParams& params, const PulseSchedule& schedule,
                                    const Matrix& initial, double t_final,
                                    const EvolveOptions& options = {});

// Full propagator. The Fock guard is applied to the columns that start in the
// motional ground state; columns near the cutoff are truncation artefacts.
[[nodiscard]] Operator evolve_unitary(const GateParams& params, const PulseSchedule& schedule,
                                      double t_final, const EvolveOptions& options = {});

// Columns U |q, 0> for every qubit basis state q.
[[nodiscard]] Matrix evolve_ground_columns(const GateParams& params,
                                           const PulseSchedule& schedule, double t_final,
                                           const EvolveOptions& options = {});

[[nodiscard]] StateVector evolve_state(const Operator& u, const StateVector& psi);
[[nodiscard]] DensityMatrix evolve_state(const Operator& u, const DensityMatrix& rho);

// (2 pi / delta) * k for k = 1..count.
[[nodiscard]] std::vector<double> stroboscopic_times(double delta, int count);

}  // namespace iongate
