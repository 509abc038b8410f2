#pragma once

#include "iongate/gate_params.hpp"
#include "iongate/hilbert.hpp"
#include "iongate/pulse_schedule.hpp"

namespace iongate {

enum class Coupling { Full, LambDicke };

// H(t) = f(t) R(t) K(phi) R(t)^dagger with
//   f(t)   = 2 Omega(t) cos(delta t + zeta)
//   K(phi) = e^{-i phi} S_+ (x) E + h.c.,  E = exp(i eta (a + a^dagger))
//   R(t)   = exp(i nu t a^dagger a)
// Lamb-Dicke coupling replaces E by 1 + i eta (a + a^dagger).
class BichromaticHamiltonian {
 public:
  BichromaticHamiltonian(const GateParams& params, int fock_cutoff, Coupling coupling);

  [[nodiscard]] const HilbertSpace& space() const noexcept { return space_; }
  [[nodiscard]] const GateParams& params() const noexcept { return params_; }
  [[nodiscard]] Coupling coupling() const noexcept { return coupling_; }

  // Time-independent coupling K(phi).
  [[nodiscard]] Matrix generator(double phi) const;

  [[nodiscard]] Operator at(double t, double rabi, double zeta, double phi) const;
  [[nodiscard]] Operator at(double t, const PulseSchedule& schedule) const;

 private:
  GateParams params_;
  HilbertSpace space_;
  Coupling coupling_;
  Matrix raising_;  // S_+ (x) E
};

[[nodiscard]] Operator bichromatic_hamiltonian(const GateParams& params, double t,
                                               double envelope_value, bool lamb_dicke,
                                               int fock_cutoff = 40);

// Integrated carrier drive F(t) = int_0^t 2 Omega(t') cos(delta t' + zeta) dt'.
// Without a schedule the amplitude is the constant params.omega.
[[nodiscard]] double carrier_phase_F(const GateParams& params, double t,
                                     const PulseSchedule* schedule = nullptr);

}  // namespace iongate
