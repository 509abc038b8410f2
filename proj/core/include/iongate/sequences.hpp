#pragma once

#include <variant>
#include <vector>

#include "iongate/gate_params.hpp"
#include "iongate/hilbert.hpp"
#include "iongate/propagator.hpp"
#include "iongate/pulse_schedule.hpp"

namespace iongate {

// cos^2 rise over ramp_cycles trap periods, flat top, cos^2 fall, with peak
// Rabi frequency omega_max. Throws GeometryError unless
// 0 < 2 ramp_cycles <= total_cycles.
[[nodiscard]] PulseSchedule shaped_envelope(double omega_max, double total_cycles,
                                            double ramp_cycles, double nu = 1.0);

// How the coupling sign is reversed for the second pulse.
//   ZetaShift:    zeta -> zeta + pi (Molmer-Sorensen) or zeta + pi/2 (sigma_z)
//   PhiShift:     phi -> phi + pi
//   RabiNegation: Omega -> -Omega
enum class SignFlip { ZetaShift, PhiShift, RabiNegation };

// base followed by a copy of base with the coupling sign reversed. base must
// start and end at zero amplitude (GeometryError otherwise).
[[nodiscard]] PulseSchedule two_pulse_sign_flip(const PulseSchedule& base, GateType type,
                                                SignFlip flip = SignFlip::ZetaShift);

enum class PauliAxis { X, Y };
enum class EchoPlacement { Between, BetweenAndAfter };

struct EchoSpec {
  PauliAxis ion1 = PauliAxis::X;
  PauliAxis ion2 = PauliAxis::X;
  EchoPlacement placement = EchoPlacement::BetweenAndAfter;
};

// exp(-i pi/2 sigma_a) (x) exp(-i pi/2 sigma_b) on two qubits.
[[nodiscard]] Matrix pi_pulse(const EchoSpec& echo);

// Instantaneous qubit unitary inside a sequence.
struct QubitPulse {
  Matrix unitary;
};

using SequenceStep = std::variant<PulseSchedule, QubitPulse>;

struct GateSequence {
  std::vector<SequenceStep> steps;

  [[nodiscard]] double total_duration() const;
};

// [half, pi, half, pi] (or [half, pi, half] for EchoPlacement::Between).
[[nodiscard]] GateSequence spin_echo_zz(const PulseSchedule& gate_half, const EchoSpec& echo);

// Runs the sequence on the given full-space columns with one continuous
// clock: a schedule starting at time t0 sees the drive phase delta t0 and the
// trap rotation of t0, exactly as if it were part of one long schedule.
// The Fock guard is applied to the result.
[[nodiscard]] Matrix run_sequence(const GateParams& params, const GateSequence& sequence,
                                  const Matrix& initial, const EvolveOptions& options = {});

}  // namespace iongate
