#include "iongate/sequences.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "iongate/errors.hpp"
#include "iongate/operators.hpp"

namespace iongate {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix ion_pi_pulse(PauliAxis axis) {
  // -i sigma_axis
  Matrix m = Matrix::Zero(2, 2);
  if (axis == PauliAxis::X) {
    m(0, 1) = -kI;
    m(1, 0) = -kI;
  } else {
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
  }
  return m;
}

// Multiplies each Fock component by exp(sign i nu t n).
void rotate_trap(Matrix& states, const HilbertSpace& space, double nu_t, double sign) {
  const Eigen::Index m = space.motion_dim();
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    const auto n = static_cast<double>(i % m);
    if (n != 0.0) states.row(i) *= std::polar(1.0, sign * nu_t * n);
  }
}

}  // namespace

PulseSchedule shaped_envelope(double omega_max, double total_cycles, double ramp_cycles,
                              double nu) {
  if (!(omega_max >= 0.0)) throw GeometryError("omega_max must be non-negative");
  if (!(nu > 0.0)) throw GeometryError("nu must be positive");
  if (!(ramp_cycles > 0.0) || !(2.0 * ramp_cycles <= total_cycles)) {
    throw GeometryError("shaped envelope needs 0 < 2 * ramp_cycles <= total_cycles");
  }
  const double period = 2.0 * kPi / nu;
  std::vector<PulseSegment> segments;
  segments.push_back({ramp_cycles * period, Envelope::RampUp});
  const double flat = total_cycles - 2.0 * ramp_cycles;
  if (flat > 0.0) segments.push_back({flat * period, Envelope::Flat});
  segments.push_back({ramp_cycles * period, Envelope::RampDown});
  return PulseSchedule(std::move(segments), omega_max);
}

PulseSchedule two_pulse_sign_flip(const PulseSchedule& base, GateType type, SignFlip flip) {
  if (!base.is_shaped()) throw GeometryError("sign-flip base pulse must start and end at zero");
  std::vector<PulseSegment> second = base.segments();
  for (PulseSegment& seg : second) {
    switch (flip) {
      case SignFlip::ZetaShift:
        if (type == GateType::Unconstrained) throw ModeError("zeta shift needs a gate type");
        seg.zeta_offset += type == GateType::SigmaZ ? 0.5 * kPi : kPi;
        break;
      case SignFlip::PhiShift:
        seg.phi_offset += kPi;
        break;
      case SignFlip::RabiNegation:
        seg.amplitude_scale = -seg.amplitude_scale;
        break;
    }
  }
  return base.then(PulseSchedule(std::move(second), base.peak_rabi()));
}

Matrix pi_pulse(const EchoSpec& echo) {
  return kron(ion_pi_pulse(echo.ion1), ion_pi_pulse(echo.ion2));
}

double GateSequence::total_duration() const {
  double total = 0.0;
  for (const SequenceStep& step : steps) {
    if (const auto* schedule = std::get_if<PulseSchedule>(&step)) {
      total += schedule->total_duration();
    }
  }
  return total;
}

GateSequence spin_echo_zz(const PulseSchedule& gate_half, const EchoSpec& echo) {
  const QubitPulse flip{pi_pulse(echo)};
  GateSequence sequence;
  sequence.steps = {gate_half, flip, gate_half};
  if (echo.placement == EchoPlacement::BetweenAndAfter) sequence.steps.emplace_back(flip);
  return sequence;
}

Matrix run_sequence(const GateParams& params, const GateSequence& sequence, const Matrix& initial,
                    const EvolveOptions& options) {
  const HilbertSpace space(params.num_ions, options.fock_cutoff);
  if (initial.rows() != space.dim()) throw DimensionError("run_sequence: wrong state dimension");
  Matrix states = initial;
  double clock = 0.0;
  for (const SequenceStep& step : sequence.steps) {
    if (const auto* pulse = std::get_if<QubitPulse>(&step)) {
      if (pulse->unitary.rows() != space.qubit_dim()) {
        throw DimensionError("qubit pulse does not match the number of ions");
      }
      states = embed_qubits(Operator(qubit_layout(params.num_ions), pulse->unitary),
                            options.fock_cutoff)
                   .matrix() *
               states;
      continue;
    }
    const auto& schedule = std::get<PulseSchedule>(step);
    GateParams shifted = params;
    shifted.zeta += params.delta * clock;
    const Propagator propagator(shifted, schedule, options);
    rotate_trap(states, space, params.nu * clock, -1.0);
    states = propagator.evolve(states, 0.0, schedule.total_duration());
    rotate_trap(states, space, params.nu * clock, 1.0);
    clock += schedule.total_duration();
  }
  check_fock_guard(states, space);
  return states;
}

}  // namespace iongate
