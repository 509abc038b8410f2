#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "iongate/analysis.hpp"
#include "iongate/errors.hpp"
#include "iongate/hamiltonian.hpp"
#include "iongate/operators.hpp"
#include "iongate/propagator.hpp"
#include "iongate/sequences.hpp"

namespace iongate {
namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Carrier-only parameters with no detuning relation.
GateParams carrier(double omega, double delta, double zeta, double phi) {
  GateParams p;
  p.eta = 0.0;
  p.omega = omega;
  p.delta = delta;
  p.epsilon = 0.0;
  p.zeta = zeta;
  p.phi = phi;
  p.type = GateType::Unconstrained;
  return p;
}

TEST(GateParams, Factories) {
  const GateParams ms = GateParams::molmer_sorensen(0.05, 0.2, 0.04);
  EXPECT_DOUBLE_EQ(ms.delta, 0.96);
  EXPECT_NO_THROW(ms.validate());
  const GateParams zz = GateParams::sigma_z(0.1, 0.15, 0.04);
  EXPECT_DOUBLE_EQ(zz.delta, 0.48);
  EXPECT_NEAR(zz.gate_time(), 2.0 * kPi / 0.04, 1e-12);
}

TEST(GateParams, Validation) {
  GateParams p = GateParams::molmer_sorensen(0.05, 0.2, 0.04);
  p.delta = 0.9;
  EXPECT_THROW(p.validate(), ModeError);
  p = GateParams::molmer_sorensen(-0.1, 0.2, 0.04);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = GateParams::molmer_sorensen(0.05, -0.2, 0.04);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = GateParams::molmer_sorensen(0.05, 0.2, 1.0);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = GateParams::molmer_sorensen(0.05, 0.2, 0.04, 0.0, 0);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = GateParams::sigma_z(0.05, 0.2, 0.04);
  p.delta = 0.96;
  EXPECT_THROW(p.validate(), ModeError);
}

TEST(PulseSchedule, Geometry) {
  EXPECT_THROW(PulseSchedule({{0.0, Envelope::Constant}}), GeometryError);
  EXPECT_THROW(PulseSchedule({{1.0, Envelope::Constant, 0.5}}), GeometryError);
  EXPECT_THROW(PulseSchedule({{1.0, Envelope::RampUp}, {1.0, Envelope::RampUp}}), GeometryError);
  EXPECT_THROW(PulseSchedule({}), GeometryError);
  const PulseSchedule s({{1.0, Envelope::RampUp}, {2.0, Envelope::Flat}, {1.0, Envelope::RampDown}});
  EXPECT_DOUBLE_EQ(s.total_duration(), 4.0);
  EXPECT_TRUE(s.is_shaped());
  EXPECT_FALSE(PulseSchedule::constant(3.0).is_shaped());
  EXPECT_EQ(s.segment_index(1.0), 1u);
  EXPECT_EQ(s.segment_index(4.0), 2u);
  EXPECT_NEAR(s.envelope(0.5), 0.5, 1e-15);
  EXPECT_NEAR(s.rabi(2.0, 0.3), 0.3, 1e-15);
}

TEST(PulseSchedule, ModulatedIntegralMatchesQuadrature) {
  const PulseSchedule s({{3.0, Envelope::RampUp}, {2.0, Envelope::Flat, -1.0, 0.4},
                         {3.0, Envelope::RampDown, -1.0, 0.4}});
  const double delta = 0.96;
  const double zeta = 0.7;
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = s.segment_start(i) + 0.1;
    const double b = s.boundaries()[i + 1] - 0.2;
    const int n = 20000;
    const double h = (b - a) / n;
    double simpson = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double t = a + k * h;
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      const PulseSegment& seg = s.segments()[i];
      simpson += w * s.envelope(t) * seg.amplitude_scale *
                 std::cos(delta * t + zeta + seg.zeta_offset);
    }
    simpson *= h / 3.0;
    EXPECT_NEAR(s.modulated_integral(i, a, b, delta, zeta), simpson, 1e-12);
  }
}

TEST(Hamiltonian, CarrierLimit) {
  const GateParams p = carrier(0.2, 0.9, 0.3, 0.6);
  const double t = 1.7;
  const Operator h = bichromatic_hamiltonian(p, t, 1.0, true, 5);
  const Matrix expected = 2.0 * 0.2 * std::cos(0.9 * t + 0.3) *
                          kron(collective_spin(2, SpinComponent::X, 0.6).matrix(),
                               Matrix::Identity(6, 6));
  EXPECT_LT(max_abs(h.matrix() - expected), 1e-14);
}

TEST(Hamiltonian, HermitianAtRandomTimes) {
  testing::Generator gen(21);
  for (int k = 0; k < 20; ++k) {
    GateParams p = GateParams::molmer_sorensen(0.1, 0.2, 0.04, gen.uniform(0, 2 * kPi));
    p.phi = gen.uniform(0, 2 * kPi);
    const bool ld = k % 2 == 0;
    const Operator h = bichromatic_hamiltonian(p, gen.uniform(0, 100), gen.unit(), ld, 12);
    EXPECT_LT(h.hermiticity_error(), 1e-12);
  }
}

TEST(Hamiltonian, FullVersusLambDicke) {
  // The first neglected term is second order in eta.
  auto gap = [](double eta) {
    const GateParams p = GateParams::molmer_sorensen(eta, 0.1, 0.04, 0.2);
    double worst = 0.0;
    for (double t : {0.0, 0.3, 5.0, 17.1}) {
      const Matrix full = bichromatic_hamiltonian(p, t, 1.0, false, 12).matrix();
      const Matrix ld = bichromatic_hamiltonian(p, t, 1.0, true, 12).matrix();
      worst = std::max(worst, max_abs(full - ld));
    }
    return worst;
  };
  const double coarse = gap(0.01);
  const double fine = gap(0.005);
  EXPECT_LT(coarse, 1e-3);
  EXPECT_GT(fine, 0.0);
  EXPECT_NEAR(coarse / fine, 4.0, 0.2);
}

TEST(Hamiltonian, PeriodicWithoutGateDetuning) {
  for (double delta : {0.5, 1.0}) {
    GateParams p = carrier(0.15, delta, 0.4, 0.2);
    p.eta = 0.1;
    const BichromaticHamiltonian h(p, 10, Coupling::Full);
    for (double t : {0.0, 1.3, 7.7}) {
      const Matrix a = h.at(t, p.omega, p.zeta, p.phi).matrix();
      const Matrix b = h.at(t + 2 * kPi / delta, p.omega, p.zeta, p.phi).matrix();
      EXPECT_LT(max_abs(a - b), 1e-12);
    }
  }
}

TEST(CarrierPhase, ClosedForm) {
  GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04, kPi / 2);
  EXPECT_NEAR(carrier_phase_F(p, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(carrier_phase_F(p, kPi / 0.96), (2 * 0.221 / 0.96) * (-2.0), 1e-12);
  EXPECT_NEAR(carrier_phase_F(p, kPi / 0.96), -0.9208, 1e-4);
  testing::Generator gen(22);
  for (int k = 1; k <= 5; ++k) {
    p.zeta = gen.uniform(0, 2 * kPi);
    EXPECT_NEAR(carrier_phase_F(p, 2 * kPi * k / p.delta), 0.0, 1e-12);
  }
}

TEST(CarrierPhase, ShapedScheduleMatchesQuadrature) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.0, 0.04, 0.9);
  const PulseSchedule s = two_pulse_sign_flip(shaped_envelope(0.167, 5.0, 2.0),
                                              GateType::MolmerSorensen);
  for (double t : {3.0, 17.0, 40.0, s.total_duration()}) {
    const int n = 40000;
    const double h = t / n;
    double simpson = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double tk = k * h;
      const std::size_t i = s.segment_index(tk);
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      simpson += w * 2.0 * s.rabi(tk, p.omega) *
                 std::cos(p.delta * tk + p.zeta + s.segments()[i].zeta_offset);
    }
    simpson *= h / 3.0;
    EXPECT_NEAR(carrier_phase_F(p, t, &s), simpson, 1e-9) << "t = " << t;
  }
}

TEST(Evolution, ZeroDriveIsIdentity) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.0, 0.04);
  EvolveOptions options;
  options.fock_cutoff = 6;
  options.steps_per_cycle = 64;
  const Operator u = evolve_unitary(p, PulseSchedule::constant(30.0), 30.0, options);
  EXPECT_LT(max_abs(u.matrix() - Matrix::Identity(u.dim(), u.dim())), 1e-10);  // rounding over many steps
}

TEST(Evolution, TimeIndependentCarrier) {
  const GateParams p = carrier(0.3, 0.0, 0.0, 0.4);
  const double t = 13.0;
  for (Coupling coupling : {Coupling::Full, Coupling::LambDicke}) {
    for (Scheme scheme : {Scheme::Midpoint, Scheme::Averaged, Scheme::Fourth}) {
      EvolveOptions options;
      options.fock_cutoff = 4;
      options.steps_per_cycle = 64;
      options.coupling = coupling;
      options.scheme = scheme;
      const Operator u = evolve_unitary(p, PulseSchedule::constant(t), t, options);
      const Matrix h = 0.6 * kron(collective_spin(2, SpinComponent::X, 0.4).matrix(),
                                  Matrix::Identity(5, 5));
      EXPECT_LT(max_abs(u.matrix() - hermitian_expm(h, -kI * t)), 1e-8);
    }
  }
}

TEST(Evolution, CarrierGauge) {
  // Without motional coupling the propagator is exp(-i F(t) S_x^(phi)).
  GateParams p = carrier(0.2, 0.93, 0.8, 1.1);
  const PulseSchedule constant = PulseSchedule::constant(50.0);
  const PulseSchedule shaped = two_pulse_sign_flip(shaped_envelope(0.2, 4.0, 1.5),
                                                   GateType::MolmerSorensen);
  const Matrix sx = kron(collective_spin(2, SpinComponent::X, p.phi).matrix(),
                         Matrix::Identity(4, 4));
  EvolveOptions options;
  options.fock_cutoff = 3;
  for (const PulseSchedule* s : {&constant, &shaped}) {
    for (double t : {7.3, 25.0, 50.0}) {
      const Operator u = evolve_unitary(p, *s, t, options);
      const double f = s == &constant ? carrier_phase_F(p, t) : carrier_phase_F(p, t, s);
      EXPECT_LT(max_abs(u.matrix() - hermitian_expm(sx, -kI * f)), 1e-8);
    }
  }
}

TEST(Evolution, UnitarityAndSchemesAgree) {
  const GateParams p = GateParams::molmer_sorensen(0.1, 0.15, 0.05, 0.5);
  EvolveOptions options;
  options.fock_cutoff = 14;
  Matrix reference;
  for (Scheme scheme : {Scheme::Fourth, Scheme::Averaged, Scheme::Midpoint}) {
    options.scheme = scheme;
    const Operator u = evolve_unitary(p, PulseSchedule::constant(40.0), 40.0, options);
    EXPECT_LT(u.unitarity_error(), 1e-9);
    if (reference.size() == 0) {
      reference = u.matrix();
    } else {
      EXPECT_LT(max_abs(u.matrix().leftCols(15) - reference.leftCols(15)), 1e-4);
    }
  }
}

TEST(Evolution, StepHalvingConverges) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04, 0.3);
  EvolveOptions options;
  options.fock_cutoff = 20;
  const double t = 60.0;
  const Matrix a = evolve_ground_columns(p, PulseSchedule::constant(t), t, options);
  options.steps_per_cycle = 512;
  const Matrix b = evolve_ground_columns(p, PulseSchedule::constant(t), t, options);
  EXPECT_LT(max_abs(a - b), 1e-8);
}

TEST(Evolution, ConvergenceSelfCheck) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04, 0.3);
  EvolveOptions options;
  options.fock_cutoff = 12;
  options.steps_per_cycle = 8;
  options.scheme = Scheme::Midpoint;
  options.convergence_tolerance = 1e-12;
  const HilbertSpace space(2, 12);
  const Matrix initial = basis_state(space, 0, 0).amplitudes();
  EXPECT_THROW((void)evolve_columns(p, PulseSchedule::constant(20.0), initial, 20.0, options),
               ConvergenceError);
  options.steps_per_cycle = 256;
  options.scheme = Scheme::Fourth;
  options.convergence_tolerance = 1e-7;
  EXPECT_NO_THROW((void)evolve_columns(p, PulseSchedule::constant(20.0), initial, 20.0, options));
}

TEST(Evolution, FockGuard) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04);
  EvolveOptions options;
  options.fock_cutoff = 3;
  options.steps_per_cycle = 64;
  EXPECT_THROW((void)evolve_ground_columns(p, PulseSchedule::constant(p.gate_time() / 2),
                                           p.gate_time() / 2, options),
               CutoffError);
}

TEST(Evolution, GateChannelNearIdeal) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04, 0.0);
  const double t = p.gate_time();
  const HilbertSpace space(2, 40);
  const Matrix columns = evolve_ground_columns(p, PulseSchedule::constant(t), t);
  const Matrix sy = collective_spin(2, SpinComponent::Y).matrix();
  const QuantumProcess ideal = channel_from_qubit_unitary(hermitian_expm(sy * sy, kI * (kPi / 8)));
  EXPECT_LT(process_distance(channel_from_ground_columns(columns, space), ideal), 1e-2);
}

TEST(Evolution, SampledMatchesDirect) {
  const GateParams p = GateParams::sigma_z(0.1, 0.1, 0.04, 0.2);
  EvolveOptions options;
  options.fock_cutoff = 10;
  options.steps_per_cycle = 64;
  const HilbertSpace space(2, 10);
  const Matrix initial = basis_state(space, 1, 0).amplitudes();
  const Propagator prop(p, PulseSchedule::constant(30.0), options);
  const std::vector<Matrix> states = prop.evolve_sampled(initial, 0.0, {5.0, 12.5, 30.0});
  EXPECT_LT(max_abs(states[1] - prop.evolve(initial, 0.0, 12.5)), 1e-10);
  EXPECT_LT(max_abs(states[2] - prop.evolve(states[0], 5.0, 30.0)), 1e-8);  // the step grids differ
  EXPECT_NEAR(states[2].norm(), 1.0, 1e-9);
  EXPECT_THROW((void)prop.evolve(initial, 0.0, 31.0), std::out_of_range);
}

TEST(EvolveState, IdentityAndNorm) {
  const HilbertSpace space(2, 4);
  testing::Generator gen(23);
  const StateVector psi(space.layout(), gen.state(space.dim()));
  const Operator id(space.layout(), Matrix::Identity(space.dim(), space.dim()));
  EXPECT_LT((evolve_state(id, psi).amplitudes() - psi.amplitudes()).norm(), 1e-15);
  const Operator u(space.layout(), hermitian_expm(gen.hermitian(space.dim()), -kI));
  EXPECT_NEAR(evolve_state(u, psi).norm(), 1.0, 1e-9);
  const DensityMatrix rho = evolve_state(u, psi.projector());
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
  const StateVector other(qubit_layout(2), gen.state(4));
  EXPECT_THROW((void)evolve_state(u, other), DimensionError);
}

TEST(StroboscopicTimes, Definition) {
  const std::vector<double> t = stroboscopic_times(0.96, 3);
  ASSERT_EQ(t.size(), 3u);
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(t[k - 1], 2.0 * kPi / 0.96 * k);
}

}  // namespace
}  // namespace iongate
