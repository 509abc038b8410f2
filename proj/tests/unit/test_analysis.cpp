#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "iongate/analysis.hpp"
#include "iongate/effective_models.hpp"
#include "iongate/errors.hpp"
#include "iongate/operators.hpp"

namespace iongate {
namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix random_unitary(testing::Generator& gen, Eigen::Index dim) {
  return hermitian_expm(gen.hermitian(dim), -kI);
}

Matrix sy_squared_gate(double theta) {
  const Matrix sy = collective_spin(2, SpinComponent::Y).matrix();
  return hermitian_expm(sy * sy, kI * theta);
}

TEST(StateFidelity, PureStates) {
  testing::Generator gen(41);
  const Vector psi = gen.state(4);
  EXPECT_NEAR(state_fidelity(Matrix(psi * psi.adjoint()), psi), 1.0, 1e-12);
  Vector orth = gen.state(4);
  orth -= psi.dot(orth) * psi;
  orth.normalize();
  EXPECT_NEAR(state_fidelity(Matrix(psi * psi.adjoint()), orth), 0.0, 1e-12);
  EXPECT_THROW((void)state_fidelity(Matrix::Identity(3, 3) / 3.0, psi), DimensionError);
}

TEST(StateFidelity, TracesOutMotion) {
  testing::Generator gen(42);
  const HilbertSpace space(2, 3);
  const Vector q = gen.state(4);
  const Vector m = gen.state(4);
  const StateVector full(space.layout(), kron(q, m));
  const StateVector target(qubit_layout(2), q);
  EXPECT_NEAR(state_fidelity(full.projector(), target), 1.0, 1e-12);
}

TEST(Targets, Conventions) {
  const Vector a = max_entangled_target().amplitudes();
  EXPECT_NEAR(std::abs(a(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a(3) + kI / std::sqrt(2.0)), 0.0, 1e-15);
  const Vector b = shaped_gate_target().amplitudes();
  EXPECT_NEAR(std::abs(b(3) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(0) - kI / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(QuantumProcess, Validation) {
  EXPECT_THROW(QuantumProcess(Matrix::Identity(4, 4) / 4.0), DimensionError);
  EXPECT_THROW(QuantumProcess(Matrix::Identity(16, 16)), std::invalid_argument);
  Matrix m = Matrix::Identity(16, 16) / 16.0;
  m(0, 1) = 0.1;
  EXPECT_THROW((void)QuantumProcess(m), std::invalid_argument);
}

TEST(Channels, IdentityAndProductUnitary) {
  const HilbertSpace space(2, 6);
  const Operator id(space.layout(), Matrix::Identity(space.dim(), space.dim()));
  const QuantumProcess p = channel_from_unitary(id);
  Vector phi = Vector::Zero(16);
  for (int i = 0; i < 4; ++i) phi(5 * i) = 0.5;
  EXPECT_LT(max_abs(p.choi() - phi * phi.adjoint()), 1e-14);
  EXPECT_LT(p.trace_preservation_error(), 1e-14);

  testing::Generator gen(43);
  const Matrix v = random_unitary(gen, 4);
  const Operator u(space.layout(), kron(v, random_unitary(gen, 7)));
  EXPECT_LT(max_abs(channel_from_unitary(u).choi() - channel_from_qubit_unitary(v).choi()), 1e-12);
}

TEST(Channels, GroundColumnsAgreeWithUnitary) {
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.221, 0.04, 0.8);
  const int n_max = 20;
  const HilbertSpace space(2, n_max);
  const Operator u = ms_propagator(p, 37.0, n_max);
  Matrix columns(space.dim(), 4);
  for (int q = 0; q < 4; ++q) columns.col(q) = u.matrix().col(space.index(q, 0));
  const QuantumProcess a = channel_from_unitary(u);
  const QuantumProcess b = channel_from_ground_columns(columns, space);
  EXPECT_LT(max_abs(a.choi() - b.choi()), 1e-12);
  EXPECT_LT(a.trace_preservation_error(), 1e-10);
  EXPECT_GT(process_distance(a, channel_from_qubit_unitary(Matrix::Identity(4, 4))), 1e-3);
}

TEST(Channels, JamiolkowskiRoundTrip) {
  testing::Generator gen(44);
  const GateParams p = GateParams::molmer_sorensen(0.05, 0.2, 0.04, 1.3);
  const int n_max = 15;
  const HilbertSpace space(2, n_max);
  const Operator u = ms_propagator(p, 23.0, n_max);
  const QuantumProcess channel = channel_from_unitary(u);
  Matrix vacuum = Matrix::Zero(n_max + 1, n_max + 1);
  vacuum(0, 0) = 1.0;
  for (int k = 0; k < 10; ++k) {
    const Matrix rho = gen.density(4);
    const Matrix direct =
        partial_trace_motion(u.matrix() * kron(rho, vacuum) * u.matrix().adjoint(), space);
    EXPECT_LT(max_abs(channel.apply(rho) - direct), 1e-10);
    const Matrix v = random_unitary(gen, 4);
    EXPECT_LT(max_abs(channel_from_qubit_unitary(v).apply(rho) - v * rho * v.adjoint()), 1e-10);
  }
}

TEST(ProcessDistance, IdentityAndSymmetry) {
  testing::Generator gen(45);
  for (int k = 0; k < 10; ++k) {
    const QuantumProcess a = channel_from_qubit_unitary(random_unitary(gen, 4));
    const QuantumProcess b = channel_from_qubit_unitary(random_unitary(gen, 4));
    EXPECT_NEAR(process_distance(a, a), 0.0, 1e-8);
    EXPECT_NEAR(process_distance(a, b), process_distance(b, a), 1e-8);
    EXPECT_GE(process_distance(a, b), 0.0);
    EXPECT_LE(process_distance(a, b), 1.0);
  }
}

TEST(ProcessDistance, PureChoiClosedForm) {
  // S_y^2 has eigenvalues {4, 0, 0, 4}, so Tr(U1^dagger U2)/4 = (1 + e^{4 i dtheta})/2.
  // Square roots of rank-one Choi matrices cost about 1e-8 in the general formula.
  for (double theta2 : {0.0, 0.1, 0.3}) {
    const double d = process_distance(channel_from_qubit_unitary(sy_squared_gate(kPi / 8)),
                                      channel_from_qubit_unitary(sy_squared_gate(theta2)));
    EXPECT_NEAR(d, 1.0 - std::abs(std::cos(2.0 * (kPi / 8 - theta2))), 1e-7);
  }
  EXPECT_NEAR(process_distance(channel_from_qubit_unitary(sy_squared_gate(kPi / 8)),
                               channel_from_qubit_unitary(Matrix::Identity(4, 4))),
              1.0 - std::sqrt(0.5), 1e-7);
}

TEST(ProcessDistance, MonotoneInPerturbation) {
  const QuantumProcess base = channel_from_qubit_unitary(sy_squared_gate(kPi / 8));
  const Matrix sz = collective_spin(2, SpinComponent::Z).matrix();
  double last = -1.0;
  for (int k = 0; k <= 20; ++k) {
    const double theta = 0.01 * k;
    const Matrix v = hermitian_expm(sz, kI * theta) * sy_squared_gate(kPi / 8);
    const double d = process_distance(base, channel_from_qubit_unitary(v));
    if (k > 0) EXPECT_GT(d, last);
    last = d;
  }
}

TEST(ProcessDistance, InvariantUnderCommonUnitary) {
  testing::Generator gen(46);
  const Matrix v1 = random_unitary(gen, 4);
  const Matrix v2 = random_unitary(gen, 4);
  const double d = process_distance(channel_from_qubit_unitary(v1), channel_from_qubit_unitary(v2));
  for (int k = 0; k < 5; ++k) {
    const Matrix w = random_unitary(gen, 4);
    const Matrix x = random_unitary(gen, 4);
    EXPECT_NEAR(process_distance(channel_from_qubit_unitary(w * v1 * x),
                                 channel_from_qubit_unitary(w * v2 * x)),
                d, 1e-8);
  }
}

TEST(ZzPhase, ExtractsConditionalPhase) {
  const HilbertSpace space(2, 4);
  const Matrix sz = collective_spin(2, SpinComponent::Z).matrix();
  const Matrix z1 = kron(collective_spin(1, SpinComponent::Z).matrix(), Matrix::Identity(2, 2));
  for (double theta : {-0.3, 0.1, kPi / 8}) {
    const Matrix v = hermitian_expm(sz * sz, kI * theta) * hermitian_expm(z1, kI * 0.37);
    const Matrix u = kron(v, Matrix::Identity(5, 5));
    Matrix columns(space.dim(), 4);
    for (int q = 0; q < 4; ++q) columns.col(q) = u.col(space.index(q, 0));
    EXPECT_NEAR(zz_phase_from_columns(columns, space), theta, 1e-12);
  }
}

}  // namespace
}  // namespace iongate
