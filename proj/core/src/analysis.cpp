#include "iongate/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "iongate/errors.hpp"
#include "iongate/operators.hpp"

namespace iongate {

namespace {

constexpr Eigen::Index kQubits = 4;

}  // namespace

QuantumProcess::QuantumProcess(Matrix choi) : choi_(std::move(choi)) {
  if (choi_.rows() != kQubits * kQubits || choi_.cols() != kQubits * kQubits) {
    throw DimensionError("Choi matrix must be 16x16");
  }
  const double herm = (choi_ - choi_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) {
    throw std::invalid_argument("Choi matrix is not Hermitian (error " + std::to_string(herm) + ")");
  }
  choi_ = 0.5 * (choi_ + choi_.adjoint()).eval();
  const double trace = choi_.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) {
    throw std::invalid_argument("Choi matrix trace " + std::to_string(trace) + " is not 1");
  }
}

Matrix QuantumProcess::apply(const Matrix& rho) const {
  if (rho.rows() != kQubits || rho.cols() != kQubits) {
    throw DimensionError("QuantumProcess::apply needs a 4x4 input");
  }
  // E(rho) = 4 Tr_in[(rho^T (x) I) choi]
  Matrix out = Matrix::Zero(kQubits, kQubits);
  for (Eigen::Index i = 0; i < kQubits; ++i) {
    for (Eigen::Index j = 0; j < kQubits; ++j) {
      out += rho(i, j) * choi_.block(i * kQubits, j * kQubits, kQubits, kQubits);
    }
  }
  return 4.0 * out;
}

double QuantumProcess::trace_preservation_error() const {
  Matrix reduced(kQubits, kQubits);
  for (Eigen::Index i = 0; i < kQubits; ++i) {
    for (Eigen::Index j = 0; j < kQubits; ++j) {
      reduced(i, j) = choi_.block(i * kQubits, j * kQubits, kQubits, kQubits).trace();
    }
  }
  return (reduced - 0.25 * Matrix::Identity(kQubits, kQubits)).cwiseAbs().maxCoeff();
}

double state_fidelity(const Matrix& rho, const Vector& target) {
  if (rho.rows() != target.size() || rho.cols() != target.size()) {
    throw DimensionError("state_fidelity: dimension mismatch");
  }
  return std::clamp((target.adjoint() * rho * target)(0, 0).real(), 0.0, 1.0);
}

double state_fidelity(const DensityMatrix& rho, const StateVector& target) {
  if (target.layout().sector != Sector::Qubits) {
    throw DimensionError("state_fidelity needs a qubit target state");
  }
  if (rho.layout().sector == Sector::Full) {
    return state_fidelity(partial_trace_motion(rho).matrix(), target.amplitudes());
  }
  if (!(rho.layout() == target.layout())) throw DimensionError("state_fidelity: layout mismatch");
  return state_fidelity(rho.matrix(), target.amplitudes());
}

QuantumProcess channel_from_ground_columns(const Matrix& columns, const HilbertSpace& space) {
  if (space.num_ions() != 2) throw DimensionError("channels are defined for two ions");
  if (columns.rows() != space.dim() || columns.cols() != kQubits) {
    throw DimensionError("channel_from_ground_columns needs a dim x 4 matrix");
  }
  const Eigen::Index m = space.motion_dim();
  // Row (i, a) holds <a, n| U |i, 0> over n.
  Matrix b(kQubits * kQubits, m);
  for (Eigen::Index i = 0; i < kQubits; ++i) {
    for (Eigen::Index a = 0; a < kQubits; ++a) {
      b.row(i * kQubits + a) = columns.col(i).segment(a * m, m).transpose();
    }
  }
  Matrix choi = 0.25 * b * b.adjoint();
  choi /= choi.trace().real();
  return QuantumProcess(std::move(choi));
}

QuantumProcess channel_from_unitary(const Operator& u) {
  const Layout& layout = u.layout();
  if (layout.sector != Sector::Full) throw DimensionError("channel_from_unitary needs a full-space U");
  const HilbertSpace space(layout.num_ions, layout.fock_cutoff);
  Matrix columns(space.dim(), space.qubit_dim());
  for (Eigen::Index q = 0; q < space.qubit_dim(); ++q) {
    columns.col(q) = u.matrix().col(space.index(q, 0));
  }
  return channel_from_ground_columns(columns, space);
}

QuantumProcess channel_from_qubit_unitary(const Matrix& v) {
  if (v.rows() != kQubits || v.cols() != kQubits) throw DimensionError("need a 4x4 unitary");
  Vector vec(kQubits * kQubits);
  for (Eigen::Index i = 0; i < kQubits; ++i) {
    for (Eigen::Index a = 0; a < kQubits; ++a) vec(i * kQubits + a) = v(a, i);
  }
  return QuantumProcess(0.25 * vec * vec.adjoint());
}

double process_distance(const QuantumProcess& p1, const QuantumProcess& p2) {
  const Matrix s = matrix_sqrt_psd(p1.choi());
  Matrix inner = s * p2.choi() * s;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(inner, Eigen::EigenvaluesOnly);
  double fidelity = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double value = solver.eigenvalues()(k);
    if (value < -kPsdClampThreshold) throw NonPSDError("negative eigenvalue in fidelity product");
    fidelity += std::sqrt(std::max(value, 0.0));
  }
  return std::clamp(1.0 - fidelity, 0.0, 1.0);
}

StateVector max_entangled_target() {
  Vector v = Vector::Zero(kQubits);
  v(0) = 1.0 / std::sqrt(2.0);
  v(3) = -kI / std::sqrt(2.0);
  return {qubit_layout(2), std::move(v)};
}

StateVector shaped_gate_target() {
  Vector v = Vector::Zero(kQubits);
  v(3) = 1.0 / std::sqrt(2.0);
  v(0) = kI / std::sqrt(2.0);
  return {qubit_layout(2), std::move(v)};
}

double zz_phase_from_columns(const Matrix& columns, const HilbertSpace& space) {
  if (space.num_ions() != 2 || columns.rows() != space.dim() || columns.cols() != kQubits) {
    throw DimensionError("zz_phase_from_columns needs dim x 4 ground columns for two ions");
  }
  auto element = [&](Eigen::Index q) { return columns(space.index(q, 0), q); };
  const Complex product = element(0) * element(3) * std::conj(element(1)) * std::conj(element(2));
  return std::arg(product) / 8.0;
}

}  // namespace iongate
