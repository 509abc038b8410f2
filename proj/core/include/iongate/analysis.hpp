#pragma once

#include "iongate/hilbert.hpp"

namespace iongate {

// Two-qubit channel in Choi form: choi = (1/4) sum_ij |i><j| (x) E(|i><j|),
// input factor first, so the identity channel maps to the maximally
// entangled projector and the trace is 1.
class QuantumProcess {
 public:
  // Throws DimensionError unless 16x16, std::invalid_argument unless
  // Hermitian within 1e-10 with unit trace.
  explicit QuantumProcess(Matrix choi);

  [[nodiscard]] const Matrix& choi() const noexcept { return choi_; }
  // E(rho) for a 4x4 qubit density matrix.
  [[nodiscard]] Matrix apply(const Matrix& rho) const;
  // max | Tr_out(choi) - I/4 |
  [[nodiscard]] double trace_preservation_error() const;

 private:
  Matrix choi_;
};

// <psi|rho|psi>; a full-space rho is reduced to the qubits first.
[[nodiscard]] double state_fidelity(const DensityMatrix& rho, const StateVector& target);
[[nodiscard]] double state_fidelity(const Matrix& rho, const Vector& target);

// Channel rho -> Tr_motion[U (rho (x) |0><0|) U^dagger].
[[nodiscard]] QuantumProcess channel_from_unitary(const Operator& u);
// Same channel from the columns U|q,0>, q = 0..3, stacked as a dim x 4 matrix.
[[nodiscard]] QuantumProcess channel_from_ground_columns(const Matrix& columns,
                                                         const HilbertSpace& space);
// Unitary channel of a 4x4 qubit unitary.
[[nodiscard]] QuantumProcess channel_from_qubit_unitary(const Matrix& v);

// 1 - Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) between Choi states.
[[nodiscard]] double process_distance(const QuantumProcess& p1, const QuantumProcess& p2);

// (|dd> - i|uu>)/sqrt(2)
[[nodiscard]] StateVector max_entangled_target();
// (|uu> + i|dd>)/sqrt(2)
[[nodiscard]] StateVector shaped_gate_target();

// Conditional phase of the qubit block <q,0|U|q',0>:
//   (arg U_dd + arg U_uu - arg U_du - arg U_ud) / 8,
// which equals theta for U = exp(i theta S_z^2) and is blind to single-qubit
// z phases and to an S_y^2 admixture at first order.
[[nodiscard]] double zz_phase_from_columns(const Matrix& columns, const HilbertSpace& space);

}  // namespace iongate
