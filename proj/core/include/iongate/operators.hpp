#pragma once

#include "iongate/hilbert.hpp"

namespace iongate {

// Truncation and numerical-noise thresholds shared across the library.
inline constexpr double kPsdClampThreshold = 1e-8;
inline constexpr double kDisplacementNormTolerance = 1e-6;
inline constexpr double kThermalTailLimit = 1e-6;
inline constexpr double kFockGuardThreshold = 1e-8;

struct FockOperators {
  Operator a;
  Operator a_dagger;
  Operator n;
};

// Ladder and number operators on the Fock states 0..n_max.
[[nodiscard]] FockOperators fock_ops(int n_max);

// exp(alpha a^dagger - alpha^* a), evaluated as the exponential of the
// truncated generator. Throws CutoffError when the displaced vacuum would put
// more than kDisplacementNormTolerance of its weight above n_max.
[[nodiscard]] Operator displacement(Complex alpha, int n_max);

enum class SpinComponent { X, Y, Z, Plus, Minus };

// Collective Pauli sums over m ions. The phase rotates x into y:
//   X -> S_x cos(phase) + S_y sin(phase)
//   Y -> S_y cos(phase) - S_x sin(phase)
//   Plus -> e^{-i phase} S_+,  Minus -> e^{i phase} S_-
// Z ignores the phase.
[[nodiscard]] Operator collective_spin(int num_ions, SpinComponent kind, double phase = 0.0);

enum class RotatedAxis { Y, Z };

// S_{y,psi} = S_y cos(psi) + S_z sin(psi),  S_{z,psi} = S_z cos(psi) - S_y sin(psi)
[[nodiscard]] Operator rotated_spin(int num_ions, RotatedAxis axis, double psi);

// Geometric number-state distribution with mean n_bar, renormalised on
// 0..n_max. Throws CutoffError if the discarded tail exceeds kThermalTailLimit.
[[nodiscard]] DensityMatrix thermal_state(double n_bar, int n_max);

// Raw (unrenormalised) tail mass of a thermal distribution beyond n_max.
[[nodiscard]] double thermal_tail_mass(double n_bar, int n_max);

[[nodiscard]] DensityMatrix partial_trace_motion(const DensityMatrix& rho);
[[nodiscard]] Matrix partial_trace_motion(const Matrix& rho, const HilbertSpace& space);

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// (-kPsdClampThreshold, 0) are clamped to zero; anything lower throws NonPSDError.
[[nodiscard]] Matrix matrix_sqrt_psd(const Matrix& m);

// exp(coeff * h) for Hermitian h via its eigendecomposition. Unitary when
// coeff is purely imaginary.
[[nodiscard]] Matrix hermitian_expm(const Matrix& h, Complex coeff);
[[nodiscard]] Operator hermitian_expm(const Operator& h, Complex coeff);

[[nodiscard]] Matrix kron(const Matrix& a, const Matrix& b);

// qubit_op (x) motion_op on the full space.
[[nodiscard]] Operator tensor(const Operator& qubit_op, const Operator& motion_op);

// qubit_op (x) identity on the oscillator.
[[nodiscard]] Operator embed_qubits(const Operator& qubit_op, int fock_cutoff);

// |qubit_state, n>. qubit_state uses the fixed bit ordering (ion 1 most significant).
[[nodiscard]] StateVector basis_state(const HilbertSpace& space, Eigen::Index qubit_state,
                                      Eigen::Index fock);

// Total population in the top `levels` Fock states of a full-space vector.
[[nodiscard]] double top_fock_population(const Eigen::Ref<const Vector>& state,
                                         const HilbertSpace& space, int levels = 2);

}  // namespace iongate
