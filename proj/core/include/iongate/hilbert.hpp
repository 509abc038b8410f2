#pragma once

#include <complex>

#include <Eigen/Dense>

namespace iongate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Qubit basis ordering is fixed everywhere: |down> = 0, |up> = 1 per ion, ion 1
// is the most significant bit, and the oscillator index runs fastest. A full
// basis index is therefore qubit_state * (fock_cutoff + 1) + n.
enum class Sector { Full, Qubits, Motion };

struct Layout {
  Sector sector = Sector::Full;
  int num_ions = 0;
  int fock_cutoff = 0;

  [[nodiscard]] Eigen::Index dim() const noexcept;
  [[nodiscard]] Eigen::Index qubit_dim() const noexcept { return Eigen::Index{1} << num_ions; }
  [[nodiscard]] Eigen::Index motion_dim() const noexcept { return fock_cutoff + 1; }

  friend bool operator==(const Layout&, const Layout&) = default;
};

class HilbertSpace {
 public:
  HilbertSpace(int num_ions, int fock_cutoff);

  [[nodiscard]] int num_ions() const noexcept { return num_ions_; }
  [[nodiscard]] int fock_cutoff() const noexcept { return fock_cutoff_; }
  [[nodiscard]] Eigen::Index qubit_dim() const noexcept { return Eigen::Index{1} << num_ions_; }
  [[nodiscard]] Eigen::Index motion_dim() const noexcept { return fock_cutoff_ + 1; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return qubit_dim() * motion_dim(); }
  [[nodiscard]] Eigen::Index index(Eigen::Index qubit_state, Eigen::Index fock) const noexcept {
    return qubit_state * motion_dim() + fock;
  }
  [[nodiscard]] Layout layout(Sector sector = Sector::Full) const noexcept;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  int num_ions_;
  int fock_cutoff_;
};

[[nodiscard]] Layout qubit_layout(int num_ions);
[[nodiscard]] Layout motion_layout(int fock_cutoff);

// Dense complex operator tagged with the sector it acts on.
class Operator {
 public:
  Operator(Layout layout, Matrix matrix);

  [[nodiscard]] const Layout& layout() const noexcept { return layout_; }
  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return matrix_.rows(); }

  // max |M - M^dagger|
  [[nodiscard]] double hermiticity_error() const;
  // max |M^dagger M - I|
  [[nodiscard]] double unitarity_error() const;

  [[nodiscard]] Operator adjoint() const { return {layout_, matrix_.adjoint()}; }

  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Operator operator+(const Operator& lhs, const Operator& rhs);
  friend Operator operator-(const Operator& lhs, const Operator& rhs);
  friend Operator operator*(Complex scale, const Operator& op);

 private:
  Layout layout_;
  Matrix matrix_;
};

class DensityMatrix {
 public:
  // tail_mass records probability already discarded by truncation; the matrix
  // itself must have unit trace.
  DensityMatrix(Layout layout, Matrix matrix, double tail_mass = 0.0);

  [[nodiscard]] const Layout& layout() const noexcept { return layout_; }
  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] double tail_mass() const noexcept { return tail_mass_; }
  [[nodiscard]] Complex trace() const { return matrix_.trace(); }

  [[nodiscard]] double hermiticity_error() const;
  [[nodiscard]] double min_eigenvalue() const;

 private:
  Layout layout_;
  Matrix matrix_;
  double tail_mass_;
};

class StateVector {
 public:
  StateVector(Layout layout, Vector amplitudes);

  [[nodiscard]] const Layout& layout() const noexcept { return layout_; }
  [[nodiscard]] const Vector& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] double norm() const { return amplitudes_.norm(); }
  [[nodiscard]] DensityMatrix projector() const;

 private:
  Layout layout_;
  Vector amplitudes_;
};

}  // namespace iongate
