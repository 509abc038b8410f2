#include "iongate/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "iongate/errors.hpp"

namespace iongate {

namespace {

Matrix single_ion(SpinComponent kind) {
  Matrix s = Matrix::Zero(2, 2);
  switch (kind) {
    case SpinComponent::X:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case SpinComponent::Y:
      s(1, 0) = -kI;
      s(0, 1) = kI;
      break;
    case SpinComponent::Z:
      s(0, 0) = -1.0;
      s(1, 1) = 1.0;
      break;
    case SpinComponent::Plus:
      s(1, 0) = 1.0;
      break;
    case SpinComponent::Minus:
      s(0, 1) = 1.0;
      break;
  }
  return s;
}

Matrix collective(int num_ions, SpinComponent kind) {
  const Eigen::Index dim = Eigen::Index{1} << num_ions;
  Matrix total = Matrix::Zero(dim, dim);
  const Matrix pauli = single_ion(kind);
  for (int ion = 0; ion < num_ions; ++ion) {
    Matrix term = Matrix::Identity(1, 1);
    for (int k = 0; k < num_ions; ++k) {
      term = kron(term, k == ion ? pauli : Matrix::Identity(2, 2));
    }
    total += term;
  }
  return total;
}

void require_ions(int num_ions) {
  if (num_ions < 1 || num_ions > 12) {
    throw std::invalid_argument("number of ions must be in [1, 12], got " +
                                std::to_string(num_ions));
  }
}

void require_cutoff(int n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("Fock cutoff must be at least 1, got " + std::to_string(n_max));
  }
}

// Probability that a Poisson variable with the given mean exceeds n_max.
double poisson_tail(double mean, int n_max) {
  if (mean == 0.0) return 0.0;
  double term = std::exp(-mean);
  double cdf = term;
  for (int n = 1; n <= n_max; ++n) {
    term *= mean / n;
    cdf += term;
  }
  return std::max(0.0, 1.0 - cdf);
}

}  // namespace

Eigen::Index Layout::dim() const noexcept {
  switch (sector) {
    case Sector::Qubits:
      return qubit_dim();
    case Sector::Motion:
      return motion_dim();
    case Sector::Full:
      break;
  }
  return qubit_dim() * motion_dim();
}

HilbertSpace::HilbertSpace(int num_ions, int fock_cutoff)
    : num_ions_(num_ions), fock_cutoff_(fock_cutoff) {
  require_ions(num_ions);
  require_cutoff(fock_cutoff);
}

Layout HilbertSpace::layout(Sector sector) const noexcept {
  return Layout{sector, num_ions_, fock_cutoff_};
}

Layout qubit_layout(int num_ions) {
  require_ions(num_ions);
  return Layout{Sector::Qubits, num_ions, 0};
}

Layout motion_layout(int fock_cutoff) {
  require_cutoff(fock_cutoff);
  return Layout{Sector::Motion, 0, fock_cutoff};
}

Operator::Operator(Layout layout, Matrix matrix) : layout_(layout), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DimensionError("operator matrix must be square");
  }
  if (matrix_.rows() != layout_.dim()) {
    throw DimensionError("operator dimension " + std::to_string(matrix_.rows()) +
                         " does not match layout dimension " + std::to_string(layout_.dim()));
  }
}

double Operator::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::unitarity_error() const {
  const Matrix product = matrix_.adjoint() * matrix_;
  return (product - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  if (!(lhs.layout_ == rhs.layout_)) throw DimensionError("operator product across layouts");
  return {lhs.layout_, lhs.matrix_ * rhs.matrix_};
}

Operator operator+(const Operator& lhs, const Operator& rhs) {
  if (!(lhs.layout_ == rhs.layout_)) throw DimensionError("operator sum across layouts");
  return {lhs.layout_, lhs.matrix_ + rhs.matrix_};
}

Operator operator-(const Operator& lhs, const Operator& rhs) {
  if (!(lhs.layout_ == rhs.layout_)) throw DimensionError("operator difference across layouts");
  return {lhs.layout_, lhs.matrix_ - rhs.matrix_};
}

Operator operator*(Complex scale, const Operator& op) { return {op.layout_, scale * op.matrix_}; }

DensityMatrix::DensityMatrix(Layout layout, Matrix matrix, double tail_mass)
    : layout_(layout), matrix_(std::move(matrix)), tail_mass_(tail_mass) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != layout_.dim()) {
    throw DimensionError("density matrix dimension does not match its layout");
  }
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) {
    throw std::invalid_argument("density matrix is not Hermitian (error " + std::to_string(herm) +
                                ")");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) {
    throw std::invalid_argument("density matrix trace " + std::to_string(trace) + " is not 1");
  }
}

double DensityMatrix::hermiticity_error() const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

StateVector::StateVector(Layout layout, Vector amplitudes)
    : layout_(layout), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.dim()) {
    throw DimensionError("state vector dimension does not match its layout");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state vector is not normalised (norm " +
                                std::to_string(amplitudes_.norm()) + ")");
  }
}

DensityMatrix StateVector::projector() const {
  return {layout_, amplitudes_ * amplitudes_.adjoint()};
}

FockOperators fock_ops(int n_max) {
  require_cutoff(n_max);
  const Eigen::Index dim = n_max + 1;
  Matrix a = Matrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  Matrix number = Matrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) number(n, n) = static_cast<double>(n);
  const Layout layout = motion_layout(n_max);
  Matrix a_dagger = a.adjoint();
  return {Operator(layout, std::move(a)), Operator(layout, std::move(a_dagger)),
          Operator(layout, std::move(number))};
}

Operator displacement(Complex alpha, int n_max) {
  require_cutoff(n_max);
  const double deviation = 1.0 - std::sqrt(1.0 - poisson_tail(std::norm(alpha), n_max));
  if (deviation > kDisplacementNormTolerance) {
    throw CutoffError("displacement |alpha| = " + std::to_string(std::abs(alpha)) +
                      " leaks past Fock cutoff " + std::to_string(n_max) +
                      " (vacuum column norm deficit " + std::to_string(deviation) + ")");
  }
  const auto ops = fock_ops(n_max);
  // D = exp(-i H) with H = i (alpha a^dagger - alpha^* a) Hermitian.
  const Matrix h = kI * (alpha * ops.a_dagger.matrix() - std::conj(alpha) * ops.a.matrix());
  return {motion_layout(n_max), hermitian_expm(h, -kI)};
}

Operator collective_spin(int num_ions, SpinComponent kind, double phase) {
  require_ions(num_ions);
  const Layout layout = qubit_layout(num_ions);
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  switch (kind) {
    case SpinComponent::X:
      return {layout, c * collective(num_ions, SpinComponent::X) +
                          s * collective(num_ions, SpinComponent::Y)};
    case SpinComponent::Y:
      return {layout, c * collective(num_ions, SpinComponent::Y) -
                          s * collective(num_ions, SpinComponent::X)};
    case SpinComponent::Z:
      return {layout, collective(num_ions, SpinComponent::Z)};
    case SpinComponent::Plus:
      return {layout, std::polar(1.0, -phase) * collective(num_ions, SpinComponent::Plus)};
    case SpinComponent::Minus:
      return {layout, std::polar(1.0, phase) * collective(num_ions, SpinComponent::Minus)};
  }
  throw std::invalid_argument("unknown spin component");
}

Operator rotated_spin(int num_ions, RotatedAxis axis, double psi) {
  const Matrix sy = collective_spin(num_ions, SpinComponent::Y).matrix();
  const Matrix sz = collective_spin(num_ions, SpinComponent::Z).matrix();
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  const Layout layout = qubit_layout(num_ions);
  if (axis == RotatedAxis::Y) return {layout, c * sy + s * sz};
  return {layout, c * sz - s * sy};
}

double thermal_tail_mass(double n_bar, int n_max) {
  if (n_bar < 0.0) throw std::invalid_argument("mean phonon number must be non-negative");
  if (n_bar == 0.0) return 0.0;
  return std::pow(n_bar / (n_bar + 1.0), n_max + 1);
}

DensityMatrix thermal_state(double n_bar, int n_max) {
  require_cutoff(n_max);
  const double tail = thermal_tail_mass(n_bar, n_max);
  if (tail > kThermalTailLimit) {
    throw CutoffError("thermal state with n_bar = " + std::to_string(n_bar) +
                      " has tail mass " + std::to_string(tail) + " above Fock cutoff " +
                      std::to_string(n_max));
  }
  const Eigen::Index dim = n_max + 1;
  Matrix rho = Matrix::Zero(dim, dim);
  const double ratio = n_bar / (n_bar + 1.0);
  double p = 1.0 / (n_bar + 1.0);
  for (Eigen::Index n = 0; n < dim; ++n) {
    rho(n, n) = p;
    p *= ratio;
  }
  rho /= (1.0 - tail);
  return {motion_layout(n_max), std::move(rho), tail};
}

Matrix partial_trace_motion(const Matrix& rho, const HilbertSpace& space) {
  if (rho.rows() != space.dim() || rho.cols() != space.dim()) {
    throw DimensionError("partial trace: matrix does not match the full space");
  }
  const Eigen::Index q = space.qubit_dim();
  const Eigen::Index m = space.motion_dim();
  Matrix reduced = Matrix::Zero(q, q);
  for (Eigen::Index a = 0; a < q; ++a) {
    for (Eigen::Index b = 0; b < q; ++b) {
      reduced(a, b) = rho.block(a * m, b * m, m, m).trace();
    }
  }
  return reduced;
}

DensityMatrix partial_trace_motion(const DensityMatrix& rho) {
  const Layout& layout = rho.layout();
  if (layout.sector != Sector::Full) {
    throw DimensionError("partial trace over motion needs a full-space density matrix");
  }
  const HilbertSpace space(layout.num_ions, layout.fock_cutoff);
  return {qubit_layout(layout.num_ions), partial_trace_motion(rho.matrix(), space)};
}

Matrix matrix_sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw NonPSDError("eigendecomposition failed");
  Eigen::VectorXd values = solver.eigenvalues();
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) < -kPsdClampThreshold) {
      throw NonPSDError("matrix has eigenvalue " + std::to_string(values(k)) +
                        " below the clamp threshold");
    }
    values(k) = std::sqrt(std::max(values(k), 0.0));
  }
  const Matrix& v = solver.eigenvectors();
  return v * values.asDiagonal() * v.adjoint();
}

Matrix hermitian_expm(const Matrix& h, Complex coeff) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("hermitian_expm: eigendecomposition failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  Vector phases(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) phases(k) = std::exp(coeff * values(k));
  const Matrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Operator hermitian_expm(const Operator& h, Complex coeff) {
  return {h.layout(), hermitian_expm(h.matrix(), coeff)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator tensor(const Operator& qubit_op, const Operator& motion_op) {
  if (qubit_op.layout().sector != Sector::Qubits || motion_op.layout().sector != Sector::Motion) {
    throw DimensionError("tensor expects a qubit operator and a motion operator");
  }
  const Layout layout{Sector::Full, qubit_op.layout().num_ions, motion_op.layout().fock_cutoff};
  return {layout, kron(qubit_op.matrix(), motion_op.matrix())};
}

Operator embed_qubits(const Operator& qubit_op, int fock_cutoff) {
  return tensor(qubit_op, Operator(motion_layout(fock_cutoff),
                                   Matrix::Identity(fock_cutoff + 1, fock_cutoff + 1)));
}

StateVector basis_state(const HilbertSpace& space, Eigen::Index qubit_state, Eigen::Index fock) {
  if (qubit_state < 0 || qubit_state >= space.qubit_dim() || fock < 0 ||
      fock >= space.motion_dim()) {
    throw DimensionError("basis state index out of range");
  }
  Vector v = Vector::Zero(space.dim());
  v(space.index(qubit_state, fock)) = 1.0;
  return {space.layout(), std::move(v)};
}

double top_fock_population(const Eigen::Ref<const Vector>& state, const HilbertSpace& space,
                           int levels) {
  const Eigen::Index m = space.motion_dim();
  double population = 0.0;
  for (Eigen::Index q = 0; q < space.qubit_dim(); ++q) {
    for (Eigen::Index n = std::max<Eigen::Index>(0, m - levels); n < m; ++n) {
      population += std::norm(state(space.index(q, n)));
    }
  }
  return population;
}

}  // namespace iongate
