#include "iongate/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "iongate/errors.hpp"
#include "iongate/operators.hpp"

namespace iongate {

namespace {

constexpr std::size_t kDriftCacheLimit = 64;

std::vector<double> composition(Scheme scheme) {
  if (scheme != Scheme::Fourth) return {1.0};
  const double cbrt2 = std::cbrt(2.0);
  const double outer = 1.0 / (2.0 - cbrt2);
  return {outer, -cbrt2 * outer, outer};
}

}  // namespace

Propagator::Propagator(const GateParams& params, PulseSchedule schedule, EvolveOptions options)
    : params_(params),
      schedule_(std::move(schedule)),
      options_(options),
      hamiltonian_(params, options.fock_cutoff, options.coupling) {
  if (options_.steps_per_cycle < 1) throw std::invalid_argument("steps_per_cycle must be >= 1");
}

const Propagator::Eigenbasis& Propagator::eigenbasis(double phi) const {
  auto it = bases_.find(phi);
  if (it != bases_.end()) return it->second;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian_.generator(phi));
  if (solver.info() != Eigen::Success) throw Error("coupling eigendecomposition failed");
  return bases_.emplace(phi, Eigenbasis{solver.eigenvectors(), solver.eigenvalues()})
      .first->second;
}

const Matrix& Propagator::drift(double phi, const Eigenbasis& basis, double duration) const {
  const auto key = std::make_pair(phi, duration);
  auto it = drifts_.find(key);
  if (it != drifts_.end()) return it->second;
  if (drifts_.size() >= kDriftCacheLimit) drifts_.clear();
  const Eigen::Index m = space().motion_dim();
  const Eigen::Index dim = space().dim();
  Vector phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    phases(i) = std::polar(1.0, -params_.nu * duration * static_cast<double>(i % m));
  }
  Matrix w = basis.vectors.adjoint() * (phases.asDiagonal() * basis.vectors);
  return drifts_.emplace(key, std::move(w)).first->second;
}

void Propagator::to_lab(Matrix& states, double t) const {
  const Eigen::Index m = space().motion_dim();
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    const auto n = static_cast<double>(i % m);
    if (n != 0.0) states.row(i) *= std::polar(1.0, -params_.nu * t * n);
  }
}

void Propagator::from_lab(Matrix& states, double t) const {
  const Eigen::Index m = space().motion_dim();
  for (Eigen::Index i = 0; i < states.rows(); ++i) {
    const auto n = static_cast<double>(i % m);
    if (n != 0.0) states.row(i) *= std::polar(1.0, params_.nu * t * n);
  }
}

void Propagator::advance(Matrix& lab, std::size_t segment, double a, double b) const {
  if (b <= a) return;
  const PulseSegment& seg = schedule_.segments()[segment];
  const double phi = params_.phi + seg.phi_offset;
  const double zeta = params_.zeta + seg.zeta_offset;
  const double peak = schedule_.peak(params_.omega);
  const Eigenbasis& basis = eigenbasis(phi);

  const double period = 2.0 * std::numbers::pi / params_.nu;
  const auto steps = std::max<long>(
      1, static_cast<long>(std::ceil((b - a) / period * options_.steps_per_cycle - 1e-9)));
  const double h = (b - a) / static_cast<double>(steps);
  const std::vector<double> coeffs = composition(options_.scheme);

  Matrix y = basis.vectors.adjoint() * lab;
  Matrix scratch(y.rows(), y.cols());
  Vector kick(y.rows());
  double t = a;
  const std::size_t total = coeffs.size() * static_cast<std::size_t>(steps);
  for (std::size_t k = 0; k < total; ++k) {
    const double c = coeffs[k % coeffs.size()];
    const double prev = k == 0 ? 0.0 : coeffs[(k - 1) % coeffs.size()];
    const double d = 0.5 * (prev + c) * h;
    scratch.noalias() = drift(phi, basis, d) * y;
    const double t_next = (k + 1 == total) ? b : t + c * h;
    double weight = 0.0;
    if (options_.scheme == Scheme::Midpoint) {
      const double mid = 0.5 * (t + t_next);
      weight = 2.0 * peak * seg.amplitude_scale * schedule_.envelope(mid) *
               std::cos(params_.delta * mid + zeta) * (t_next - t);
    } else {
      weight = 2.0 * peak * schedule_.modulated_integral(segment, t, t_next, params_.delta,
                                                         params_.zeta);
    }
    for (Eigen::Index i = 0; i < kick.size(); ++i) {
      kick(i) = std::polar(1.0, -weight * basis.values(i));
    }
    y.noalias() = kick.asDiagonal() * scratch;
    t = t_next;
  }
  scratch.noalias() = drift(phi, basis, 0.5 * coeffs.back() * h) * y;
  lab.noalias() = basis.vectors * scratch;
}

Matrix Propagator::evolve(const Matrix& initial, double t0, double t1) const {
  if (initial.rows() != space().dim()) throw DimensionError("initial states have wrong dimension");
  if (t0 < 0.0 || t1 < t0 || t1 > schedule_.total_duration() * (1.0 + 1e-12)) {
    throw std::out_of_range("evolution window [" + std::to_string(t0) + ", " +
                            std::to_string(t1) + "] outside the pulse schedule");
  }
  Matrix lab = initial;
  to_lab(lab, t0);
  const auto& bounds = schedule_.boundaries();
  double t = t0;
  while (t < t1) {
    const std::size_t seg = schedule_.segment_index(t);
    const double end = std::min(t1, bounds[seg + 1]);
    advance(lab, seg, t, end);
    if (end <= t) break;
    t = end;
  }
  from_lab(lab, t1);
  return lab;
}

std::vector<Matrix> Propagator::evolve_sampled(const Matrix& initial, double t0,
                                               const std::vector<double>& times) const {
  std::vector<Matrix> out;
  out.reserve(times.size());
  Matrix current = initial;
  double t = t0;
  for (double next : times) {
    if (next < t) throw std::invalid_argument("sample times must be ascending and >= t0");
    current = evolve(current, t, next);
    out.push_back(current);
    t = next;
  }
  return out;
}

void check_fock_guard(const Matrix& states, const HilbertSpace& space,
                      const Eigen::VectorXd* weights) {
  double worst = 0.0;
  double mixture = 0.0;
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    const double pop = top_fock_population(states.col(j), space);
    worst = std::max(worst, pop);
    if (weights != nullptr) mixture += (*weights)(j)*pop;
  }
  const double value = weights != nullptr ? mixture : worst;
  if (value > kFockGuardThreshold) {
    throw CutoffError("population " + std::to_string(value) + " in the top two Fock levels of " +
                      std::to_string(space.fock_cutoff()) + " exceeds the cutoff guard");
  }
}

namespace {

Matrix run_columns(const GateParams& params, const PulseSchedule& schedule,
                   const Matrix& initial, double t_final, const EvolveOptions& options) {
  const Propagator propagator(params, schedule, options);
  Matrix result = propagator.evolve(initial, 0.0, t_final);
  if (options.convergence_tolerance) {
    EvolveOptions finer = options;
    finer.steps_per_cycle *= 2;
    finer.convergence_tolerance.reset();
    const Propagator reference(params, schedule, finer);
    const double change = (reference.evolve(initial, 0.0, t_final) - result).cwiseAbs().maxCoeff();
    if (change > *options.convergence_tolerance) {
      throw ConvergenceError("doubling steps_per_cycle from " +
                             std::to_string(options.steps_per_cycle) + " changed the result by " +
                             std::to_string(change));
    }
  }
  return result;
}

}  // namespace

Matrix evolve_columns(const GateParams& params, const PulseSchedule& schedule,
                      const Matrix& initial, double t_final, const EvolveOptions& options) {
  Matrix result = run_columns(params, schedule, initial, t_final, options);
  check_fock_guard(result, HilbertSpace(params.num_ions, options.fock_cutoff));
  return result;
}

Operator evolve_unitary(const GateParams& params, const PulseSchedule& schedule, double t_final,
                        const EvolveOptions& options) {
  const HilbertSpace space(params.num_ions, options.fock_cutoff);
  const Matrix identity = Matrix::Identity(space.dim(), space.dim());
  Matrix u = run_columns(params, schedule, identity, t_final, options);
  Matrix ground(space.dim(), space.qubit_dim());
  for (Eigen::Index q = 0; q < space.qubit_dim(); ++q) ground.col(q) = u.col(space.index(q, 0));
  check_fock_guard(ground, space);
  return {space.layout(), std::move(u)};
}

Matrix evolve_ground_columns(const GateParams& params, const PulseSchedule& schedule,
                             double t_final, const EvolveOptions& options) {
  const HilbertSpace space(params.num_ions, options.fock_cutoff);
  Matrix initial = Matrix::Zero(space.dim(), space.qubit_dim());
  for (Eigen::Index q = 0; q < space.qubit_dim(); ++q) initial(space.index(q, 0), q) = 1.0;
  return evolve_columns(params, schedule, initial, t_final, options);
}

StateVector evolve_state(const Operator& u, const StateVector& psi) {
  if (!(u.layout() == psi.layout())) throw DimensionError("evolve_state: layout mismatch");
  return {psi.layout(), u.matrix() * psi.amplitudes()};
}

DensityMatrix evolve_state(const Operator& u, const DensityMatrix& rho) {
  if (!(u.layout() == rho.layout())) throw DimensionError("evolve_state: layout mismatch");
  return {rho.layout(), u.matrix() * rho.matrix() * u.matrix().adjoint(), rho.tail_mass()};
}

std::vector<double> stroboscopic_times(double delta, int count) {
  if (!(delta > 0.0)) throw std::invalid_argument("stroboscopic_times needs delta > 0");
  if (count < 0) throw std::invalid_argument("stroboscopic_times needs count >= 0");
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(count));
  const double period = 2.0 * std::numbers::pi / delta;
  for (int k = 1; k <= count; ++k) times.push_back(period * k);
  return times;
}

}  // namespace iongate
