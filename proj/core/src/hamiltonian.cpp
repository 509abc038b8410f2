#include "iongate/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "iongate/operators.hpp"

namespace iongate {

BichromaticHamiltonian::BichromaticHamiltonian(const GateParams& params, int fock_cutoff,
                                               Coupling coupling)
    : params_(params), space_(params.num_ions, fock_cutoff), coupling_(coupling) {
  params_.validate();
  const auto ops = fock_ops(fock_cutoff);
  const Matrix x = ops.a.matrix() + ops.a_dagger.matrix();
  Matrix e;
  if (coupling == Coupling::Full) {
    e = hermitian_expm(x, kI * params_.eta);
  } else {
    e = Matrix::Identity(x.rows(), x.cols()) + kI * params_.eta * x;
  }
  raising_ = kron(collective_spin(params_.num_ions, SpinComponent::Plus).matrix(), e);
}

Matrix BichromaticHamiltonian::generator(double phi) const {
  const Matrix up = std::polar(1.0, -phi) * raising_;
  return up + up.adjoint();
}

Operator BichromaticHamiltonian::at(double t, double rabi, double zeta, double phi) const {
  const double f = 2.0 * rabi * std::cos(params_.delta * t + zeta);
  Matrix h = f * generator(phi);
  const Eigen::Index m = space_.motion_dim();
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      const double dn = static_cast<double>(i % m - j % m);
      if (dn != 0.0) h(i, j) *= std::polar(1.0, params_.nu * t * dn);
    }
  }
  return {space_.layout(), std::move(h)};
}

Operator BichromaticHamiltonian::at(double t, const PulseSchedule& schedule) const {
  const PulseSegment& seg = schedule.segments()[schedule.segment_index(t)];
  return at(t, schedule.rabi(t, params_.omega), params_.zeta + seg.zeta_offset,
            params_.phi + seg.phi_offset);
}

Operator bichromatic_hamiltonian(const GateParams& params, double t, double envelope_value,
                                 bool lamb_dicke, int fock_cutoff) {
  if (envelope_value < 0.0) throw std::invalid_argument("envelope value must be non-negative");
  const BichromaticHamiltonian h(params, fock_cutoff,
                                 lamb_dicke ? Coupling::LambDicke : Coupling::Full);
  return h.at(t, params.omega * envelope_value, params.zeta, params.phi);
}

double carrier_phase_F(const GateParams& params, double t, const PulseSchedule* schedule) {
  if (t < 0.0) throw std::invalid_argument("carrier_phase_F needs t >= 0");
  if (schedule == nullptr) {
    if (params.delta == 0.0) return 2.0 * params.omega * std::cos(params.zeta) * t;
    return 2.0 * params.omega / params.delta *
           (std::sin(params.delta * t + params.zeta) - std::sin(params.zeta));
  }
  double total = 0.0;
  const auto& bounds = schedule->boundaries();
  for (std::size_t k = 0; k + 1 < bounds.size() && bounds[k] < t; ++k) {
    const double end = std::min(t, bounds[k + 1]);
    total += schedule->modulated_integral(k, bounds[k], end, params.delta, params.zeta);
  }
  return 2.0 * schedule->peak(params.omega) * total;
}

}  // namespace iongate
