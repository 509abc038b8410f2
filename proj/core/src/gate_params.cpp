#include "iongate/gate_params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "iongate/errors.hpp"

namespace iongate {

GateParams GateParams::molmer_sorensen(double eta, double omega, double epsilon, double zeta,
                                       int loops) {
  GateParams p;
  p.eta = eta;
  p.omega = omega;
  p.epsilon = epsilon;
  p.delta = p.nu - epsilon;
  p.zeta = zeta;
  p.loops = loops;
  p.type = GateType::MolmerSorensen;
  return p;
}

GateParams GateParams::sigma_z(double eta, double omega, double epsilon, double zeta, int loops) {
  GateParams p;
  p.eta = eta;
  p.omega = omega;
  p.epsilon = epsilon;
  p.delta = 0.5 * (p.nu - epsilon);
  p.zeta = zeta;
  p.loops = loops;
  p.type = GateType::SigmaZ;
  return p;
}

void GateParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("GateParams: " + what); };
  if (!(nu > 0.0)) fail("nu must be positive");
  if (!(eta >= 0.0)) fail("eta must be non-negative");
  if (!(omega >= 0.0)) fail("omega must be non-negative");
  if (!std::isfinite(delta) || !std::isfinite(epsilon) || !std::isfinite(zeta) ||
      !std::isfinite(phi)) {
    fail("non-finite parameter");
  }
  if (!(std::abs(epsilon) < nu)) fail("|epsilon| must be below nu");
  if (num_ions < 1 || num_ions > 12) fail("num_ions must be in [1, 12]");
  if (loops < 1) fail("loops must be at least 1");
  if (type == GateType::Unconstrained) {
    if (delta < 0.0) fail("delta must be non-negative");
    return;
  }
  if (!(delta > 0.0)) fail("delta must be positive");
  if (type == GateType::SigmaZ && std::abs(delta - 0.5 * (nu - epsilon)) > kModeTolerance) {
    throw ModeError("sigma_z gate needs delta = (nu - epsilon)/2");
  }
  if (type == GateType::MolmerSorensen && std::abs(delta - (nu - epsilon)) > kModeTolerance) {
    throw ModeError("Molmer-Sorensen gate needs delta = nu - epsilon");
  }
}

double GateParams::gate_time() const {
  if (epsilon == 0.0) throw std::invalid_argument("gate time undefined for epsilon = 0");
  return loops * 2.0 * std::numbers::pi / std::abs(epsilon);
}

}  // namespace iongate
