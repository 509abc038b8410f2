#pragma once

namespace iongate {

// SigmaZ: delta = (nu - epsilon) / 2. MolmerSorensen: delta = nu - epsilon.
// Unconstrained skips the detuning relation (and allows delta = 0), for
// numerical checks that are not gates.
enum class GateType { SigmaZ, MolmerSorensen, Unconstrained };

inline constexpr double kModeTolerance = 1e-12;

// Control parameters of the bichromatic drive, in units where nu = 1.
struct GateParams {
  double nu = 1.0;
  double eta = 0.05;
  double omega = 0.0;
  double delta = 1.0;
  double epsilon = 0.0;
  double zeta = 0.0;
  double phi = 0.0;
  int num_ions = 2;
  int loops = 1;
  GateType type = GateType::Unconstrained;

  [[nodiscard]] static GateParams molmer_sorensen(double eta, double omega, double epsilon,
                                                  double zeta = 0.0, int loops = 1);
  [[nodiscard]] static GateParams sigma_z(double eta, double omega, double epsilon,
                                          double zeta = 0.0, int loops = 1);

  // Throws std::invalid_argument for out-of-range values and ModeError when
  // delta disagrees with the gate type.
  void validate() const;

  // loops * 2 pi / |epsilon|
  [[nodiscard]] double gate_time() const;
};

}  // namespace iongate
