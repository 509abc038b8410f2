#pragma once

namespace iongate {

// Bessel function of the first kind J_n(x) by its ascending series.
// Accurate to ~1e-13 absolute for |x| <= 8; throws std::domain_error beyond.
[[nodiscard]] double bessel_j(int n, double x);

}  // namespace iongate
