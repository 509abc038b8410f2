#include "iongate/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace iongate {

double bessel_j(int n, double x) {
  if (std::abs(x) > 8.0) throw std::domain_error("bessel_j: argument outside |x| <= 8");
  const int order = std::abs(n);
  // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x).
  double sign = 1.0;
  if (n < 0 && (order % 2) == 1) sign = -sign;
  if (x < 0.0 && (order % 2) == 1) sign = -sign;
  const double half = 0.5 * std::abs(x);
  if (half == 0.0) return order == 0 ? 1.0 : 0.0;

  double term = 1.0;
  for (int k = 1; k <= order; ++k) term *= half / k;
  const double q = half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * (k + order));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > q) break;
  }
  return sign * sum;
}

}  // namespace iongate
