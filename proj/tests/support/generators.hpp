#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include <Eigen/Dense>

namespace iongate::testing {

// SplitMix64; deterministic across platforms, unlike std distributions.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  int integer(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform in the disk of the given radius.
  std::complex<double> in_disk(double radius) {
    return std::polar(radius * std::sqrt(unit()), uniform(0.0, 2.0 * std::numbers::pi));
  }

  Eigen::VectorXcd state(Eigen::Index dim) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = {normal(), normal()};
    return v / v.norm();
  }

  // Mixed state from a random Ginibre matrix.
  Eigen::MatrixXcd density(Eigen::Index dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = {normal(), normal()};
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    return rho / rho.trace();
  }

  Eigen::MatrixXcd hermitian(Eigen::Index dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = {normal(), normal()};
    }
    return 0.5 * (g + g.adjoint());
  }

 private:
  std::uint64_t state_;
};

}  // namespace iongate::testing
