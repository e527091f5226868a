#pragma once

#include <numbers>

namespace mlnf {

// SI values; eps0 derived from c and mu0 so c^2 eps0 mu0 == 1 holds exactly
struct PhysicalConstants {
  double c = 299792458.0;
  double mu0 = 4.0e-7 * std::numbers::pi;
  double eps0 = 1.0 / (mu0 * c * c);
  double hbar = 1.054571817e-34;
};

inline constexpr double kPi = std::numbers::pi;

}  // namespace mlnf
