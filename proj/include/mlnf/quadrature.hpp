// Quadrature rules: Gauss-Legendre, product rules on the unit sphere,
// adaptive complex line integration and the regularized (damped +
// Richardson-extrapolated) half-line integral.
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "mlnf/constants.hpp"
#include "mlnf/linalg.hpp"

namespace mlnf {

struct SolidAngle {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)
};

inline Vec3 unit_vector(const SolidAngle& o) {
  double st = std::sin(o.theta);
  return {st * std::cos(o.phi), st * std::sin(o.phi), std::cos(o.theta)};
}

inline SolidAngle solid_angle_of(const Vec3& u) {
  double ct = u.z / u.norm();
  ct = std::max(-1.0, std::min(1.0, ct));
  double phi = std::atan2(u.y, u.x);
  if (phi < 0.0) phi += 2.0 * kPi;
  return {std::acos(ct), phi};
}

// Gauss-Legendre nodes/weights on [-1, 1]
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// product rule over the unit sphere: Gauss-Legendre in cos(theta)
// (degree+1 nodes) x uniform trapezoid in phi (2*degree+2 nodes)
struct SphereRule {
  std::vector<SolidAngle> nodes;
  std::vector<double> weights;  // sum to 4 pi
  int degree = 0;

  std::size_t size() const { return nodes.size(); }
};

SphereRule sphere_quadrature(int degree);

// adaptive Gauss-Kronrod 7/15 on [a, b]; breakpoints become panel edges,
// max_panel_width caps the initial panel size (0 = no cap)
cdouble integrate_adaptive(const std::function<cdouble(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           const std::vector<double>& breakpoints = {},
                           double max_panel_width = 0.0);

struct RegularizedIntegral {
  cdouble value{};        // Richardson-extrapolated delta -> 0
  double error_estimate;  // |difference of the last two extrapolants|
  std::vector<cdouble> damped_values;  // integral at each delta
};

// int_0^cutoff f(w) e^{-delta w} dw for each delta (strictly decreasing,
// >= 3 entries), then Richardson extrapolation assuming leading error
// linear in delta. Throws ConvergenceError when the extrapolant diverges.
RegularizedIntegral line_integrate_regularized(
    const std::function<cdouble(double)>& f, const std::vector<double>& delta_values,
    double cutoff, const std::vector<double>& breakpoints = {},
    double max_panel_width = 0.0, double abs_tol = 1e-13, double rel_tol = 1e-11);

// Richardson extrapolation to 0 of samples (x_i, y_i) with x strictly
// decreasing, assuming y analytic in x
cdouble richardson_extrapolate(const std::vector<double>& x, const std::vector<cdouble>& y);

}  // namespace mlnf
