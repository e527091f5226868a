// Causal magnetodielectric response: sums of Lorentz poles for the
// electric and magnetic susceptibilities,
//
//   chi(w) = sum_p wp^2 / (w0^2 - w^2 - i gamma w),
//   eps(w) = 1 + chi_e(w),   mu(w) = 1 / (1 - chi_m(w)),
//
// the reservoir coupling coefficients alpha/beta, the closed-form
// time-domain susceptibility, and the dispersion-side identity checks
// (Kramers-Kronig, reservoir coupling identity).
#pragma once

#include <complex>
#include <vector>

#include "mlnf/linalg.hpp"
#include "mlnf/report.hpp"

namespace mlnf {

struct LorentzPole {
  double omega0;  // resonance (rad/s), > 0
  double omegap;  // strength (rad/s), > 0
  double gamma;   // damping (rad/s), > 0
};

struct DispersionModel {
  std::vector<LorentzPole> eps_poles;
  std::vector<LorentzPole> mu_poles;
};

class Material {
 public:
  static Material vacuum() { return Material{}; }
  static Material lorentz(DispersionModel model);
  // single-pole models hitting given eps, mu exactly at omega
  // (requires Im eps > 0 or eps == 1, and Im(-1/mu) > 0 or mu == 1)
  static Material matching(double omega, cdouble eps, cdouble mu);

  bool is_vacuum() const { return vacuum_; }
  const DispersionModel& model() const { return model_; }

 private:
  bool vacuum_ = true;
  DispersionModel model_;
};

// chi at complex frequency (upper half-plane analytic continuation)
cdouble chi_eps(const Material& m, cdouble omega);
cdouble chi_mu(const Material& m, cdouble omega);

// eps, mu at positive real frequency; omega <= 0 -> invalid_argument
cdouble epsilon(const Material& m, double omega);
cdouble mu(const Material& m, double omega);

// analytic continuations (used by contour-based checks)
cdouble epsilon_c(const Material& m, cdouble omega);
cdouble mu_c(const Material& m, cdouble omega);

// reservoir coupling coefficients, real and >= 0:
//   alpha = sqrt(2 eps0 w Im eps / pi), beta = sqrt(2 w Im(-1/mu) / (pi mu0))
double coupling_alpha(const Material& m, double omega);
double coupling_beta(const Material& m, double omega);

enum class SusceptibilityKind { Electric, Magnetic };

// time-domain susceptibility: 0 for tau < 0; for each pole the damped
// sinusoid 2 pi (wp^2/wt) e^(-gamma tau/2) sin(wt tau), wt = sqrt(w0^2 - gamma^2/4)
// (hyperbolic branch when overdamped)
double chi_time_domain(const Material& m, double tau, SusceptibilityKind kind);
// d chi / d tau for tau != 0 (same closed form differentiated)
double chi_time_domain_derivative(const Material& m, double tau, SusceptibilityKind kind);

struct KramersKronigOptions {
  double pv_epsilon = 1e-3;   // exclusion half-width as a fraction of omega
  double cutoff_factor = 60.0;  // numeric cutoff = factor * max pole frequency
};

// checks Re chi(w) against (2/pi) PV int w' Im chi(w') / (w'^2 - w^2) dw'
// at each grid frequency; report residual = max relative deviation
IdentityReport verify_kramers_kronig(const Material& m,
                                     const std::vector<double>& omega_grid,
                                     double pv_epsilon,
                                     double tolerance = 1e-5);

// checks int_0^inf dW alpha_W^2 cos(W tau) ==
//   (eps0/2pi) [chi_e'(tau) + chi_e'(-tau)]  (and the beta / chi_m analogue)
// at each tau; residual normalized by the peak magnitude of the right side
IdentityReport verify_coupling_identity(const Material& m,
                                        const std::vector<double>& tau_values,
                                        double tolerance = 1e-4);

}  // namespace mlnf
