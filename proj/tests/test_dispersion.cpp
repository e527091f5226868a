#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mlnf/constants.hpp"
#include "mlnf/dispersion.hpp"
#include "mlnf/errors.hpp"
#include "mlnf/quadrature.hpp"

using namespace mlnf;

namespace {

// single optical-scale pole: w0 = 2e15, wp = 1e15, gamma = 1e14 rad/s
Material single_pole_eps() {
  return Material::lorentz({{{2e15, 1e15, 1e14}}, {}});
}

Material two_pole() {
  DispersionModel m;
  m.eps_poles = {{2e15, 1e15, 1e14}, {3.5e15, 0.8e15, 2.5e14}};
  m.mu_poles = {{1.6e15, 0.9e15, 3e14}};
  return Material::lorentz(m);
}

}  // namespace

TEST_CASE("vacuum response") {
  Material v = Material::vacuum();
  CHECK(epsilon(v, 1e15) == cdouble(1.0, 0.0));
  CHECK(mu(v, 1e15) == cdouble(1.0, 0.0));
  CHECK(coupling_alpha(v, 1e15) == 0.0);
  CHECK(coupling_beta(v, 1e15) == 0.0);
}

TEST_CASE("single pole direct substitution") {
  // units 1e15 rad/s: w0=2, wp=1, gamma=0.1, w=1 -> eps = 1 + 1/(4-1-0.1i)
  Material m = Material::lorentz({{{2e15, 1e15, 0.1e15}}, {}});
  cdouble expect = 1.0 + 1.0 / cdouble(3.0, -0.1);
  cdouble got = epsilon(m, 1e15);
  CHECK(std::abs(got - expect) < 1e-14 * std::abs(expect));
}

TEST_CASE("high-frequency transparency") {
  Material m = single_pole_eps();
  cdouble e = epsilon(m, 1e6 * 2e15);
  CHECK(std::abs(e - 1.0) < 1e-9);
  Material mm = two_pole();
  CHECK(std::abs(mu(mm, 1e6 * 2e15) - 1.0) < 1e-9);
}

TEST_CASE("omega <= 0 rejected") {
  Material m = single_pole_eps();
  CHECK_THROWS_AS(epsilon(m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon(m, -1e15), std::invalid_argument);
  CHECK_THROWS_AS(mu(m, -1.0), std::invalid_argument);
}

TEST_CASE("reflection principle on random upper-half-plane frequencies") {
  Material m = two_pole();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(0.1e15, 6e15), im(0.0, 2e15);
  for (int i = 0; i < 100; ++i) {
    cdouble w(re(rng), im(rng));
    cdouble e1 = epsilon_c(m, w);
    cdouble e2 = std::conj(epsilon_c(m, -std::conj(w)));
    CHECK(std::abs(e1 - e2) < 1e-12 * std::abs(e1));
    cdouble m1 = mu_c(m, w);
    cdouble m2 = std::conj(mu_c(m, -std::conj(w)));
    CHECK(std::abs(m1 - m2) < 1e-12 * std::abs(m1));
  }
}

TEST_CASE("passivity: Im eps > 0 and Im(-1/mu) >= 0 for omega > 0") {
  Material m = two_pole();
  for (double w = 1e13; w < 2e16; w *= 1.37) {
    CHECK(epsilon(m, w).imag() > 0.0);
    CHECK((-1.0 / mu(m, w)).imag() > 0.0);
  }
}

TEST_CASE("coupling coefficients close their defining expressions") {
  Material m = two_pole();
  PhysicalConstants pc;
  for (double w : {0.7e15, 1.6e15, 2.0e15, 4.4e15}) {
    double a = coupling_alpha(m, w);
    double expect_a2 = 2.0 * pc.eps0 * w * epsilon(m, w).imag() / kPi;
    CHECK(std::abs(a * a - expect_a2) <= 1e-14 * expect_a2);
    double b = coupling_beta(m, w);
    double expect_b2 = 2.0 * w * (-1.0 / mu(m, w)).imag() / (kPi * pc.mu0);
    CHECK(std::abs(b * b - expect_b2) <= 1e-14 * expect_b2);
    CHECK(std::isfinite(b));
  }
}

TEST_CASE("matching material hits requested eps and mu") {
  const double w = 3e8;
  Material m = Material::matching(w, {2.0, 1.0}, {1.5, 0.3});
  CHECK(std::abs(epsilon(m, w) - cdouble(2.0, 1.0)) < 1e-12);
  CHECK(std::abs(mu(m, w) - cdouble(1.5, 0.3)) < 1e-12);
  Material mv = Material::matching(w, {1.0, 0.0}, {1.0, 0.0});
  CHECK(mv.is_vacuum());
  // a gain medium has no passive pole representation
  CHECK_THROWS_AS(Material::matching(w, {2.0, -0.5}, {1.0, 0.0}), ModelViolationError);
}

TEST_CASE("chi_time_domain: causality and small-tau limit") {
  Material m = single_pole_eps();
  CHECK(chi_time_domain(m, -1e-15, SusceptibilityKind::Electric) == 0.0);
  CHECK(chi_time_domain(m, -1e-30, SusceptibilityKind::Electric) == 0.0);
  CHECK(chi_time_domain(m, 0.0, SusceptibilityKind::Electric) == 0.0);
  // tau -> 0+: chi ~ 2 pi wp^2 tau
  const double tau = 1e-20;
  double v = chi_time_domain(m, tau, SusceptibilityKind::Electric);
  CHECK(v == doctest::Approx(2.0 * kPi * 1e30 * tau).epsilon(1e-6));
}

TEST_CASE("chi_time_domain matches the numerical inverse transform") {
  Material m = single_pole_eps();
  const double gamma = 1e14;
  const double w0 = 2e15;
  for (double tau : {1.0 / gamma, 0.3 / w0, 2.5 / w0}) {
    // chi(tau) = 2 Re int_0^inf chi_w e^{-i w tau} dw; chi decays like
    // 1/w^2, so a plain truncated adaptive integral with a pole ladder
    // and half-period panels suffices
    auto f = [&](double w) {
      return chi_eps(m, w) * std::exp(cdouble(0, -1) * w * tau);
    };
    std::vector<double> breaks;
    for (double fac : {-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0})
      breaks.push_back(w0 + fac * gamma);
    const double cutoff = 2e4 * w0;
    const cdouble val = integrate_adaptive(f, 0.0, cutoff, 1e-16, 1e-12, breaks,
                                           kPi / std::max(tau, 0.5 / w0) / 2.0);
    const double numeric = 2.0 * val.real();
    const double closed = chi_time_domain(m, tau, SusceptibilityKind::Electric);
    const double scale = 2.0 * kPi * 1e30 / std::sqrt(w0 * w0 - 0.25 * gamma * gamma);
    CHECK(std::abs(numeric - closed) < 1e-6 * scale);
  }
}

TEST_CASE("overdamped pole uses the hyperbolic branch") {
  Material m = Material::lorentz({{{1e15, 1e15, 3e15}}, {}});
  const double tau = 1e-15;
  double v = chi_time_domain(m, tau, SusceptibilityKind::Electric);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  // cross-validate against the inverse transform
  auto f = [&](double w) { return chi_eps(m, w) * std::exp(cdouble(0, -1) * w * tau); };
  std::vector<double> deltas{5e-17, 2.5e-17, 1.25e-17, 6.25e-18};
  auto reg = line_integrate_regularized(f, deltas, 22.0 / deltas.back(), {},
                                        kPi / tau);
  CHECK(std::abs(2.0 * reg.value.real() - v) < 1e-5 * std::abs(v));
}

TEST_CASE("Kramers-Kronig residual for one- and two-pole models") {
  auto rep1 = verify_kramers_kronig(single_pole_eps(),
                                    {0.5e15, 1.5e15, 2.0e15, 2.6e15, 5e15}, 3e-4);
  CHECK(rep1.residual < 1e-6);
  CHECK(rep1.converged);

  auto rep2 = verify_kramers_kronig(two_pole(),
                                    {0.5e15, 1.6e15, 2.0e15, 3.4e15, 6e15}, 3e-4);
  CHECK(rep2.residual < 1e-5);
  CHECK(rep2.converged);

  auto repv = verify_kramers_kronig(Material::vacuum(), {1.0}, 1e-3);
  CHECK(repv.residual == 0.0);
}

TEST_CASE("Kramers-Kronig residual shrinks as the window refines") {
  auto rep = verify_kramers_kronig(single_pole_eps(),
                                   {0.5e15, 1.5e15, 2.6e15, 5e15}, 2e-3);
  REQUIRE(rep.sweep.size() >= 2);
  CHECK(rep.sweep.back().second <= rep.sweep.front().second);
}

TEST_CASE("KK coverage error when the grid misses the poles") {
  CHECK_THROWS_AS(verify_kramers_kronig(single_pole_eps(), {1e12, 2e12}, 1e-3),
                  CoverageError);
}

TEST_CASE("coupling identity") {
  Material m = two_pole();
  const double w0 = 2e15;
  auto rep = verify_coupling_identity(
      m, {-1.0 / w0, 0.5 / w0, 1.0 / (0.1 * w0), 2.7 / w0});
  CHECK(rep.residual < 1e-4);
  CHECK(rep.converged);

  auto repv = verify_coupling_identity(Material::vacuum(), {1.0});
  CHECK(repv.residual == 0.0);
}

TEST_CASE("lossless-mu material keeps beta real and zero") {
  Material m = single_pole_eps();
  for (double w = 1e14; w < 1e16; w *= 2.0)
    CHECK(coupling_beta(m, w) == 0.0);
}
