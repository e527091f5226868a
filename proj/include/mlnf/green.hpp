// Dyadic Green's function for the supported geometries, its curls, the
// far-field amplitude, and the auxiliary noise-source dyadics.
//
// The homogeneous-medium closed form is mu * G0(kt) with
// kt = (w/c) sqrt(eps mu) (principal branch, Im kt >= 0), where G0 is the
// free-space dyadic; the mu prefactor is required for
// (curl (1/mu) curl - k^2 eps) G = delta I to hold and is pinned by the
// finite-difference Helmholtz test.
#pragma once

#include <memory>
#include <optional>

#include "mlnf/constants.hpp"
#include "mlnf/geometry.hpp"
#include "mlnf/mie.hpp"
#include "mlnf/quadrature.hpp"

namespace mlnf {

struct GreenEval {
  Mat3c value;        // G(r, r')
  Mat3c curl_r;       // grad_r x G
  Mat3c curl_rprime;  // G x reversed-grad_{r'}
};

struct FarFieldAmplitude {
  Mat3c W;
  SolidAngle direction;
};

// free-space dyadic Green's function at (complex) wavenumber kappa
Mat3c green_vacuum_closed_form(cdouble kappa, const Vec3& r, const Vec3& rprime);
Mat3c green_vacuum_curl_field(cdouble kappa, const Vec3& r, const Vec3& rprime);
Mat3c green_vacuum_curl_source(cdouble kappa, const Vec3& r, const Vec3& rprime);

// closed form of Im G_vac: (k/4pi s)[cos s/s (I-3ss) + sin s/s^2 ((s^2-1)I - (s^2-3)ss)]
Mat3c im_green_vacuum_closed_form(double k, const Vec3& r, const Vec3& rprime);

// immutable per-(geometry, omega) evaluation context; the sphere series
// coefficients are built once and shared (thread-safe)
class Scene {
 public:
  // max_point_radius: largest |r| at which fields/modes will be evaluated
  // (sizes the series cap); 0 = default.  lcap_override forces a fixed
  // series length with the truncation check relaxed (convergence sweeps)
  Scene(Geometry geometry, double omega, double max_point_radius = 0.0,
        PhysicalConstants constants = {}, int lcap_override = 0);

  const Geometry& geometry() const { return geom_; }
  double omega() const { return omega_; }
  double k() const { return k_; }            // vacuum wavenumber w/c
  cdouble k_medium() const { return kmed_; }  // wavenumber in the medium
  cdouble eps() const { return eps_; }
  cdouble mu() const { return mu_; }
  const PhysicalConstants& constants() const { return pc_; }
  const MieSphere* mie() const { return mie_.get(); }

  GreenEval green(const Vec3& r, const Vec3& rprime) const;
  Mat3c green_value(const Vec3& r, const Vec3& rprime) const;
  Mat3c green_curl_source(const Vec3& r, const Vec3& rprime) const;

  FarFieldAmplitude farfield_amplitude(const SolidAngle& o, const Vec3& rprime) const;

  // A_e = k sqrt(Im eps(s)) G(r,s),  A_m = sqrt(Im(-1/mu(s))) [G(r,s) x grad'_s];
  // zero dyadics when s lies in vacuum
  std::pair<Mat3c, Mat3c> aux_dyadics(const Vec3& r, const Vec3& s) const;
  // G_e = i sqrt(hbar mu0 w^2/pi) A_e,  G_m = -i sqrt(hbar mu0 w^2/pi) A_m
  std::pair<Mat3c, Mat3c> scaled_dyadics(const Vec3& r, const Vec3& s) const;

  // validation helpers
  void require_off_surface(const Vec3& r) const;
  bool point_inside_sphere(const Vec3& r) const;

 private:
  Geometry geom_;
  double omega_, k_;
  cdouble eps_, mu_, kmed_;
  PhysicalConstants pc_;
  std::shared_ptr<const MieSphere> mie_;
};

// convenience wrappers constructing a Scene per call
GreenEval green(const Geometry& g, double omega, const Vec3& r, const Vec3& rprime);
FarFieldAmplitude farfield_amplitude(const Geometry& g, double omega,
                                     const SolidAngle& o, const Vec3& rprime);
std::pair<Mat3c, Mat3c> aux_dyadics(const Geometry& g, double omega, const Vec3& r,
                                    const Vec3& s);
std::pair<Mat3c, Mat3c> scaled_dyadics(const Geometry& g, double omega, const Vec3& r,
                                       const Vec3& s, const PhysicalConstants& pc);

}  // namespace mlnf
