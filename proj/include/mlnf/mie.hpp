// Vector spherical wave machinery for a single sphere: angular functions,
// the four-region scattering/transmission coefficients obtained from the
// tangential matching conditions, bilinear dyadic series for the Green's
// function blocks, their source/field curls and far-field limits, and the
// plane-wave scattering mode series.
//
// All series are evaluated in a two-point frame with the source point on
// the +z axis (and the field point anywhere); callers rotate.  In that
// frame the azimuthal sum collapses to m in {0, 1}.
#pragma once

#include <array>
#include <complex>
#include <vector>

#include "mlnf/bessel.hpp"
#include "mlnf/linalg.hpp"
#include "mlnf/quadrature.hpp"

namespace mlnf {

// pi_n = P_n^1/sin(theta), tau_n = dP_n^1/dtheta, P_n at x = cos(theta)
// (no Condon-Shortley phase), orders 0..nmax
struct AngularTable {
  std::vector<double> pi, tau, P;
};

AngularTable angular_table(int nmax, double costheta);

// Wiscombe-style series length for size parameter x
int mie_series_length(double x);

enum class Region { Outside, Inside };

// which derivative of the dyadic is requested
enum class GreenDeriv { None, CurlField, CurlSource };

class MieSphere {
 public:
  // k: vacuum wavenumber, a: radius, eps/mu: interior constants at omega;
  // strict = false silences the truncation check (used by convergence
  // sweeps probing deliberately short series)
  MieSphere(double k, double a, cdouble eps, cdouble mu, int lcap,
            bool strict = true);

  double k() const { return k_; }
  double a() const { return a_; }
  cdouble eps() const { return eps_; }
  cdouble mu() const { return mu_; }
  cdouble k_interior() const { return k1_; }
  int lcap() const { return lcap_; }

  // scattering-block dyadic with source on +z at radius rp (same-region
  // homogeneous direct part NOT included); scale_hint sets the magnitude
  // against which tail convergence is judged (e.g. the direct-part size);
  // throws TruncationError if the series tail has not converged at lcap
  Mat3c block(const Vec3& r_frame, double rp, Region field_region,
              Region source_region, GreenDeriv deriv,
              double scale_hint = 0.0) const;

  // r -> infinity limit of the block along direction o (coefficient of
  // e^{ikr}/r); source at radius rp on +z, either region
  Mat3c farfield_block(const SolidAngle& o_frame, double rp,
                       Region source_region) const;

  // plane-wave mode series for incidence +z, polarization +x: outside the
  // sphere this is the scattered part only (add the incident wave);
  // inside it is the full transmitted mode
  Vec3c mode_series(const Vec3& r_frame) const;

  // r -> infinity limit of the scattered mode series along o
  Vec3c mode_farfield(const SolidAngle& o_frame) const;

  // per-order coefficients (index n, 1..lcap)
  const std::vector<cdouble>& coef_B() const { return B_; }
  const std::vector<cdouble>& coef_A() const { return A_; }
  const std::vector<cdouble>& coef_C() const { return C_; }
  const std::vector<cdouble>& coef_D() const { return D_; }

 private:
  struct SourceRadial {
    std::vector<cdouble> z, Dz, z_over_rho;
    cdouble prefactor;
    cdouble kappa;
  };
  SourceRadial source_radial(double rp, Region source_region, int nmax) const;
  const std::vector<cdouble>& coefM(Region fr, Region sr) const;
  const std::vector<cdouble>& coefN(Region fr, Region sr) const;
  // orders needed for the geometric tail of a block evaluation
  int orders_for(double r_field, double r_source, Region fr, Region sr) const;

  // coefficient families hit floating-point range limits at different
  // orders; track a cap per family
  enum { kFamilyBA = 0, kFamilyCD = 1, kFamilyRS = 2, kFamilyTU = 3 };
  static int family_of(Region fr, Region sr);

  double k_, a_;
  cdouble eps_, mu_, m_, k1_;
  int lcap_;
  std::array<int, 4> caps_{};
  bool strict_ = true;
  // source outside: exterior reflection B (TE), A (TM); interior
  // transmission C (TE), D (TM).  source inside: interior reflection R
  // (TE), S (TM); exterior transmission T (TE), U (TM)
  std::vector<cdouble> B_, A_, C_, D_, R_, S_, T_, U_;
};

// principal square root with Im >= 0 (ties broken toward Re > 0)
cdouble sqrt_upper_half(cdouble z);

}  // namespace mlnf
