// Spherical Bessel and Hankel functions of complex argument.
//
// h_n^(1) by upward recurrence from its closed forms at n = 0, 1 (stable:
// the y-part dominates growth in n). j_n by upward recurrence when
// |z| > order, otherwise downward Miller recurrence normalized against
// j_0 or j_1.
#pragma once

#include <complex>
#include <vector>

#include "mlnf/linalg.hpp"

namespace mlnf {

struct SphericalBessel {
  cdouble j, h, dj, dh;  // j_n, h_n^(1) and derivatives at z
};

// all orders 0..nmax at once
struct SphericalBesselTable {
  std::vector<cdouble> j, h, dj, dh;
};

SphericalBesselTable spherical_bessel_table(int nmax, cdouble z);

// single order; order >= 0, z != 0
SphericalBessel spherical_bessel_jh(int order, cdouble z);

// j_n only (valid at z = 0 too, where j_0 = 1, j_n>0 = 0)
std::vector<cdouble> spherical_j_table(int nmax, cdouble z);

// Riccati forms psi = z j_n(z), xi = z h_n(z) and derivatives
struct RiccatiTable {
  std::vector<cdouble> psi, dpsi, xi, dxi;
};

RiccatiTable riccati_table(int nmax, cdouble z);

}  // namespace mlnf
