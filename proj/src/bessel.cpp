#include "mlnf/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace mlnf {

std::vector<cdouble> spherical_j_table(int nmax, cdouble z) {
  if (nmax < 0) throw std::invalid_argument("spherical_j_table: nmax < 0");
  std::vector<cdouble> j(nmax + 1);
  if (std::abs(z) == 0.0) {
    j[0] = 1.0;
    return j;
  }
  const cdouble sz = std::sin(z), cz = std::cos(z);
  if (std::abs(z) > nmax + 2) {
    j[0] = sz / z;
    if (nmax >= 1) j[1] = sz / (z * z) - cz / z;
    for (int n = 2; n <= nmax; ++n)
      j[n] = (2.0 * n - 1.0) / z * j[n - 1] - j[n - 2];
    return j;
  }
  // Miller downward recurrence
  const int nstart = nmax + static_cast<int>(std::ceil(std::sqrt(40.0 * (nmax + 1)))) + 20;
  cdouble fp = 0.0, fc = 1e-280;
  std::vector<cdouble> tmp(nmax + 1, 0.0);
  for (int n = nstart; n >= 1; --n) {
    cdouble fm = (2.0 * n + 1.0) / z * fc - fp;
    fp = fc;
    fc = fm;
    if (n - 1 <= nmax) tmp[n - 1] = fc;
    if (std::abs(fc) > 1e250) {
      fc *= 1e-250;
      fp *= 1e-250;
      for (auto& t : tmp) t *= 1e-250;
    }
  }
  // normalize against the better-conditioned of j0, j1
  const cdouble j0 = sz / z;
  const cdouble j1 = sz / (z * z) - cz / z;
  cdouble scale;
  if (nmax >= 1 && std::abs(j1) > std::abs(j0) && std::abs(tmp[1]) > 0.0)
    scale = j1 / tmp[1];
  else
    scale = j0 / tmp[0];
  for (int n = 0; n <= nmax; ++n) j[n] = tmp[n] * scale;
  return j;
}

SphericalBesselTable spherical_bessel_table(int nmax, cdouble z) {
  if (nmax < 0) throw std::invalid_argument("spherical_bessel_table: nmax < 0");
  if (std::abs(z) == 0.0)
    throw std::domain_error("spherical_bessel_table: h_n undefined at z = 0");
  SphericalBesselTable t;
  t.j = spherical_j_table(nmax, z);
  t.h.resize(nmax + 1);
  const cdouble eiz = std::exp(cdouble(0, 1) * z);
  t.h[0] = -cdouble(0, 1) * eiz / z;
  if (nmax >= 1) t.h[1] = -eiz * (z + cdouble(0, 1)) / (z * z);
  for (int n = 2; n <= nmax; ++n)
    t.h[n] = (2.0 * n - 1.0) / z * t.h[n - 1] - t.h[n - 2];
  t.dj.resize(nmax + 1);
  t.dh.resize(nmax + 1);
  // z_0' = -z_1
  const cdouble j1 = nmax >= 1 ? t.j[1] : std::sin(z) / (z * z) - std::cos(z) / z;
  const cdouble h1 = nmax >= 1 ? t.h[1] : -eiz * (z + cdouble(0, 1)) / (z * z);
  t.dj[0] = -j1;
  t.dh[0] = -h1;
  for (int n = 1; n <= nmax; ++n) {
    t.dj[n] = t.j[n - 1] - (n + 1.0) / z * t.j[n];
    t.dh[n] = t.h[n - 1] - (n + 1.0) / z * t.h[n];
  }
  return t;
}

SphericalBessel spherical_bessel_jh(int order, cdouble z) {
  if (order < 0) throw std::invalid_argument("spherical_bessel_jh: order < 0");
  const auto t = spherical_bessel_table(order, z);
  return {t.j[order], t.h[order], t.dj[order], t.dh[order]};
}

RiccatiTable riccati_table(int nmax, cdouble z) {
  const auto t = spherical_bessel_table(nmax, z);
  RiccatiTable r;
  r.psi.resize(nmax + 1);
  r.dpsi.resize(nmax + 1);
  r.xi.resize(nmax + 1);
  r.dxi.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    r.psi[n] = z * t.j[n];
    r.xi[n] = z * t.h[n];
    if (n == 0) {
      r.dpsi[n] = t.j[0] + z * t.dj[0];
      r.dxi[n] = t.h[0] + z * t.dh[0];
    } else {
      // (z z_n)' = z z_{n-1} - n z_n
      r.dpsi[n] = z * t.j[n - 1] - double(n) * t.j[n];
      r.dxi[n] = z * t.h[n - 1] - double(n) * t.h[n];
    }
  }
  return r;
}

}  // namespace mlnf
