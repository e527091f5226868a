#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mlnf/bessel.hpp"
#include "mlnf/constants.hpp"

using namespace mlnf;

namespace {

struct RefValue {
  int n;
  cdouble z, j, h;
};

// arbitrary-precision reference values (40-digit evaluation, frozen)
const RefValue kRef[] = {
    {0, {0.7, 0.0}, {0.92031098176813009, 0.0}, {0.92031098176813009, -1.0926316961206979}},
    {1, {2.0, 0.5}, {0.46543564095115258, 0.0092178093664655527}, {0.19634468146763115, -0.29789711368214086}},
    {3, {1.5, 0.3}, {0.02588851246214542, 0.015555540011717776}, {-2.1562014525485491, -2.6654837604153248}},
    {8, {5.0, 1.0}, {0.0018668760521948025, 0.0066814261013819298}, {-1.9848784052366769, -0.37249777934203414}},
    {20, {1.0, 0.0}, {7.537795722236873e-26, 0.0}, {7.537795722236873e-26, -3.2395922185789839e+23}},
    {12, {30.0, 2.0}, {0.10564722234503897, 0.029354700269434119}, {0.0051219886569620107, -0.0023796727196250935}},
    {5, {0.25, 0.0}, {9.3719811237268251e-8, 0.0}, {9.3719811237268251e-8, -3884190.0626637724}},
};

}  // namespace

TEST_CASE("frozen high-precision reference values") {
  for (const auto& r : kRef) {
    auto v = spherical_bessel_jh(r.n, r.z);
    CHECK(std::abs(v.j - r.j) / std::abs(r.j) < 1e-13);
    CHECK(std::abs(v.h - r.h) / std::abs(r.h) < 1e-13);
  }
}

TEST_CASE("j0 closed form") {
  for (cdouble z : {cdouble(0.3, 0.0), cdouble(2.0, 1.0), cdouble(7.5, -0.2)}) {
    auto v = spherical_bessel_jh(0, z);
    CHECK(std::abs(v.j - std::sin(z) / z) < 1e-14 * std::abs(std::sin(z) / z) + 1e-16);
  }
}

TEST_CASE("Wronskian j h' - j' h = i/z^2") {
  // orders 0..50, |z| in [0.1, 50], arg z in [0, pi/2]
  for (double az : {0.1, 0.5, 2.0, 10.0, 50.0}) {
    for (double arg : {0.0, 0.4, 0.8, 1.2, kPi / 2.0 * 0.99}) {
      const cdouble z = az * std::exp(cdouble(0, 1) * arg);
      const auto t = spherical_bessel_table(50, z);
      const cdouble target = cdouble(0, 1) / (z * z);
      for (int n = 0; n <= 50; ++n) {
        const cdouble w = t.j[n] * t.dh[n] - t.dj[n] * t.h[n];
        CHECK(std::abs(w - target) / std::abs(target) < 1e-10);
      }
    }
  }
}

TEST_CASE("downward recurrence engaged at high order, small argument") {
  // n = 20, z = 1: tiny but finite, no overflow
  auto v = spherical_bessel_jh(20, cdouble(1.0, 0.0));
  CHECK(std::isfinite(v.j.real()));
  CHECK(v.j.real() > 0.0);
  CHECK(v.j.real() < 1e-20);
}

TEST_CASE("h requested at z = 0 is a domain error") {
  CHECK_THROWS_AS(spherical_bessel_jh(2, cdouble(0.0, 0.0)), std::domain_error);
}

TEST_CASE("riccati derivatives consistent with direct derivatives") {
  const cdouble z(2.3, 0.7);
  const auto t = spherical_bessel_table(12, z);
  const auto r = riccati_table(12, z);
  for (int n = 0; n <= 12; ++n) {
    CHECK(std::abs(r.psi[n] - z * t.j[n]) < 1e-13 * std::abs(z * t.j[n]) + 1e-300);
    // (z j)' = j + z j'
    CHECK(std::abs(r.dpsi[n] - (t.j[n] + z * t.dj[n])) <
          1e-12 * std::abs(r.dpsi[n]) + 1e-15);
    CHECK(std::abs(r.dxi[n] - (t.h[n] + z * t.dh[n])) <
          1e-12 * std::abs(r.dxi[n]) + 1e-15);
  }
}
