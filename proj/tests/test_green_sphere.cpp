#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mlnf/errors.hpp"
#include "mlnf/green.hpp"

using namespace mlnf;

namespace {

const double kA = 1.0;
const double kOmega = 299792458.0;  // ka = 1

Scene lossy_scene(cdouble eps = {2.0, 1.0}, cdouble mu_v = {1.5, 0.3},
                  double max_r = 25.0) {
  Material m = Material::matching(kOmega, eps, mu_v);
  return Scene(Geometry::sphere_in_vacuum(kA, m), kOmega, max_r);
}

}  // namespace

TEST_CASE("reciprocity across all four region pairs") {
  Scene sc = lossy_scene();
  const Vec3 o1{1.7, 0.3, -0.6}, o2{-0.4, 1.5, 0.8};
  const Vec3 i1{0.3, -0.2, 0.4}, i2{-0.41, 0.12, 0.35};
  for (auto [p, q] : {std::pair{o1, o2}, std::pair{o1, i1}, std::pair{i2, o2},
                      std::pair{i1, i2}}) {
    const Mat3c Ga = sc.green(p, q).value;
    const Mat3c Gb = sc.green(q, p).value.transpose();
    CHECK(rel_dev(Ga, Gb) < 1e-10);
  }
}

TEST_CASE("sphere with vacuum material equals the vacuum closed form") {
  Scene sc(Geometry::sphere_in_vacuum(kA, Material::vacuum()), kOmega, 5.0);
  const Vec3 r{1.3, 0.2, -0.4}, rp{0.1, -1.2, 0.9};
  CHECK(rel_dev(sc.green(r, rp).value, green_vacuum_closed_form(sc.k(), r, rp)) <
        1e-13);
}

TEST_CASE("surface-adjacent points are rejected") {
  Scene sc = lossy_scene();
  const Vec3 on_sh = Vec3{0.6, 0.0, 0.8} * (kA * (1.0 + 5e-10));
  CHECK_THROWS_AS(sc.green(on_sh, Vec3{0, 0, 2.0}), SurfaceAmbiguityError);
  CHECK_THROWS_AS(sc.farfield_amplitude(SolidAngle{1.0, 0.0}, on_sh),
                  SurfaceAmbiguityError);
}

TEST_CASE("far-field extraction: r e^{-ikr} G converges to W at O(1/r)") {
  Scene sc = lossy_scene({2.0, 1.0}, {1.0, 0.0}, 1.2e4);
  const Vec3 rp{0.4, 1.3, -0.2};
  const SolidAngle o{1.1, 0.6};
  const Vec3 u = unit_vector(o);
  const Mat3c W = sc.farfield_amplitude(o, rp).W;

  std::vector<double> radii{1e2, 1e3, 1e4};
  std::vector<double> resid;
  std::vector<Mat3c> estimates;
  for (double R : radii) {
    const Mat3c G = sc.green(u * R, rp).value;
    const Mat3c est = (R * std::exp(cdouble(0, -1) * sc.k() * R)) * G;
    estimates.push_back(est);
    resid.push_back((est - W).max_abs() / W.max_abs());
  }
  // slope of log-residual vs log r within [0.9, 1.1]
  const double slope1 = std::log(resid[0] / resid[1]) / std::log(radii[1] / radii[0]);
  const double slope2 = std::log(resid[1] / resid[2]) / std::log(radii[2] / radii[1]);
  CHECK(slope1 > 0.9);
  CHECK(slope1 < 1.1);
  CHECK(slope2 > 0.9);
  CHECK(slope2 < 1.1);

  // two-point Richardson in 1/r from the last two radii:
  // est(R) = W + c/R  ->  W = est2 + (est2 - est1) R1/(R2 - R1)
  const Mat3c extr = estimates[2] + (radii[1] / (radii[2] - radii[1])) *
                                        (estimates[2] - estimates[1]);
  CHECK(rel_dev(extr, W) < 1e-6);
}

TEST_CASE("interior-source far field matches large-r extraction") {
  Scene sc = lossy_scene({2.0, 1.0}, {1.5, 0.3}, 1.2e4);
  const Vec3 rp{0.2, -0.3, 0.4};
  const SolidAngle o{0.9, -0.4};
  const Vec3 u = unit_vector(o);
  const Mat3c W = sc.farfield_amplitude(o, rp).W;
  std::vector<double> radii{1e3, 1e4};
  std::vector<Mat3c> estimates;
  for (double R : radii) {
    const Mat3c G = sc.green(u * R, rp).value;
    estimates.push_back((R * std::exp(cdouble(0, -1) * sc.k() * R)) * G);
  }
  const Mat3c extr = estimates[1] + (radii[0] / (radii[1] - radii[0])) *
                                        (estimates[1] - estimates[0]);
  CHECK(rel_dev(extr, W) < 1e-6);
}

TEST_CASE("transversality of the sphere far-field amplitude") {
  Scene sc = lossy_scene();
  for (const Vec3& rp : {Vec3{0.4, 1.3, -0.2}, Vec3{0.2, -0.3, 0.4}}) {
    for (const SolidAngle& o :
         {SolidAngle{0.3, 0.2}, SolidAngle{1.6, 2.8}, SolidAngle{2.9, 5.6}}) {
      const Mat3c W = sc.farfield_amplitude(o, rp).W;
      const Vec3c proj = W.left_mul(Vec3c(unit_vector(o)));
      CHECK(proj.max_abs() / W.max_abs() < 1e-12);
    }
  }
}

TEST_CASE("curls of the sphere blocks match finite differences") {
  Scene sc = lossy_scene();
  const Vec3 r{1.6, 0.2, -0.5};
  const Vec3 s{0.25, -0.33, 0.1};
  const double h = 1e-6;
  const Mat3c cs = sc.green(r, s).curl_rprime;
  // FD of the value w.r.t. the source point
  Mat3c d[3];
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 e{0, 0, 0};
    e[axis] = h;
    d[axis] = (1.0 / (12.0 * h)) *
              (8.0 * (sc.green(r, s + e).value - sc.green(r, s - e).value) -
               (sc.green(r, s + e * 2.0).value - sc.green(r, s - e * 2.0).value));
  }
  Mat3c fd;
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < 3; ++p) {
      cdouble acc = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (int e = levi_civita(j, k, p); e != 0) acc += double(e) * d[k](i, j);
      fd(i, p) = acc;
    }
  CHECK(rel_dev(cs, fd) < 1e-8);
}

TEST_CASE("Mie truncation: +4 orders change results below 1e-10") {
  Material m = Material::matching(kOmega, {2.0, 1.0}, {1.5, 0.3});
  Geometry g = Geometry::sphere_in_vacuum(kA, m);
  const int lw = mie_series_length(std::abs(Scene(g, kOmega, 3.0).k_medium()) * kA);
  Scene s1(g, kOmega, 3.0, {}, 2 * lw + 8);
  Scene s2(g, kOmega, 3.0, {}, 2 * lw + 12);
  const Vec3 r{1.3, 0.4, -0.2}, rp{-0.3, 1.45, 0.7};
  CHECK(rel_dev(s1.green(r, rp).value, s2.green(r, rp).value) < 1e-10);
}

TEST_CASE("rotation invariance of the sphere Green's function") {
  Scene sc = lossy_scene();
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss;
  const Vec3 ax = Vec3{gauss(rng), gauss(rng), gauss(rng)}.normalized();
  const Rot3 Q = Rot3::z_to(ax);
  const Vec3 r{1.6, 0.2, -0.5}, rp{-0.3, 1.4, 0.9};
  const Mat3c G = sc.green(r, rp).value;
  const Mat3c Grot = sc.green(Q.apply(r), Q.apply(rp)).value;
  CHECK(rel_dev(Grot, Q.conjugate(G)) < 1e-9);
}
