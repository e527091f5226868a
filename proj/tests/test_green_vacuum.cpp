#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mlnf/errors.hpp"
#include "mlnf/green.hpp"

using namespace mlnf;

namespace {

const double kOmega = 3.2e8;  // -> k ~ 1.07 m^-1

// 4th-order central first derivative of a dyadic-valued function
template <typename F>
Mat3c fd_deriv(F f, int axis, double h) {
  Vec3 e{0, 0, 0};
  e[axis] = 1.0;
  return (1.0 / (12.0 * h)) *
         (8.0 * (f(e * h) - f(-(e * h))) - (f(e * (2.0 * h)) - f(-(e * (2.0 * h)))));
}

// curl-curl of each column via nested 4th-order first derivatives
template <typename G>
Mat3c fd_curl(G g, const Vec3& r0, double h, bool source_side) {
  // returns curl_r x G (field side) or G x reversed-grad (source side)
  Mat3c out;
  Mat3c d[3];
  for (int axis = 0; axis < 3; ++axis) {
    auto f = [&](const Vec3& dr) {
      return source_side ? g(Vec3{0, 0, 0}, r0 + dr) : g(r0 + dr, Vec3{0, 0, 0});
    };
    d[axis] = fd_deriv(f, axis, h);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cdouble s = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          if (!source_side) {
            // (curl G)_{ij} = eps_{kli} d_k G_{lj}
            if (int e = levi_civita(k, l, i); e != 0) s += double(e) * d[k](l, j);
          } else {
            // (G x grad')_{ij} = eps_{lkj} d'_k G_{il}
            if (int e = levi_civita(l, k, j); e != 0) s += double(e) * d[k](i, l);
          }
        }
      out(i, j) = s;
    }
  return out;
}

}  // namespace

TEST_CASE("vacuum closed form obeys the free-space Helmholtz equation (FD)") {
  Geometry g = Geometry::vacuum();
  Scene sc(g, kOmega);
  const double k = sc.k();
  const double lambda = 2.0 * kPi / k;
  const double h = 1e-4 * lambda;
  const Vec3 rp{0.1, -0.2, 0.05};
  const Vec3 r0 = rp + Vec3{0.9, 1.3, -0.7};

  // curl curl G - k^2 G column-wise via second differences
  auto gv = [&](const Vec3& r) { return sc.green(r, rp).value; };
  Mat3c ccurl;
  {
    // build from two nested FD curls (field side twice)
    auto curl1 = [&](const Vec3& r) {
      Mat3c d[3];
      for (int axis = 0; axis < 3; ++axis) {
        Vec3 e{0, 0, 0};
        e[axis] = 1.0;
        d[axis] = (1.0 / (12.0 * h)) *
                  (8.0 * (gv(r + e * h) - gv(r - e * h)) -
                   (gv(r + e * (2.0 * h)) - gv(r - e * (2.0 * h))));
      }
      Mat3c c;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          cdouble s = 0.0;
          for (int kk = 0; kk < 3; ++kk)
            for (int l = 0; l < 3; ++l)
              if (int e = levi_civita(kk, l, i); e != 0) s += double(e) * d[kk](l, j);
          c(i, j) = s;
        }
      return c;
    };
    Mat3c d2[3];
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 e{0, 0, 0};
      e[axis] = 1.0;
      d2[axis] = (1.0 / (12.0 * h)) *
                 (8.0 * (curl1(r0 + e * h) - curl1(r0 - e * h)) -
                  (curl1(r0 + e * (2.0 * h)) - curl1(r0 - e * (2.0 * h))));
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        cdouble s = 0.0;
        for (int kk = 0; kk < 3; ++kk)
          for (int l = 0; l < 3; ++l)
            if (int e = levi_civita(kk, l, i); e != 0) s += double(e) * d2[kk](l, j);
        ccurl(i, j) = s;
      }
  }
  const Mat3c res = ccurl - (k * k) * sc.green(r0, rp).value;
  CHECK(res.max_abs() / (k * k * sc.green(r0, rp).value.max_abs()) < 1e-6);
}

TEST_CASE("homogeneous lossy medium satisfies its Helmholtz equation (FD)") {
  Material m = Material::matching(kOmega, {2.0, 1.0}, {1.5, 0.3});
  Scene sc(Geometry::homogeneous(m), kOmega);
  const cdouble kt = sc.k_medium();
  const double lambda = 2.0 * kPi / std::abs(kt);
  const double h = 1e-4 * lambda;
  const Vec3 rp{0.0, 0.0, 0.0};
  const Vec3 r0{0.8, -0.5, 1.1};
  const cdouble k2em = sc.k() * sc.k() * sc.eps() * sc.mu();

  auto gv = [&](const Vec3& r) { return sc.green(r, rp).value; };
  // (1/mu)(curl curl - k^2 eps mu) G = 0 at r != r'
  auto curl1 = [&](const Vec3& r) {
    Mat3c d[3];
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 e{0, 0, 0};
      e[axis] = 1.0;
      d[axis] = (1.0 / (12.0 * h)) *
                (8.0 * (gv(r + e * h) - gv(r - e * h)) -
                 (gv(r + e * (2.0 * h)) - gv(r - e * (2.0 * h))));
    }
    Mat3c c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        cdouble s = 0.0;
        for (int kk = 0; kk < 3; ++kk)
          for (int l = 0; l < 3; ++l)
            if (int e = levi_civita(kk, l, i); e != 0) s += double(e) * d[kk](l, j);
        c(i, j) = s;
      }
    return c;
  };
  Mat3c ccurl;
  {
    Mat3c d2[3];
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 e{0, 0, 0};
      e[axis] = 1.0;
      d2[axis] = (1.0 / (12.0 * h)) *
                 (8.0 * (curl1(r0 + e * h) - curl1(r0 - e * h)) -
                  (curl1(r0 + e * (2.0 * h)) - curl1(r0 - e * (2.0 * h))));
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        cdouble s = 0.0;
        for (int kk = 0; kk < 3; ++kk)
          for (int l = 0; l < 3; ++l)
            if (int e = levi_civita(kk, l, i); e != 0) s += double(e) * d2[kk](l, j);
        ccurl(i, j) = s;
      }
  }
  const Mat3c res = ccurl - k2em * sc.green(r0, rp).value;
  CHECK(res.max_abs() / (std::abs(k2em) * sc.green(r0, rp).value.max_abs()) < 1e-6);
}

TEST_CASE("analytic curls match finite differences") {
  Scene sc(Geometry::vacuum(), kOmega);
  const Vec3 rp{0.2, 0.4, -0.1};
  const Vec3 r0{1.4, -0.8, 0.9};
  const double h = 1e-5;

  auto g2 = [&](const Vec3& r, const Vec3& rq) { return sc.green(r + r0, rq + rp).value; };
  const GreenEval ev = sc.green(r0, rp);
  const Mat3c cf_fd = fd_curl(g2, Vec3{0, 0, 0}, h, false);
  CHECK(rel_dev(ev.curl_r, cf_fd) < 1e-9);
  const Mat3c cs_fd = fd_curl(g2, Vec3{0, 0, 0}, h, true);
  CHECK(rel_dev(ev.curl_rprime, cs_fd) < 1e-9);
}

TEST_CASE("curl_rprime is minus the transposed swapped curl_r") {
  Scene sc(Geometry::vacuum(), kOmega);
  const Vec3 rp{0.2, 0.4, -0.1};
  const Vec3 r0{1.4, -0.8, 0.9};
  const Mat3c cs = sc.green(r0, rp).curl_rprime;
  const Mat3c cf_sw = sc.green(rp, r0).curl_r;
  CHECK(rel_dev(cs, -cf_sw.transpose()) < 1e-13);
}

TEST_CASE("vacuum far-field amplitude") {
  Scene sc(Geometry::vacuum(), kOmega);
  const SolidAngle o{1.1, 0.7};
  const Vec3 u = unit_vector(o);

  // r' = 0: W = (I - uu)/4pi exactly
  auto ff0 = sc.farfield_amplitude(o, Vec3{0, 0, 0});
  const Mat3c expect = (1.0 / (4.0 * kPi)) * (Mat3c::identity() - Mat3c::outer(u, u));
  CHECK(rel_dev(ff0.W, expect) < 1e-15);

  // transversality u . W == 0 exactly
  auto ff = sc.farfield_amplitude(o, Vec3{0.7, -0.4, 1.2});
  CHECK(ff.W.left_mul(Vec3c(u)).max_abs() < 1e-16);
}

TEST_CASE("reciprocity of the vacuum and homogeneous closed forms") {
  Scene sv(Geometry::vacuum(), kOmega);
  const Vec3 a{1.0, 0.3, -0.2}, b{-0.4, 0.8, 0.6};
  CHECK(rel_dev(sv.green(a, b).value, sv.green(b, a).value.transpose()) < 1e-14);

  Material m = Material::matching(kOmega, {2.0, 1.0}, {1.0, 0.0});
  Scene sh(Geometry::homogeneous(m), kOmega);
  CHECK(rel_dev(sh.green(a, b).value, sh.green(b, a).value.transpose()) < 1e-13);
}

TEST_CASE("coincidence rejected") {
  Scene sc(Geometry::vacuum(), kOmega);
  const Vec3 a{1.0, 0.3, -0.2};
  CHECK_THROWS_AS(sc.green(a, a), CoincidenceError);
}

TEST_CASE("homogeneous geometry has no far-field amplitude") {
  Material m = Material::matching(kOmega, {2.0, 1.0}, {1.0, 0.0});
  Scene sc(Geometry::homogeneous(m), kOmega);
  CHECK_THROWS_AS(sc.farfield_amplitude(SolidAngle{0.3, 0.1}, Vec3{1, 0, 0}),
                  std::domain_error);
}

TEST_CASE("aux dyadics vanish in vacuum, A_m vanishes for lossless mu") {
  Material m = Material::matching(kOmega, {2.0, 1.0}, {1.0, 0.0});
  Geometry g = Geometry::sphere_in_vacuum(1.0, m);
  Scene sc(g, kOmega, 3.0);
  auto [ae_vac, am_vac] = sc.aux_dyadics(Vec3{2.0, 0, 0}, Vec3{0, 2.0, 0});
  CHECK(ae_vac.max_abs() == 0.0);
  CHECK(am_vac.max_abs() == 0.0);

  auto [ae, am] = sc.aux_dyadics(Vec3{2.0, 0, 0}, Vec3{0, 0.4, 0});
  CHECK(ae.max_abs() > 0.0);
  CHECK(am.max_abs() == 0.0);  // Im(-1/mu) = 0

  // A_e recomputed from its definition
  const Mat3c expect = (sc.k() * std::sqrt(sc.eps().imag())) *
                       sc.green(Vec3{2.0, 0, 0}, Vec3{0, 0.4, 0}).value;
  CHECK(rel_dev(ae, expect) < 1e-13);
}

TEST_CASE("scaled dyadics carry +-i sqrt(hbar mu0 w^2/pi)") {
  Material m = Material::matching(kOmega, {2.0, 1.0}, {1.5, 0.3});
  Geometry g = Geometry::sphere_in_vacuum(1.0, m);
  Scene sc(g, kOmega, 3.0);
  const Vec3 r{1.8, 0.3, 0.2}, s{0.2, -0.3, 0.1};
  auto [ae, am] = sc.aux_dyadics(r, s);
  auto [ge, gm] = sc.scaled_dyadics(r, s);
  const PhysicalConstants& pc = sc.constants();
  const cdouble f = cdouble(0, 1) * std::sqrt(pc.hbar * pc.mu0 * kOmega * kOmega / kPi);
  CHECK(rel_dev(ge, f * ae) < 1e-14);
  CHECK(rel_dev(gm, (-f) * am) < 1e-14);
  // vacuum source point
  auto [ge0, gm0] = sc.scaled_dyadics(r, Vec3{0, 0, 1.4});
  CHECK(ge0.max_abs() == 0.0);
  CHECK(gm0.max_abs() == 0.0);
  // |G_m| scales linearly in omega at fixed A_m
  CHECK(std::abs(gm.max_abs() / am.max_abs() -
                 kOmega * std::sqrt(pc.hbar * pc.mu0 / kPi)) <
        1e-12 * gm.max_abs() / am.max_abs());
}
