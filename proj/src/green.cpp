#include "mlnf/green.hpp"

#include <cmath>
#include <stdexcept>

#include "mlnf/errors.hpp"

namespace mlnf {

namespace {

constexpr double kSurfaceShell = 1e-9;

// gradient of g = e^{i kappa d}/(4 pi d) with respect to r
Vec3c scalar_green_gradient(cdouble kappa, const Vec3& r, const Vec3& rp) {
  const Vec3 dvec = r - rp;
  const double d = dvec.norm();
  const cdouble g = std::exp(cdouble(0, 1) * kappa * d) / (4.0 * kPi * d);
  const cdouble fac = (cdouble(0, 1) * kappa - 1.0 / d) * g;
  return Vec3c(dvec / d) * fac;
}

}  // namespace

Mat3c green_vacuum_closed_form(cdouble kappa, const Vec3& r, const Vec3& rp) {
  const Vec3 dvec = r - rp;
  const double d = dvec.norm();
  if (d == 0.0) throw CoincidenceError("green: r == rprime");
  const cdouble s = kappa * d;
  const Vec3 sh = dvec / d;
  const cdouble s2 = s * s;
  const cdouble pref = kappa * std::exp(cdouble(0, 1) * s) / (4.0 * kPi * s);
  const cdouble fI = (-1.0 + cdouble(0, 1) * s + s2) / s2;
  const cdouble fS = (3.0 - cdouble(0, 3) * s - s2) / s2;
  return pref * (fI * Mat3c::identity() + fS * Mat3c::outer(sh, sh));
}

Mat3c green_vacuum_curl_field(cdouble kappa, const Vec3& r, const Vec3& rp) {
  // curl x (I g) since the grad-grad part is curl-free:
  // (curl G)_{pj} = eps_{kjp} d_k g
  const Vec3c w = scalar_green_gradient(kappa, r, rp);
  Mat3c out;
  for (int p = 0; p < 3; ++p)
    for (int j = 0; j < 3; ++j) {
      cdouble s = 0.0;
      for (int k = 0; k < 3; ++k)
        if (int e = levi_civita(k, j, p); e != 0) s += double(e) * w[k];
      out(p, j) = s;
    }
  return out;
}

Mat3c green_vacuum_curl_source(cdouble kappa, const Vec3& r, const Vec3& rp) {
  // [G x grad']_{ip} = eps_{ikp} d'_k g, with d'_k g = -d_k g
  const Vec3c w = scalar_green_gradient(kappa, r, rp);
  Mat3c out;
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < 3; ++p) {
      cdouble s = 0.0;
      for (int k = 0; k < 3; ++k)
        if (int e = levi_civita(i, k, p); e != 0) s -= double(e) * w[k];
      out(i, p) = s;
    }
  return out;
}

Mat3c im_green_vacuum_closed_form(double k, const Vec3& r, const Vec3& rp) {
  const Vec3 dvec = r - rp;
  const double d = dvec.norm();
  if (d == 0.0) throw CoincidenceError("im_green_vacuum_closed_form: r == rprime");
  const double s = k * d;
  const Vec3 sh = dvec / d;
  const Mat3c I = Mat3c::identity();
  const Mat3c SS = Mat3c::outer(sh, sh);
  const double c = std::cos(s), sn = std::sin(s);
  return (k / (4.0 * kPi * s)) *
         ((c / s) * (I - 3.0 * SS) + (sn / (s * s)) * ((s * s - 1.0) * I - (s * s - 3.0) * SS));
}

Scene::Scene(Geometry geometry, double omega, double max_point_radius,
             PhysicalConstants constants, int lcap_override)
    : geom_(std::move(geometry)), omega_(omega), pc_(constants) {
  if (!(omega > 0.0)) throw std::invalid_argument("Scene: omega must be > 0");
  k_ = omega_ / pc_.c;
  if (geom_.kind == GeometryKind::Vacuum || geom_.material.is_vacuum()) {
    eps_ = 1.0;
    mu_ = 1.0;
  } else {
    eps_ = mlnf::epsilon(geom_.material, omega_);
    mu_ = mlnf::mu(geom_.material, omega_);
  }
  kmed_ = sqrt_upper_half(eps_ * mu_) * k_;
  if (geom_.kind == GeometryKind::SphereInVacuum) {
    const double a = geom_.radius;
    if (lcap_override > 0) {
      mie_ = std::make_shared<const MieSphere>(k_, a, eps_, mu_, lcap_override,
                                               /*strict=*/false);
      return;
    }
    const double x = std::max(std::abs(kmed_) * a, k_ * a);
    int lcap = mie_series_length(x);
    if (max_point_radius > a)
      lcap = std::max(lcap, mie_series_length(k_ * max_point_radius));
    // generous cap; each evaluation sizes its own order count and stops
    // at the tail criterion, so the cap only bounds the coefficient table
    lcap = std::max(2 * lcap + 8, lcap + 170);
    mie_ = std::make_shared<const MieSphere>(k_, a, eps_, mu_, lcap);
  }
}

bool Scene::point_inside_sphere(const Vec3& r) const {
  return geom_.kind == GeometryKind::SphereInVacuum && r.norm() < geom_.radius;
}

void Scene::require_off_surface(const Vec3& r) const {
  if (geom_.kind != GeometryKind::SphereInVacuum) return;
  const double a = geom_.radius;
  if (std::abs(r.norm() - a) < kSurfaceShell * a)
    throw SurfaceAmbiguityError("point within 1e-9*a of the sphere surface");
}

GreenEval Scene::green(const Vec3& r, const Vec3& rp) const {
  if ((r - rp).norm() == 0.0) throw CoincidenceError("green: r == rprime");
  GreenEval out;
  switch (geom_.kind) {
    case GeometryKind::Vacuum: {
      out.value = green_vacuum_closed_form(k_, r, rp);
      out.curl_r = green_vacuum_curl_field(k_, r, rp);
      out.curl_rprime = green_vacuum_curl_source(k_, r, rp);
      return out;
    }
    case GeometryKind::Homogeneous: {
      out.value = mu_ * green_vacuum_closed_form(kmed_, r, rp);
      out.curl_r = mu_ * green_vacuum_curl_field(kmed_, r, rp);
      out.curl_rprime = mu_ * green_vacuum_curl_source(kmed_, r, rp);
      return out;
    }
    case GeometryKind::SphereInVacuum: break;
  }
  require_off_surface(r);
  require_off_surface(rp);

  const double rp_norm = rp.norm();
  const Rot3 Q = Rot3::z_to(rp / rp_norm);
  const Vec3 rf = Q.apply_transposed(r);
  const Region fr = point_inside_sphere(r) ? Region::Inside : Region::Outside;
  const Region sr = point_inside_sphere(rp) ? Region::Inside : Region::Outside;
  const double scale_hint = 1.0 / (4.0 * kPi * (r - rp).norm());

  Mat3c val = mie_->block(rf, rp_norm, fr, sr, GreenDeriv::None, scale_hint);
  Mat3c cf = mie_->block(rf, rp_norm, fr, sr, GreenDeriv::CurlField,
                         scale_hint * k_);
  Mat3c cs = mie_->block(rf, rp_norm, fr, sr, GreenDeriv::CurlSource,
                         scale_hint * k_);
  if (fr == sr) {
    const cdouble kap = fr == Region::Inside ? kmed_ : cdouble(k_);
    const cdouble mf = fr == Region::Inside ? mu_ : cdouble(1.0);
    const Vec3 rpf{0.0, 0.0, rp_norm};
    val += mf * green_vacuum_closed_form(kap, rf, rpf);
    cf += mf * green_vacuum_curl_field(kap, rf, rpf);
    cs += mf * green_vacuum_curl_source(kap, rf, rpf);
  }
  out.value = Q.conjugate(val);
  out.curl_r = Q.conjugate(cf);
  out.curl_rprime = Q.conjugate(cs);
  return out;
}

Mat3c Scene::green_value(const Vec3& r, const Vec3& rp) const {
  if (geom_.kind == GeometryKind::Vacuum)
    return green_vacuum_closed_form(k_, r, rp);
  if (geom_.kind == GeometryKind::Homogeneous)
    return mu_ * green_vacuum_closed_form(kmed_, r, rp);
  if ((r - rp).norm() == 0.0) throw CoincidenceError("green: r == rprime");
  require_off_surface(r);
  require_off_surface(rp);
  const double rp_norm = rp.norm();
  const Rot3 Q = Rot3::z_to(rp / rp_norm);
  const Vec3 rf = Q.apply_transposed(r);
  const Region fr = point_inside_sphere(r) ? Region::Inside : Region::Outside;
  const Region sr = point_inside_sphere(rp) ? Region::Inside : Region::Outside;
  const double scale_hint = 1.0 / (4.0 * kPi * (r - rp).norm());
  Mat3c val = mie_->block(rf, rp_norm, fr, sr, GreenDeriv::None, scale_hint);
  if (fr == sr) {
    const cdouble kap = fr == Region::Inside ? kmed_ : cdouble(k_);
    const cdouble mf = fr == Region::Inside ? mu_ : cdouble(1.0);
    val += mf * green_vacuum_closed_form(kap, rf, {0.0, 0.0, rp_norm});
  }
  return Q.conjugate(val);
}

Mat3c Scene::green_curl_source(const Vec3& r, const Vec3& rp) const {
  if (geom_.kind == GeometryKind::Vacuum)
    return green_vacuum_curl_source(k_, r, rp);
  if (geom_.kind == GeometryKind::Homogeneous)
    return mu_ * green_vacuum_curl_source(kmed_, r, rp);
  if ((r - rp).norm() == 0.0) throw CoincidenceError("green: r == rprime");
  require_off_surface(r);
  require_off_surface(rp);
  const double rp_norm = rp.norm();
  const Rot3 Q = Rot3::z_to(rp / rp_norm);
  const Vec3 rf = Q.apply_transposed(r);
  const Region fr = point_inside_sphere(r) ? Region::Inside : Region::Outside;
  const Region sr = point_inside_sphere(rp) ? Region::Inside : Region::Outside;
  const double scale_hint = k_ / (4.0 * kPi * (r - rp).norm());
  Mat3c cs = mie_->block(rf, rp_norm, fr, sr, GreenDeriv::CurlSource, scale_hint);
  if (fr == sr) {
    const cdouble kap = fr == Region::Inside ? kmed_ : cdouble(k_);
    const cdouble mf = fr == Region::Inside ? mu_ : cdouble(1.0);
    cs += mf * green_vacuum_curl_source(kap, rf, {0.0, 0.0, rp_norm});
  }
  return Q.conjugate(cs);
}

FarFieldAmplitude Scene::farfield_amplitude(const SolidAngle& o, const Vec3& rp) const {
  FarFieldAmplitude out;
  out.direction = o;
  const Vec3 u = unit_vector(o);
  switch (geom_.kind) {
    case GeometryKind::Vacuum: {
      const cdouble phase = std::exp(cdouble(0, -1) * k_ * u.dot(rp));
      out.W = (phase / (4.0 * kPi)) * (Mat3c::identity() - Mat3c::outer(u, u));
      return out;
    }
    case GeometryKind::Homogeneous:
      // scattering modes vanish in an unbounded lossy medium; no far field
      throw std::domain_error(
          "farfield_amplitude: undefined for the homogeneous lossy geometry");
    case GeometryKind::SphereInVacuum: break;
  }
  require_off_surface(rp);
  const double rp_norm = rp.norm();
  const Rot3 Q = Rot3::z_to(rp / rp_norm);
  const Vec3 uf = Q.apply_transposed(u);
  const Region sr = point_inside_sphere(rp) ? Region::Inside : Region::Outside;
  Mat3c W = mie_->farfield_block(solid_angle_of(uf), rp_norm, sr);
  if (sr == Region::Outside) {
    const cdouble phase = std::exp(cdouble(0, -1) * k_ * uf.z * rp_norm);
    W += (phase / (4.0 * kPi)) *
         (Mat3c::identity() - Mat3c::outer(Vec3c(uf), Vec3c(uf)));
  }
  out.W = Q.conjugate(W);
  return out;
}

std::pair<Mat3c, Mat3c> Scene::aux_dyadics(const Vec3& r, const Vec3& s) const {
  const bool in_medium = geom_.point_in_medium(s) && !geom_.material.is_vacuum();
  if (!in_medium) return {Mat3c{}, Mat3c{}};
  const double im_eps = eps_.imag();
  const double im_inv_mu = (-1.0 / mu_).imag();
  Mat3c Ae, Am;
  if (im_eps > 0.0) Ae = (k_ * std::sqrt(im_eps)) * green_value(r, s);
  if (im_inv_mu > 0.0) Am = std::sqrt(im_inv_mu) * green_curl_source(r, s);
  return {Ae, Am};
}

std::pair<Mat3c, Mat3c> Scene::scaled_dyadics(const Vec3& r, const Vec3& s) const {
  auto [Ae, Am] = aux_dyadics(r, s);
  const cdouble f = cdouble(0, 1) * std::sqrt(pc_.hbar * pc_.mu0 * omega_ * omega_ / kPi);
  return {f * Ae, (-f) * Am};
}

GreenEval green(const Geometry& g, double omega, const Vec3& r, const Vec3& rp) {
  return Scene(g, omega, std::max(r.norm(), rp.norm())).green(r, rp);
}

FarFieldAmplitude farfield_amplitude(const Geometry& g, double omega,
                                     const SolidAngle& o, const Vec3& rp) {
  return Scene(g, omega, rp.norm()).farfield_amplitude(o, rp);
}

std::pair<Mat3c, Mat3c> aux_dyadics(const Geometry& g, double omega, const Vec3& r,
                                    const Vec3& s) {
  return Scene(g, omega, std::max(r.norm(), s.norm())).aux_dyadics(r, s);
}

std::pair<Mat3c, Mat3c> scaled_dyadics(const Geometry& g, double omega, const Vec3& r,
                                       const Vec3& s, const PhysicalConstants& pc) {
  return Scene(g, omega, std::max(r.norm(), s.norm()), pc).scaled_dyadics(r, s);
}

}  // namespace mlnf
