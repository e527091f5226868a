#include "mlnf/mie.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mlnf/errors.hpp"

namespace mlnf {

cdouble sqrt_upper_half(cdouble z) {
  cdouble s = std::sqrt(z);
  if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
  return s;
}

AngularTable angular_table(int nmax, double x) {
  AngularTable t;
  t.pi.assign(nmax + 1, 0.0);
  t.tau.assign(nmax + 1, 0.0);
  t.P.assign(nmax + 1, 0.0);
  if (nmax >= 1) t.pi[1] = 1.0;
  for (int n = 2; n <= nmax; ++n)
    t.pi[n] = ((2.0 * n - 1.0) * x * t.pi[n - 1] - n * t.pi[n - 2]) / (n - 1.0);
  for (int n = 1; n <= nmax; ++n)
    t.tau[n] = n * x * t.pi[n] - (n + 1.0) * t.pi[n - 1];
  t.P[0] = 1.0;
  if (nmax >= 1) t.P[1] = x;
  for (int n = 2; n <= nmax; ++n)
    t.P[n] = ((2.0 * n - 1.0) * x * t.P[n - 1] - (n - 1.0) * t.P[n - 2]) / n;
  return t;
}

int mie_series_length(double x) {
  return static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 2.0)) + 4;
}

namespace {

// solve the 2x2 system [a b; c d] v = rhs
void solve2(cdouble a, cdouble b, cdouble c, cdouble d, cdouble r0, cdouble r1,
            cdouble& v0, cdouble& v1) {
  const cdouble det = a * d - b * c;
  v0 = (r0 * d - b * r1) / det;
  v1 = (a * r1 - r0 * c) / det;
}

// local spherical basis plus angular tables at a field point; handles the
// on-axis limit with the phi = 0 convention
struct FieldFrame {
  Vec3 rh, th, ph;
  double cp, sp, st, ct;
  AngularTable ang;
  double r;
};

FieldFrame field_frame(int nmax, const Vec3& rv) {
  FieldFrame f;
  f.r = rv.norm();
  f.ct = rv.z / f.r;
  const double rho_xy = std::hypot(rv.x, rv.y);
  f.st = rho_xy / f.r;
  if (f.st < 1e-13) {
    const double sgn = f.ct > 0.0 ? 1.0 : -1.0;
    f.ct = sgn;
    f.st = 0.0;
    f.rh = {0.0, 0.0, sgn};
    f.th = {sgn, 0.0, 0.0};
    f.ph = {0.0, 1.0, 0.0};
    f.cp = 1.0;
    f.sp = 0.0;
  } else {
    f.cp = rv.x / rho_xy;
    f.sp = rv.y / rho_xy;
    f.rh = rv / f.r;
    f.th = {f.ct * f.cp, f.ct * f.sp, -f.st};
    f.ph = {-f.sp, f.cp, 0.0};
  }
  f.ct = std::max(-1.0, std::min(1.0, f.ct));
  f.ang = angular_table(nmax, f.ct);
  return f;
}

struct VswfSet {
  Vec3c Me1, Mo1, Ne1, No1, Ne0, Me0;
};

// VSWFs of order n at the field point from precomputed radial values
VswfSet vswf(const FieldFrame& f, int n, cdouble zn, cdouble Dz, cdouble znr) {
  const double pin = f.ang.pi[n], taun = f.ang.tau[n], Pn = f.ang.P[n];
  const double P1 = f.st * pin;
  const double nn1 = n * (n + 1.0);
  const Vec3c th(f.th), ph(f.ph), rh(f.rh);
  VswfSet s;
  s.Me1 = (-f.sp * pin * zn) * th + (-f.cp * taun * zn) * ph;
  s.Mo1 = (f.cp * pin * zn) * th + (-f.sp * taun * zn) * ph;
  s.Ne1 = (nn1 * znr * P1 * f.cp) * rh + (Dz * taun * f.cp) * th + (-Dz * pin * f.sp) * ph;
  s.No1 = (nn1 * znr * P1 * f.sp) * rh + (Dz * taun * f.sp) * th + (Dz * pin * f.cp) * ph;
  s.Ne0 = (nn1 * znr * Pn) * rh + (-Dz * f.st * pin) * th;
  s.Me0 = (zn * f.st * pin) * ph;
  return s;
}

const Vec3c kXhat{1.0, 0.0, 0.0};
const Vec3c kYhat{0.0, 1.0, 0.0};
const Vec3c kZhat{0.0, 0.0, 1.0};

}  // namespace

MieSphere::MieSphere(double k, double a, cdouble eps, cdouble mu, int lcap,
                     bool strict)
    : k_(k), a_(a), eps_(eps), mu_(mu), lcap_(lcap), strict_(strict) {
  if (!(k > 0.0) || !(a > 0.0)) throw std::invalid_argument("MieSphere: k, a must be > 0");
  if (lcap_ < 1) throw std::invalid_argument("MieSphere: lcap < 1");
  m_ = sqrt_upper_half(eps_ * mu_);
  k1_ = m_ * k_;
  const cdouble x = k_ * a_;
  const cdouble x1 = k1_ * a_;
  const RiccatiTable out = riccati_table(lcap_, x);
  const RiccatiTable in = riccati_table(lcap_, x1);

  B_.assign(lcap_ + 1, 0.0);
  A_.assign(lcap_ + 1, 0.0);
  C_.assign(lcap_ + 1, 0.0);
  D_.assign(lcap_ + 1, 0.0);
  R_.assign(lcap_ + 1, 0.0);
  S_.assign(lcap_ + 1, 0.0);
  T_.assign(lcap_ + 1, 0.0);
  U_.assign(lcap_ + 1, 0.0);

  caps_ = {lcap_, lcap_, lcap_, lcap_};
  auto finite = [](cdouble z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  };
  for (int n = 1; n <= lcap_; ++n) {
    const cdouble jx = out.psi[n] / x, hx = out.xi[n] / x;
    const cdouble j1 = in.psi[n] / x1, h1 = in.xi[n] / x1;
    const cdouble dpsix = out.dpsi[n], dxix = out.dxi[n];
    const cdouble dpsi1 = in.dpsi[n], dxi1 = in.dxi[n];
    if (!finite(jx) || !finite(hx) || !finite(j1) || !finite(h1) ||
        !finite(dpsix) || !finite(dxix) || !finite(dpsi1) || !finite(dxi1)) {
      for (auto& c : caps_) c = std::min(c, n - 1);
      break;
    }

    // source outside, TE:  j(x) + B h(x) = C j(x1)
    //                      psi'(x) + B xi'(x) = C psi'(x1)/mu
    solve2(hx, -j1, dxix, -dpsi1 / mu_, -jx, -dpsix, B_[n], C_[n]);
    // source outside, TM:  psi'(x) + A xi'(x) = D psi'(x1)/m
    //                      psi(x)  + A xi(x)  = D psi(x1)/mu
    solve2(dxix, -dpsi1 / m_, out.xi[n], -in.psi[n] / mu_, -dpsix, -out.psi[n],
           A_[n], D_[n]);
    // source inside, TE:   h(x1) + R j(x1) = T h(x)
    //                      [xi'(x1) + R psi'(x1)]/mu = T xi'(x)
    solve2(j1, -hx, dpsi1 / mu_, -dxix, -h1, -dxi1 / mu_, R_[n], T_[n]);
    // source inside, TM:   [xi'(x1) + S psi'(x1)]/m = U xi'(x)
    //                      [xi(x1)  + S psi(x1)]/mu = U xi(x)
    solve2(dpsi1 / m_, -dxix, in.psi[n] / mu_, -out.xi[n], -dxi1 / m_,
           -in.xi[n] / mu_, S_[n], U_[n]);
    // the interior-reflection coefficients overflow at much lower order
    // than the others; cap each family independently
    if (caps_[kFamilyBA] >= n && (!finite(B_[n]) || !finite(A_[n]))) {
      caps_[kFamilyBA] = n - 1;
      B_[n] = A_[n] = 0.0;
    }
    if (caps_[kFamilyCD] >= n && (!finite(C_[n]) || !finite(D_[n]))) {
      caps_[kFamilyCD] = n - 1;
      C_[n] = D_[n] = 0.0;
    }
    if (caps_[kFamilyRS] >= n && (!finite(R_[n]) || !finite(S_[n]))) {
      caps_[kFamilyRS] = n - 1;
      R_[n] = S_[n] = 0.0;
    }
    if (caps_[kFamilyTU] >= n && (!finite(T_[n]) || !finite(U_[n]))) {
      caps_[kFamilyTU] = n - 1;
      T_[n] = U_[n] = 0.0;
    }
  }
}

int MieSphere::family_of(Region fr, Region sr) {
  if (sr == Region::Outside) return fr == Region::Outside ? kFamilyBA : kFamilyCD;
  return fr == Region::Outside ? kFamilyTU : kFamilyRS;
}

int MieSphere::orders_for(double r_field, double r_source, Region fr,
                          Region sr) const {
  // geometric decay exponent of the bilinear series tail
  double ratio;
  if (fr == Region::Outside && sr == Region::Outside)
    ratio = (a_ * a_) / (r_field * r_source);
  else if (fr == Region::Inside && sr == Region::Inside)
    ratio = (r_field * r_source) / (a_ * a_);
  else {
    const double rin = fr == Region::Inside ? r_field : r_source;
    const double rout = fr == Region::Inside ? r_source : r_field;
    ratio = rin / rout;
  }
  int n = mie_series_length(std::max(k_ * a_, std::abs(k1_) * a_));
  if (ratio < 0.98)
    n += static_cast<int>(std::ceil(36.0 / -std::log(ratio))) + 8;
  else
    n = lcap_;
  return std::min(std::min(n, lcap_), caps_[family_of(fr, sr)]);
}

MieSphere::SourceRadial MieSphere::source_radial(double rp, Region sr,
                                                 int nmax) const {
  SourceRadial s;
  const bool inside = sr == Region::Inside;
  s.kappa = inside ? k1_ : cdouble(k_);
  const cdouble rho = s.kappa * rp;
  const RiccatiTable rt = riccati_table(nmax, rho);
  s.z.resize(nmax + 1);
  s.Dz.resize(nmax + 1);
  s.z_over_rho.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    const cdouble zn = (inside ? rt.psi[n] : rt.xi[n]) / rho;
    s.z[n] = zn;
    s.Dz[n] = (inside ? rt.dpsi[n] : rt.dxi[n]) / rho;
    s.z_over_rho[n] = zn / rho;
  }
  s.prefactor = inside ? mu_ * cdouble(0, 1) * k1_ / (4.0 * kPi)
                       : cdouble(0, 1) * k_ / (4.0 * kPi);
  return s;
}

const std::vector<cdouble>& MieSphere::coefM(Region fr, Region sr) const {
  if (sr == Region::Outside) return fr == Region::Outside ? B_ : C_;
  return fr == Region::Outside ? T_ : R_;
}

const std::vector<cdouble>& MieSphere::coefN(Region fr, Region sr) const {
  if (sr == Region::Outside) return fr == Region::Outside ? A_ : D_;
  return fr == Region::Outside ? U_ : S_;
}

Mat3c MieSphere::block(const Vec3& rv, double rp, Region fr, Region sr,
                       GreenDeriv deriv, double scale_hint) const {
  if (rv.norm() == 0.0 || rp == 0.0)
    throw std::domain_error("MieSphere::block: point at the origin");
  const int nmax = orders_for(rv.norm(), rp, fr, sr);
  const SourceRadial src = source_radial(rp, sr, nmax);
  const auto& cM = coefM(fr, sr);
  const auto& cN = coefN(fr, sr);
  const bool field_inside = fr == Region::Inside;
  const cdouble kf = field_inside ? k1_ : cdouble(k_);
  const cdouble rho_f = kf * rv.norm();
  const RiccatiTable rt = riccati_table(nmax, rho_f);
  const FieldFrame ff = field_frame(nmax, rv);

  Mat3c G;
  int small_run = 0;
  for (int n = 1; n <= nmax; ++n) {
    const cdouble zf = (field_inside ? rt.psi[n] : rt.xi[n]) / rho_f;
    const cdouble Dzf = (field_inside ? rt.dpsi[n] : rt.dxi[n]) / rho_f;
    const cdouble znrf = zf / rho_f;
    VswfSet w = vswf(ff, n, zf, Dzf, znrf);
    if (deriv == GreenDeriv::CurlField) {
      // curl_r swaps M <-> N and multiplies by the field wavenumber
      VswfSet c;
      c.Me1 = kf * w.Ne1;
      c.Mo1 = kf * w.No1;
      c.Ne1 = kf * w.Me1;
      c.No1 = kf * w.Mo1;
      c.Ne0 = kf * w.Me0;
      c.Me0 = kf * w.Ne0;
      w = c;
    }
    const double w1 = (2.0 * n + 1.0) / (n * (n + 1.0));
    Mat3c term;
    if (deriv != GreenDeriv::CurlSource) {
      term = w1 * (cM[n] * src.z[n]) * (Mat3c::outer(w.Mo1, kXhat) - Mat3c::outer(w.Me1, kYhat));
      term += w1 * (cN[n] * src.Dz[n]) * (Mat3c::outer(w.Ne1, kXhat) + Mat3c::outer(w.No1, kYhat));
      term += ((2.0 * n + 1.0) * cN[n] * src.z_over_rho[n]) * Mat3c::outer(w.Ne0, kZhat);
    } else {
      // right curl swaps the source-side M <-> N structures and
      // multiplies by -kappa_source
      const cdouble f = -src.kappa;
      term = (w1 * f * cM[n] * src.Dz[n]) * (Mat3c::outer(w.Me1, kXhat) + Mat3c::outer(w.Mo1, kYhat));
      term += (w1 * f * cN[n] * src.z[n]) * (Mat3c::outer(w.No1, kXhat) - Mat3c::outer(w.Ne1, kYhat));
      term += ((2.0 * n + 1.0) * f * cM[n] * src.z_over_rho[n]) * Mat3c::outer(w.Me0, kZhat);
    }
    G += term;
    const double tmag = term.max_abs();
    const double scale = std::max({G.max_abs(), scale_hint / std::abs(src.prefactor),
                                   1e-300});
    if (n > 4 && tmag < 1e-14 * scale) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
    if (strict_ && n == nmax && tmag > 1e-11 * scale) {
      char msg[160];
      std::snprintf(msg, sizeof(msg),
                    "MieSphere::block: series not converged (nmax=%d fr=%d sr=%d "
                    "r=%.4g rp=%.4g tail=%.2e)",
                    nmax, int(fr), int(sr), rv.norm(), rp, tmag / scale);
      throw TruncationError(msg, tmag / scale);
    }
  }
  return src.prefactor * G;
}

Mat3c MieSphere::farfield_block(const SolidAngle& o, double rp, Region sr) const {
  // tail decays like (a/rp)^n for exterior sources, (rp/a)^n for interior
  const double ratio = sr == Region::Inside ? rp / a_ : a_ / rp;
  int nmax = mie_series_length(std::max(k_ * a_, std::abs(k1_) * a_));
  if (ratio < 0.98)
    nmax += static_cast<int>(std::ceil(36.0 / -std::log(ratio))) + 8;
  else
    nmax = lcap_;
  nmax = std::min(std::min(nmax, lcap_),
                  caps_[family_of(Region::Outside, sr)]);
  const SourceRadial src = source_radial(rp, sr, nmax);
  const auto& cM = coefM(Region::Outside, sr);
  const auto& cN = coefN(Region::Outside, sr);
  const double ct = std::cos(o.theta), st = std::sin(o.theta);
  const double cp = std::cos(o.phi), sp = std::sin(o.phi);
  const Vec3c th{ct * cp, ct * sp, -st};
  const Vec3c ph{-sp, cp, 0.0};
  const AngularTable ang = angular_table(nmax, ct);

  Mat3c W;
  int small_run = 0;
  const cdouble mi(0.0, -1.0);
  cdouble fN = 1.0;  // (-i)^n
  for (int n = 1; n <= nmax; ++n) {
    fN *= mi;
    const cdouble fM = fN * mi;  // (-i)^(n+1)
    const double pin = ang.pi[n], taun = ang.tau[n];
    const Vec3c me1 = (-sp * pin) * th + (-cp * taun) * ph;
    const Vec3c mo1 = (cp * pin) * th + (-sp * taun) * ph;
    const Vec3c ne1 = (cp * taun) * th + (-sp * pin) * ph;
    const Vec3c no1 = (sp * taun) * th + (cp * pin) * ph;
    const Vec3c ne0 = (-st * pin) * th;
    const double w1 = (2.0 * n + 1.0) / (n * (n + 1.0));
    Mat3c term = (w1 * cM[n] * src.z[n] * fM) *
                 (Mat3c::outer(mo1, kXhat) - Mat3c::outer(me1, kYhat));
    term += (w1 * cN[n] * src.Dz[n] * fN) *
            (Mat3c::outer(ne1, kXhat) + Mat3c::outer(no1, kYhat));
    term += ((2.0 * n + 1.0) * cN[n] * src.z_over_rho[n] * fN) * Mat3c::outer(ne0, kZhat);
    W += term;
    const double tmag = term.max_abs();
    const double scale = std::max(
        {W.max_abs(), 1.0 / (4.0 * kPi * std::abs(src.prefactor / k_)), 1e-300});
    if (n > 4 && tmag < 1e-14 * scale) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
    if (strict_ && n == nmax && tmag > 1e-11 * scale)
      throw TruncationError("MieSphere::farfield_block: series not converged",
                            tmag / scale);
  }
  return (src.prefactor / k_) * W;
}

Vec3c MieSphere::mode_series(const Vec3& rv) const {
  const double r = rv.norm();
  if (r == 0.0) throw std::domain_error("MieSphere::mode_series: point at the origin");
  const bool inside = r < a_;
  const cdouble kf = inside ? k1_ : cdouble(k_);
  const cdouble rho = kf * r;
  const int nmax =
      std::min({lcap_, caps_[inside ? kFamilyCD : kFamilyBA],
                mie_series_length(std::abs(rho)) + 8});
  const RiccatiTable rt = riccati_table(nmax, rho);
  const FieldFrame ff = field_frame(nmax, rv);
  const auto& cM = inside ? C_ : B_;
  const auto& cN = inside ? D_ : A_;

  Vec3c F;
  int small_run = 0;
  cdouble En(1.0, 0.0);
  for (int n = 1; n <= nmax; ++n) {
    En *= cdouble(0.0, 1.0);  // i^n
    const cdouble zf = (inside ? rt.psi[n] : rt.xi[n]) / rho;
    const cdouble Dzf = (inside ? rt.dpsi[n] : rt.dxi[n]) / rho;
    const VswfSet w = vswf(ff, n, zf, Dzf, zf / rho);
    const cdouble wn = En * (2.0 * n + 1.0) / (n * (n + 1.0));
    const Vec3c term = wn * (cM[n] * w.Mo1 - cdouble(0, 1) * cN[n] * w.Ne1);
    F += term;
    const double tmag = term.max_abs();
    // unit incident amplitude sets the natural scale
    const double scale = std::max(F.max_abs(), 1.0);
    if (n > 4 && tmag < 1e-14 * scale) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
    if (strict_ && n == nmax && tmag > 1e-11 * scale)
      throw TruncationError("MieSphere::mode_series: series not converged",
                            tmag / scale);
  }
  return F;
}

Vec3c MieSphere::mode_farfield(const SolidAngle& o) const {
  const double ct = std::cos(o.theta), st = std::sin(o.theta);
  const double cp = std::cos(o.phi), sp = std::sin(o.phi);
  const Vec3c th{ct * cp, ct * sp, -st};
  const Vec3c ph{-sp, cp, 0.0};
  const int nmax = std::min(lcap_, caps_[kFamilyBA]);
  const AngularTable ang = angular_table(nmax, ct);
  Vec3c w;
  int small_run = 0;
  for (int n = 1; n <= nmax; ++n) {
    const double pin = ang.pi[n], taun = ang.tau[n];
    const Vec3c mo1 = (cp * pin) * th + (-sp * taun) * ph;
    const Vec3c ne1 = (cp * taun) * th + (-sp * pin) * ph;
    const double w1 = (2.0 * n + 1.0) / (n * (n + 1.0));
    const Vec3c term = w1 * (B_[n] * mo1 + A_[n] * ne1);
    w += term;
    const double tmag = term.max_abs();
    if (n > 4 && tmag < 1e-14 * std::max(w.max_abs(), 1e-300)) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  return (cdouble(0, -1) / k_) * w;
}

}  // namespace mlnf
