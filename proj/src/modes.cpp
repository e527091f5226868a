#include "mlnf/modes.hpp"

#include <cmath>
#include <stdexcept>

#include "mlnf/errors.hpp"

namespace mlnf {

namespace {

void check_unit(const Vec3& n) {
  if (std::abs(n.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("plane wave direction must be a unit vector");
}

void check_nu(int nu) {
  if (nu != 1 && nu != 2)
    throw std::invalid_argument("polarization index must be 1 or 2");
}

// rotation taking +z to n and +x to the requested polarization vector
Rot3 incidence_frame(const Vec3& n, const Vec3& e) {
  return Rot3::from_columns(e, n.cross(e), n);
}

Vec3 polarization(const PlaneWaveLabel& label) {
  auto [e1, e2] = polarization_basis(label.n);
  return label.nu == 1 ? e1 : e2;
}

}  // namespace

std::pair<Vec3, Vec3> polarization_basis(const Vec3& n) {
  check_unit(n);
  const Vec3 z{0.0, 0.0, 1.0};
  const Vec3 x{1.0, 0.0, 0.0};
  Vec3 c = z.cross(n);
  if (c.norm() <= 1e-6) c = x.cross(n);
  const Vec3 e1 = c.normalized();
  return {e1, n.cross(e1)};
}

Vec3c incident_wave(const PlaneWaveLabel& label, const Vec3& r,
                    const PhysicalConstants& pc) {
  check_unit(label.n);
  check_nu(label.nu);
  const double k = label.omega / pc.c;
  const cdouble phase = std::exp(cdouble(0, 1) * k * label.n.dot(r));
  return phase * Vec3c(polarization(label));
}

Vec3c scattering_mode_eval(const Scene& scene, const PlaneWaveLabel& label,
                           const Vec3& r) {
  check_unit(label.n);
  check_nu(label.nu);
  const Vec3 e = polarization(label);
  if (scene.geometry().kind == GeometryKind::Homogeneous)
    throw std::domain_error("scattering modes vanish in an unbounded lossy medium");
  if (scene.geometry().kind == GeometryKind::Vacuum ||
      scene.geometry().material.is_vacuum())
    return incident_wave(label, r, scene.constants());

  scene.require_off_surface(r);
  const Rot3 Q = incidence_frame(label.n, e);
  const Vec3 rf = Q.apply_transposed(r);
  Vec3c F = Q.apply(scene.mie()->mode_series(rf));
  if (!scene.point_inside_sphere(r)) F += incident_wave(label, r, scene.constants());
  return F;
}

Vec3c scattered_farfield(const Scene& scene, const PlaneWaveLabel& label,
                         const SolidAngle& o) {
  check_unit(label.n);
  check_nu(label.nu);
  if (scene.geometry().kind == GeometryKind::Homogeneous)
    throw std::domain_error("scattering modes vanish in an unbounded lossy medium");
  if (scene.geometry().kind == GeometryKind::Vacuum ||
      scene.geometry().material.is_vacuum())
    return {};
  const Vec3 e = polarization(label);
  const Rot3 Q = incidence_frame(label.n, e);
  const Vec3 uf = Q.apply_transposed(unit_vector(o));
  return Q.apply(scene.mie()->mode_farfield(solid_angle_of(uf)));
}

Vec3c mode_from_farfield(const Scene& scene, const PlaneWaveLabel& label,
                         const Vec3& r) {
  check_unit(label.n);
  check_nu(label.nu);
  const Vec3 e = polarization(label);
  const FarFieldAmplitude ff = scene.farfield_amplitude(solid_angle_of(-label.n), r);
  return (4.0 * kPi) * ff.W.left_mul(Vec3c(e));
}

}  // namespace mlnf
