#pragma once

#include <stdexcept>

#include "mlnf/dispersion.hpp"
#include "mlnf/linalg.hpp"

namespace mlnf {

enum class GeometryKind { Vacuum, Homogeneous, SphereInVacuum };

// scene description: vacuum everywhere, one lossy medium everywhere, or a
// homogeneous sphere of radius a centered at the origin with vacuum outside
struct Geometry {
  GeometryKind kind = GeometryKind::Vacuum;
  Material material = Material::vacuum();
  double radius = 0.0;  // meters, sphere only

  static Geometry vacuum() { return {}; }
  static Geometry homogeneous(Material m) {
    return {GeometryKind::Homogeneous, std::move(m), 0.0};
  }
  static Geometry sphere_in_vacuum(double a, Material m) {
    if (!(a > 0.0)) throw std::invalid_argument("Geometry: sphere radius must be > 0");
    return {GeometryKind::SphereInVacuum, std::move(m), a};
  }

  // material at a point (sphere exterior is exact vacuum)
  bool point_in_medium(const Vec3& r) const {
    switch (kind) {
      case GeometryKind::Vacuum: return false;
      case GeometryKind::Homogeneous: return true;
      case GeometryKind::SphereInVacuum: return r.norm() < radius;
    }
    return false;
  }
};

}  // namespace mlnf
