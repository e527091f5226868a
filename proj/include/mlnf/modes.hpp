// Scattering modes: incident plane wave + field scattered by the sample,
// their far-field amplitudes, and the construction of the same mode from
// the Green's-function far-field amplitude (point dipole at infinity).
#pragma once

#include "mlnf/green.hpp"

namespace mlnf {

struct PlaneWaveLabel {
  double omega;  // rad/s
  Vec3 n;        // unit propagation direction
  int nu;        // polarization index, 1 or 2
};

// deterministic right-handed polarization triad:
// e1 = normalize(z x n), falling back to normalize(x x n) near the poles;
// e2 = n x e1
std::pair<Vec3, Vec3> polarization_basis(const Vec3& n);

// e^{i k n.r} e_{n,nu}
Vec3c incident_wave(const PlaneWaveLabel& label, const Vec3& r,
                    const PhysicalConstants& pc = {});

// full mode F = F_in + F_sc (exterior) / transmitted field (interior)
Vec3c scattering_mode_eval(const Scene& scene, const PlaneWaveLabel& label,
                           const Vec3& r);

// far-field amplitude of the scattered part (coefficient of e^{ikr}/r)
Vec3c scattered_farfield(const Scene& scene, const PlaneWaveLabel& label,
                         const SolidAngle& o);

// the same mode obtained as 4 pi e . W(o_{-n}, r)
Vec3c mode_from_farfield(const Scene& scene, const PlaneWaveLabel& label,
                         const Vec3& r);

}  // namespace mlnf
