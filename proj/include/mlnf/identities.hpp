// Verification harness: assembles each identity as LHS/RHS numerical
// objects, runs convergence sweeps and emits IdentityReports.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mlnf/green.hpp"
#include "mlnf/modes.hpp"
#include "mlnf/report.hpp"

namespace mlnf {

struct CheckConfig {
  Geometry geometry;
  Material material = Material::vacuum();  // dispersion-side checks
  std::vector<double> omegas;              // rad/s
  std::vector<std::pair<Vec3, Vec3>> point_pairs;  // both points in the vacuum exterior
  int sphere_degree = 24;   // direction-grid base degree
  int radial_degree = 36;   // radial Gauss degree for volume integrals
  double eta = 0.0;         // frequency-integral regulator; 0 = auto
  std::vector<double> delta_values;  // damping ladder; empty = auto
  double jones_xi = 50.0;
  std::map<std::string, double> tolerances;

  double tol(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
  }

  // margin-validated exterior points plus deterministically derived
  // interior points (sphere geometry)
  void validate() const;
  std::vector<Vec3> interior_points() const;
};

IdentityReport verify_reciprocity(const CheckConfig& cfg);
IdentityReport verify_fundamental_relation(const CheckConfig& cfg);
IdentityReport verify_vacuum_closed_form(const CheckConfig& cfg);
IdentityReport verify_mode_completeness(const CheckConfig& cfg);
IdentityReport verify_commutator_kernel(const CheckConfig& cfg);
IdentityReport verify_frequency_integrals(const CheckConfig& cfg);
IdentityReport verify_jones_lemma(const CheckConfig& cfg);
IdentityReport verify_transversality(const CheckConfig& cfg);
IdentityReport verify_mode_farfield_link(const CheckConfig& cfg);
// dispersion-side wrappers running on cfg.material
IdentityReport check_kramers_kronig(const CheckConfig& cfg);
IdentityReport check_coupling_identity(const CheckConfig& cfg);

// stable name -> runner registry (alphabetical iteration order)
using CheckFn = std::function<IdentityReport(const CheckConfig&)>;
const std::map<std::string, CheckFn>& check_registry();

}  // namespace mlnf
