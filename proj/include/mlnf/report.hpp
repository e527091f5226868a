#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mlnf {

// one verified identity: residual, tolerance, convergence sweep, pass/fail
struct IdentityReport {
  std::string name;
  std::map<std::string, std::string> parameters;
  double residual = 0.0;   // relative, normalized by max(|LHS|,|RHS|) entrywise max
  double tolerance = 0.0;
  bool converged = false;
  std::vector<std::pair<int, double>> sweep;  // (refinement level, residual)

  void note(const std::string& key, double value);
  void note(const std::string& key, const std::string& value);
  // converged = residual <= tolerance and no >10x residual growth across
  // adjacent sweep levels
  void finalize();
};

std::string report_to_json(const IdentityReport& r);
std::string sweep_to_csv(const IdentityReport& r);  // header "level,residual"

}  // namespace mlnf
