// mlnf-verify: configuration-driven verification runs.
//
//   mlnf-verify run <config.json> [--out DIR] [--jobs N] [--reproducible]
//   mlnf-verify list-checks
//   mlnf-verify version
//
// Exit codes: 0 all requested checks pass, 1 some check failed,
// 2 configuration error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlnf/identities.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using nlohmann::json;
using nlohmann::ordered_json;

struct RunConfig {
  mlnf::CheckConfig check;
  std::vector<std::string> checks;
  std::string output_dir = "out";
  int jobs = 1;
};

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
  throw std::runtime_error("config error at '" + field + "': " + msg);
}

mlnf::cdouble parse_complex(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    config_error(field, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<mlnf::LorentzPole> parse_poles(const json& j, const std::string& field) {
  std::vector<mlnf::LorentzPole> poles;
  if (!j.is_array()) config_error(field, "expected an array of poles");
  for (const auto& p : j) {
    for (const char* key : {"omega0", "omegap", "gamma"})
      if (!p.contains(key) || !p[key].is_number() || !(p[key].get<double>() > 0.0))
        config_error(field, std::string("pole field '") + key + "' must be > 0");
    poles.push_back({p["omega0"].get<double>(), p["omegap"].get<double>(),
                     p["gamma"].get<double>()});
  }
  return poles;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    config_error("<root>", std::string("invalid JSON: ") + e.what());
  }

  RunConfig rc;
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    config_error("schema_version", "missing or not an integer");
  if (j["schema_version"].get<int>() != 1)
    config_error("schema_version", "unsupported version (expected 1)");

  const double a = j.value("reference_length_m", 1.0);
  if (!(a > 0.0)) config_error("reference_length_m", "must be > 0");

  if (!j.contains("geometry") || !j["geometry"].is_object())
    config_error("geometry", "missing object");
  const json& jg = j["geometry"];
  const std::string type = jg.value("type", "");
  const mlnf::PhysicalConstants pc;

  double omega = 0.0;
  if (jg.contains("ka")) {
    const double ka = jg["ka"].get<double>();
    if (!(ka > 0.0)) config_error("geometry.ka", "must be > 0");
    omega = ka * pc.c / a;
  }
  std::vector<double> omegas;
  if (j.contains("omega_rad_s")) {
    for (const auto& w : j["omega_rad_s"]) {
      if (!w.is_number() || !(w.get<double>() > 0.0))
        config_error("omega_rad_s", "entries must be > 0");
      omegas.push_back(w.get<double>());
    }
  }
  if (omega > 0.0) omegas.insert(omegas.begin(), omega);
  if (omegas.empty())
    config_error("geometry.ka / omega_rad_s", "no frequency specified");
  rc.check.omegas = omegas;

  // material: either fixed (eps, mu) realized as matching poles at the
  // primary frequency, or explicit pole lists
  mlnf::Material material = mlnf::Material::vacuum();
  if (j.contains("material")) {
    const json& jm = j["material"];
    if (jm.contains("eps_poles") || jm.contains("mu_poles")) {
      mlnf::DispersionModel model;
      if (jm.contains("eps_poles"))
        model.eps_poles = parse_poles(jm["eps_poles"], "material.eps_poles");
      if (jm.contains("mu_poles"))
        model.mu_poles = parse_poles(jm["mu_poles"], "material.mu_poles");
      try {
        material = mlnf::Material::lorentz(std::move(model));
      } catch (const std::exception& e) {
        config_error("material", e.what());
      }
    } else if (jm.contains("eps") || jm.contains("mu")) {
      const mlnf::cdouble eps =
          jm.contains("eps") ? parse_complex(jm["eps"], "material.eps")
                             : mlnf::cdouble(1.0, 0.0);
      const mlnf::cdouble mu =
          jm.contains("mu") ? parse_complex(jm["mu"], "material.mu")
                            : mlnf::cdouble(1.0, 0.0);
      try {
        material = mlnf::Material::matching(omegas.front(), eps, mu);
      } catch (const std::exception& e) {
        config_error("material", e.what());
      }
    } else if (!jm.empty()) {
      config_error("material", "expected eps/mu or eps_poles/mu_poles");
    }
  }
  rc.check.material = material;

  if (type == "vacuum") {
    rc.check.geometry = mlnf::Geometry::vacuum();
  } else if (type == "homogeneous") {
    rc.check.geometry = mlnf::Geometry::homogeneous(material);
  } else if (type == "sphere_in_vacuum") {
    rc.check.geometry = mlnf::Geometry::sphere_in_vacuum(a, material);
  } else {
    config_error("geometry.type",
                 "unknown type '" + type +
                     "' (expected vacuum | homogeneous | sphere_in_vacuum)");
  }

  // point pairs in units of the reference length
  if (j.contains("point_pairs")) {
    for (const auto& pp : j["point_pairs"]) {
      if (!pp.contains("r") || !pp.contains("rp"))
        config_error("point_pairs", "each entry needs r and rp");
      auto vec = [&](const json& v, const char* f) -> mlnf::Vec3 {
        if (!v.is_array() || v.size() != 3) config_error(f, "expected [x, y, z]");
        return {v[0].get<double>() * a, v[1].get<double>() * a, v[2].get<double>() * a};
      };
      rc.check.point_pairs.emplace_back(vec(pp["r"], "point_pairs.r"),
                                        vec(pp["rp"], "point_pairs.rp"));
    }
  }
  if (rc.check.point_pairs.empty()) {
    // default desk-scale pairs in the vacuum exterior
    rc.check.point_pairs = {
        {{1.6 * a, 0.2 * a, -0.5 * a}, {-0.3 * a, 1.4 * a, 0.9 * a}},
        {{1.3 * a, 0.4 * a, -0.2 * a}, {-0.3 * a, 1.45 * a, 0.7 * a}},
    };
  }

  if (j.contains("quadrature")) {
    rc.check.sphere_degree = j["quadrature"].value("sphere_degree", 24);
    rc.check.radial_degree = j["quadrature"].value("radial_degree", 36);
    if (rc.check.sphere_degree < 1 || rc.check.radial_degree < 1)
      config_error("quadrature", "degrees must be >= 1");
  }
  if (j.contains("regulators")) {
    rc.check.eta = j["regulators"].value("eta", 0.0);
    if (j["regulators"].contains("delta_values"))
      for (const auto& d : j["regulators"]["delta_values"])
        rc.check.delta_values.push_back(d.get<double>());
  }

  if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
    config_error("checks", "need a non-empty list of check names");
  const auto& registry = mlnf::check_registry();
  for (const auto& c : j["checks"]) {
    const std::string name = c.get<std::string>();
    if (registry.find(name) == registry.end())
      config_error("checks", "unknown check '" + name + "'");
    rc.checks.push_back(name);
  }

  if (j.contains("tolerances")) {
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
      if (registry.find(it.key()) == registry.end())
        config_error("tolerances", "unknown check '" + it.key() + "'");
      rc.check.tolerances[it.key()] = it.value().get<double>();
    }
  }

  rc.output_dir = j.value("output_dir", std::string("out"));
  rc.jobs = j.value("jobs", 0);
  return rc;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

// FNV-1a hash of the canonicalized config text
std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run_suite(const RunConfig& rc, const std::string& config_text, bool reproducible) {
  namespace fs = std::filesystem;
  fs::create_directories(rc.output_dir);

  int jobs = rc.jobs;
  if (jobs <= 0) {
    if (const char* env = std::getenv("MLNF_VERIFY_THREADS")) jobs = std::atoi(env);
    if (jobs <= 0) jobs = 1;
  }

  // sorted, deduplicated execution order for deterministic output
  std::vector<std::string> names = rc.checks;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  const auto t_start = std::chrono::system_clock::now();
  std::map<std::string, mlnf::IdentityReport> results;
  std::map<std::string, std::string> errors;
  std::mutex mtx;
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= names.size()) return;
      const std::string& name = names[i];
      try {
        mlnf::IdentityReport rep = mlnf::check_registry().at(name)(rc.check);
        std::lock_guard<std::mutex> lock(mtx);
        results[name] = std::move(rep);
      } catch (const std::exception& e) {
        mlnf::IdentityReport rep;
        rep.name = name;
        rep.converged = false;
        rep.residual = std::numeric_limits<double>::infinity();
        std::lock_guard<std::mutex> lock(mtx);
        errors[name] = e.what();
        results[name] = std::move(rep);
      }
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = std::min<int>(jobs, static_cast<int>(names.size()));
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  const auto t_end = std::chrono::system_clock::now();

  bool all_pass = true;
  ordered_json manifest;
  manifest["schema_version"] = 1;
  manifest["tool_version"] = kVersion;
  manifest["config_hash"] = config_hash(config_text);
  auto stamp = [&](std::chrono::system_clock::time_point t) -> std::int64_t {
    if (reproducible) return 0;
    return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch())
        .count();
  };
  manifest["start_ms"] = stamp(t_start);
  manifest["end_ms"] = stamp(t_end);

  ordered_json checks = ordered_json::object();
  for (const auto& name : names) {
    const auto& rep = results.at(name);
    ordered_json jr = ordered_json::parse(mlnf::report_to_json(rep));
    if (auto it = errors.find(name); it != errors.end()) jr["error"] = it->second;
    checks[name] = jr;
    all_pass = all_pass && rep.converged;
    std::printf("%-22s %s  residual %.3e  tolerance %.3e\n", name.c_str(),
                rep.converged ? "pass" : "FAIL", rep.residual, rep.tolerance);
    // one CSV per check with the convergence sweep
    std::ofstream csv(fs::path(rc.output_dir) / (name + ".csv"), std::ios::binary);
    csv << mlnf::sweep_to_csv(rep);
  }
  manifest["checks"] = checks;
  manifest["overall_pass"] = all_pass;

  std::ofstream mf(fs::path(rc.output_dir) / "manifest.json", std::ios::binary);
  mf << manifest.dump(2) << "\n";

  std::printf("overall: %s\n", all_pass ? "pass" : "FAIL");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of dyadic Green's function identities"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the checks described by a config file");
  std::string config_path, out_dir;
  int jobs = -1;
  bool reproducible = false;
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides config)");
  run->add_option("--jobs", jobs, "parallel checks (overrides config and env)");
  run->add_flag("--reproducible", reproducible, "zero timestamps in manifest.json");

  auto* list = app.add_subcommand("list-checks", "list available checks");
  auto* ver = app.add_subcommand("version", "print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (ver->parsed()) {
    std::printf("mlnf-verify %s\n", kVersion);
    return 0;
  }
  if (list->parsed()) {
    static const std::map<std::string, const char*> blurbs = {
        {"commutator_kernel",
         "volume + scattering-mode kernel balances the Im G commutator form"},
        {"coupling_identity",
         "cosine transform of the squared coupling coefficients vs d(chi)/dt"},
        {"frequency_integrals",
         "regularized frequency-line integrals of the vacuum dyadic"},
        {"fundamental_relation",
         "lossy-volume integral + far-field surface term equals Im G"},
        {"jones_lemma", "stationary-phase asymptotics of solid-angle integrals"},
        {"kramers_kronig", "principal-value dispersion relation for chi"},
        {"mode_completeness",
         "incidence-direction mode integral vs far-field amplitude integral"},
        {"mode_farfield_link",
         "scattering mode equals the far-field amplitude dipole construction"},
        {"reciprocity", "G(r, r') == G^T(r', r) across all region pairs"},
        {"transversality", "far-field amplitudes orthogonal to the observation direction"},
        {"vacuum_closed_form",
         "surface-term quadrature vs closed form vs Im G in vacuum"},
    };
    for (const auto& [name, fn] : mlnf::check_registry()) {
      (void)fn;
      auto it = blurbs.find(name);
      std::printf("%-22s %s\n", name.c_str(), it == blurbs.end() ? "" : it->second);
    }
    return 0;
  }

  try {
    std::ifstream in(config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    RunConfig rc = parse_config(config_path);
    if (!out_dir.empty()) rc.output_dir = out_dir;
    if (jobs >= 0) rc.jobs = jobs;
    return run_suite(rc, ss.str(), reproducible);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
