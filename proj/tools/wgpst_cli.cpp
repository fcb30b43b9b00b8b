// Copyright 2026 The wgpst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything goes through the C API in wgpst.h.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wgpst/wgpst.h"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

struct CliFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(wgpst_status s) {
  switch (s) {
    case WGPST_ERR_NUMERICAL_FAILURE:
    case WGPST_ERR_IO:
    case WGPST_ERR_INTERNAL: return kExitRuntime;
    default: return kExitInvalid;
  }
}

void check(wgpst_status s) {
  if (s != WGPST_OK) throw CliFailure{exit_code_for(s), wgpst_last_error()};
}

// Owns a char* handed out by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { wgpst_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliFailure{kExitRuntime, "io: cannot open '" + path + "' for writing"};
  out << text;
  if (!out.flush()) throw CliFailure{kExitRuntime, "io: failed writing '" + path + "'"};
}

struct LatticeFlags {
  std::string dims;
  int n = 0;
  double J = 0.0;
  std::string profile;
};

void add_lattice_flags(CLI::App* app, LatticeFlags& f) {
  app->add_option("--dims", f.dims, "Lattice size LxBxH (B is the reference axis)");
  app->add_option("--N", f.n, "Chain length; same as --dims 1xNx1");
  app->add_option("--J", f.J, "Coupling scale J > 0");
  app->add_option("--profile", f.profile, "Coupling profile")->check(CLI::IsMember({"pst", "uniform"}));
}

// Config-file values first, then WGPST_WORKERS, then explicit flags.
ojson base_config(const std::string& path) {
  ojson cfg = ojson::object();
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure{kExitInvalid, "io: cannot read config '" + path + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      cfg = ojson::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
      throw CliFailure{kExitInvalid, std::string("invalid-parameter: config is not valid JSON: ") + e.what()};
    }
    if (!cfg.is_object()) throw CliFailure{kExitInvalid, "invalid-parameter: config must be a JSON object"};
  }
  if (const char* env = std::getenv("WGPST_WORKERS"); env && *env) {
    char* end = nullptr;
    const long w = std::strtol(env, &end, 10);
    if (*end != '\0' || w < 1 || w > 1024)
      throw CliFailure{kExitInvalid, "invalid-parameter: WGPST_WORKERS must be an integer in [1, 1024]"};
    cfg["workers"] = static_cast<int>(w);
  }
  return cfg;
}

void apply_lattice_flags(ojson& cfg, const CLI::App* app, const LatticeFlags& f) {
  if (app->count("--dims") && app->count("--N"))
    throw CliFailure{kExitInvalid, "invalid-parameter: give either --dims or --N, not both"};
  if (app->count("--dims")) {
    cfg.erase("N");
    cfg["dims"] = f.dims;
  }
  if (app->count("--N")) {
    cfg.erase("dims");
    cfg["N"] = f.n;
  }
  if (app->count("--J")) cfg["J"] = f.J;
  if (app->count("--profile")) cfg["profile"] = f.profile;
}

std::string dims_text(const ojson& cfg) {
  if (cfg.contains("N")) {
    if (!cfg["N"].is_number_integer()) throw CliFailure{kExitInvalid, "invalid-parameter: N must be an integer"};
    return "1x" + std::to_string(cfg["N"].get<int>()) + "x1";
  }
  if (cfg.contains("dims")) {
    const auto& d = cfg["dims"];
    if (d.is_string()) return d.get<std::string>();
    if (d.is_array() && d.size() == 3 && d[0].is_number_integer() && d[1].is_number_integer() &&
        d[2].is_number_integer())
      return std::to_string(d[0].get<int>()) + "x" + std::to_string(d[1].get<int>()) + "x" +
             std::to_string(d[2].get<int>());
    throw CliFailure{kExitInvalid, "invalid-parameter: dims must be \"LxBxH\" or [L, B, H]"};
  }
  throw CliFailure{kExitInvalid, "invalid-parameter: lattice size missing (use --dims or --N)"};
}

int run_design(const std::string& config_path, const CLI::App* app, const LatticeFlags& lat,
               std::optional<double> gamma, std::optional<double> eta, const std::string& out_path,
               const std::string& plan_path) {
  ojson cfg = base_config(config_path);
  apply_lattice_flags(cfg, app, lat);
  if (gamma.has_value() != eta.has_value())
    throw CliFailure{kExitInvalid, "invalid-parameter: --gamma and --eta must be given together"};
  if (!cfg.contains("J")) throw CliFailure{kExitInvalid, "invalid-parameter: --J is required"};
  if (!cfg["J"].is_number()) throw CliFailure{kExitInvalid, "invalid-parameter: J must be a number"};
  const std::string profile = cfg.value("profile", std::string("pst"));
  if (profile != "pst" && profile != "uniform")
    throw CliFailure{kExitInvalid, "invalid-parameter: profile must be 'pst' or 'uniform'"};

  int L = 0, B = 0, H = 0;
  check(wgpst_parse_dims(dims_text(cfg).c_str(), &L, &B, &H));
  wgpst_lattice* lattice = nullptr;
  check(wgpst_lattice_create(L, B, H, cfg["J"].get<double>(), profile == "uniform", &lattice));
  std::unique_ptr<wgpst_lattice, void (*)(wgpst_lattice*)> owner(lattice, wgpst_lattice_destroy);

  LibString profile_json;
  check(wgpst_lattice_profile_json(lattice, &profile_json.p));
  std::optional<std::string> plan;
  if (gamma) {
    LibString csv;
    check(wgpst_lattice_plan_csv(lattice, *gamma, *eta, &csv.p));
    plan = csv.str();
  }
  emit(profile_json.str(), out_path);
  if (plan) emit(*plan, plan_path);
  return kExitOk;
}

struct ScanFlags {
  std::optional<double> start, stop, step;
  bool pi_units = false;
  std::string state, engine;
  std::vector<int> site;
  std::optional<int> cutoff;
  std::optional<double> leak_budget;
  std::optional<int> workers;
};

int run_scan(const std::string& config_path, const CLI::App* app, const LatticeFlags& lat,
             const ScanFlags& f, const std::string& out_path, const std::string& coeff_path) {
  ojson cfg = base_config(config_path);
  apply_lattice_flags(cfg, app, lat);
  if (f.start) cfg["start"] = *f.start;
  if (f.stop) cfg["stop"] = *f.stop;
  if (f.step) cfg["step"] = *f.step;
  if (f.pi_units) cfg["grid_unit"] = "pi";
  if (!f.state.empty()) cfg["input_state"] = f.state;
  if (!f.engine.empty()) cfg["engine"] = f.engine;
  if (!f.site.empty()) cfg["input_site"] = f.site;
  if (f.cutoff) cfg["cutoff"] = *f.cutoff;
  if (f.leak_budget) cfg["leak_budget"] = *f.leak_budget;
  if (f.workers) cfg["workers"] = *f.workers;
  LibString csv, coeff;
  check(wgpst_run_scan(cfg.dump().c_str(), &csv.p, coeff_path.empty() ? nullptr : &coeff.p));
  emit(csv.str(), out_path);
  if (!coeff_path.empty()) emit(coeff.str(), coeff_path);
  return kExitOk;
}

int run_verify(const std::string& config_path, const CLI::App* app, const LatticeFlags& lat,
               const std::string& mode, const std::vector<std::string>& states,
               std::optional<double> tol, std::optional<int> period, const std::string& out_path) {
  ojson cfg = base_config(config_path);
  apply_lattice_flags(cfg, app, lat);
  if (!states.empty()) cfg["swap_states"] = states;
  if (tol) cfg["tolerance"] = *tol;
  if (period) cfg["period"] = *period;
  int pass = 0;
  LibString json;
  check(wgpst_verify(cfg.dump().c_str(), mode.c_str(), &pass, &json.p));
  emit(json.str(), out_path);
  return pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design, evolve and verify mirror-symmetric waveguide lattices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wgpst_version()));

  std::string config_path, out_path;

  LatticeFlags design_lat;
  std::optional<double> gamma, eta;
  std::string plan_path;
  auto* design = app.add_subcommand("design", "Emit the coupling profile (and separations)");
  add_lattice_flags(design, design_lat);
  design->add_option("--gamma", gamma, "Coupling prefactor of the separation law");
  design->add_option("--eta", eta, "Decay rate of the separation law");
  design->add_option("--config", config_path, "JSON run config");
  design->add_option("--out", out_path, "Profile JSON path (default stdout)");
  design->add_option("--plan-out", plan_path, "Separation CSV path (default stdout)");

  LatticeFlags scan_lat;
  ScanFlags scan_flags;
  auto* scan = app.add_subcommand("scan", "Fidelity and entanglement over a time grid");
  add_lattice_flags(scan, scan_lat);
  scan->add_option("--config", config_path, "JSON run config");
  scan->add_option("--start", scan_flags.start, "First grid point in units of Jt");
  scan->add_option("--stop", scan_flags.stop, "Last grid point in units of Jt");
  scan->add_option("--step", scan_flags.step, "Grid step in units of Jt");
  scan->add_flag("--pi", scan_flags.pi_units, "Grid values are multiples of pi");
  scan->add_option("--state", scan_flags.state, "Input state, kind:param");
  scan->add_option("--site", scan_flags.site, "Input site u v w (1-based)")->expected(3);
  scan->add_option("--engine", scan_flags.engine, "gaussian, fock or both")
      ->check(CLI::IsMember({"gaussian", "fock", "both"}));
  scan->add_option("--cutoff", scan_flags.cutoff, "Fock cutoff (default: from the leak budget)");
  scan->add_option("--leak-budget", scan_flags.leak_budget, "Allowed truncation leak");
  scan->add_option("--workers", scan_flags.workers, "Worker threads");
  std::string coeff_path;
  scan->add_option("--out", out_path, "Fidelity CSV path (default stdout)");
  scan->add_option("--coeff-out", coeff_path, "Coefficient CSV path (Jt,re,im,abs)");

  LatticeFlags verify_lat;
  std::string mode;
  std::vector<std::string> states;
  std::optional<double> tol;
  std::optional<int> period;
  auto* verify = app.add_subcommand("verify", "Check PST or mirror SWAP at t_opt");
  add_lattice_flags(verify, verify_lat);
  verify->add_option("mode", mode, "pst or swap")->required()->check(CLI::IsMember({"pst", "swap"}));
  verify->add_option("--config", config_path, "JSON run config");
  verify->add_option("--state", states, "Per-mode Gaussian state for swap (repeat once per mode)");
  verify->add_option("--tol", tol, "Tolerance");
  verify->add_option("--period", period, "Use t_opt of period n");
  verify->add_option("--out", out_path, "Verdict JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (design->parsed())
      return run_design(config_path, design, design_lat, gamma, eta, out_path, plan_path);
    if (scan->parsed()) return run_scan(config_path, scan, scan_lat, scan_flags, out_path, coeff_path);
    return run_verify(config_path, verify, verify_lat, mode, states, tol, period, out_path);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
}
