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

#include "wgpst/runner.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "json.hpp"
#include "parallel.hpp"
#include "wgpst/error.hpp"
#include "wgpst/evolution.hpp"
#include "wgpst/gaussian.hpp"
#include "wgpst/io.hpp"

namespace wgpst {

using ojson = nlohmann::ordered_json;

namespace {

const char* profile_name(ProfileKind p) { return p == ProfileKind::Pst ? "pst" : "uniform"; }

double finite_number(const ojson& v, const char* key) {
  if (!v.is_number()) fail(ErrorCode::InvalidParameter, std::string("config key '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(ErrorCode::InvalidParameter, std::string("config key '") + key + "' must be finite");
  return x;
}

int integer(const ojson& v, const char* key) {
  if (!v.is_number_integer())
    fail(ErrorCode::InvalidParameter, std::string("config key '") + key + "' must be an integer");
  return v.get<int>();
}

std::string text(const ojson& v, const char* key) {
  if (!v.is_string()) fail(ErrorCode::InvalidParameter, std::string("config key '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

void RunConfig::validate() const {
  lattice().validate();
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
    fail(ErrorCode::InvalidParameter, "grid bounds must be finite");
  if (start < 0.0) fail(ErrorCode::InvalidParameter, "grid start must be >= 0");
  if (!(step > 0.0)) fail(ErrorCode::InvalidParameter, "grid step must be > 0");
  if (stop < start) fail(ErrorCode::InvalidParameter, "grid stop must be >= start");
  if ((stop - start) / step > 1e7) fail(ErrorCode::Resource, "grid has more than 1e7 points");
  if (!(tolerance > 0.0)) fail(ErrorCode::InvalidParameter, "tolerance must be > 0");
  if (!(leak_budget > 0.0)) fail(ErrorCode::InvalidParameter, "leak budget must be > 0");
  if (cutoff && *cutoff < 0) fail(ErrorCode::InvalidParameter, "cutoff must be >= 0");
  if (workers < 1) fail(ErrorCode::InvalidParameter, "workers must be >= 1");
  if (period < 0) fail(ErrorCode::InvalidParameter, "period must be >= 0");
  mode_index(input_site, dims);
  parse_state_spec(input_state);
  for (const auto& s : swap_states) parse_state_spec(s);
}

std::vector<double> RunConfig::grid() const {
  const double unit = grid_in_pi ? std::numbers::pi : 1.0;
  const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) out.push_back((start + static_cast<double>(k) * step) * unit);
  return out;
}

RunConfig config_from_json(std::string_view json_text, const RunConfig& defaults) {
  ojson j;
  try {
    j = ojson::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidParameter, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::InvalidParameter, "config must be a JSON object");
  RunConfig c = defaults;
  for (const auto& [key, v] : j.items()) {
    if (key == "dims") {
      if (v.is_string()) {
        c.dims = parse_dims(v.get<std::string>());
      } else if (v.is_array() && v.size() == 3) {
        c.dims = Dims{integer(v[0], "dims"), integer(v[1], "dims"), integer(v[2], "dims")};
      } else {
        fail(ErrorCode::InvalidParameter, "config key 'dims' must be \"LxBxH\" or [L, B, H]");
      }
    } else if (key == "N") {
      c.dims = chain_dims(integer(v, "N"));
    } else if (key == "J") {
      c.J = finite_number(v, "J");
    } else if (key == "profile") {
      const auto p = text(v, "profile");
      if (p == "pst") c.profile = ProfileKind::Pst;
      else if (p == "uniform") c.profile = ProfileKind::Uniform;
      else fail(ErrorCode::InvalidParameter, "profile must be 'pst' or 'uniform'");
    } else if (key == "start") {
      c.start = finite_number(v, "start");
    } else if (key == "stop") {
      c.stop = finite_number(v, "stop");
    } else if (key == "step") {
      c.step = finite_number(v, "step");
    } else if (key == "grid_unit") {
      const auto u = text(v, "grid_unit");
      if (u == "pi") c.grid_in_pi = true;
      else if (u == "1") c.grid_in_pi = false;
      else fail(ErrorCode::InvalidParameter, "grid_unit must be '1' or 'pi'");
    } else if (key == "input_state") {
      c.input_state = text(v, "input_state");
    } else if (key == "input_site") {
      if (!v.is_array() || v.size() != 3)
        fail(ErrorCode::InvalidParameter, "input_site must be [u, v, w]");
      c.input_site = Site{integer(v[0], "input_site"), integer(v[1], "input_site"), integer(v[2], "input_site")};
    } else if (key == "engine") {
      const auto e = text(v, "engine");
      if (e == "gaussian") c.engine = Engine::Gaussian;
      else if (e == "fock") c.engine = Engine::Fock;
      else if (e == "both") c.engine = Engine::Both;
      else fail(ErrorCode::InvalidParameter, "engine must be gaussian, fock or both");
    } else if (key == "tolerance") {
      c.tolerance = finite_number(v, "tolerance");
    } else if (key == "leak_budget") {
      c.leak_budget = finite_number(v, "leak_budget");
    } else if (key == "cutoff") {
      if (v.is_null()) c.cutoff.reset();
      else c.cutoff = integer(v, "cutoff");
    } else if (key == "workers") {
      c.workers = integer(v, "workers");
    } else if (key == "swap_states") {
      if (!v.is_array()) fail(ErrorCode::InvalidParameter, "swap_states must be an array of strings");
      c.swap_states.clear();
      for (const auto& s : v) c.swap_states.push_back(text(s, "swap_states"));
    } else if (key == "period") {
      c.period = integer(v, "period");
    } else {
      fail(ErrorCode::InvalidParameter, "unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

CouplingProfile profile_for(const RunConfig& config) {
  const LatticeSpec spec = config.lattice();
  return config.profile == ProfileKind::Pst ? design_couplings_nd(spec) : uniform_couplings(spec);
}

std::string ScanResult::to_csv() const {
  std::string out = "Jt,fidelity";
  if (engine != Engine::Fock) out += ",log_negativity";
  if (engine == Engine::Both) out += ",fidelity_fock";
  out += '\n';
  for (const auto& r : rows) {
    out += format_sig(r.Jt, 12) + ',' + format_sig(r.fidelity, 12);
    if (engine != Engine::Fock) out += ',' + format_sig(r.log_negativity, 12);
    if (engine == Engine::Both) out += ',' + format_sig(r.fidelity_fock, 12);
    out += '\n';
  }
  return out;
}

std::string ScanResult::coefficient_csv() const {
  std::string out = "Jt,re,im,abs\n";
  for (const auto& r : rows)
    out += format_sig(r.Jt, 12) + ',' + format_sig(r.amplitude.real(), 12) + ',' +
           format_sig(r.amplitude.imag(), 12) + ',' + format_sig(std::abs(r.amplitude), 12) + '\n';
  return out;
}

ScanResult run_scan(const RunConfig& config) {
  config.validate();
  const LatticeSpec spec = config.lattice();
  const int in = mode_index(config.input_site, spec.dims);
  const int out = mirror_index(in, spec.dims);
  if (in == out)
    fail(ErrorCode::InvalidParameter, "input site is the lattice center, which is its own mirror image");
  const StateSpec state_spec = parse_state_spec(config.input_state);
  const bool want_gaussian = config.engine != Engine::Fock;
  const bool want_fock = config.engine != Engine::Gaussian;

  std::optional<GaussianState> g_input;
  if (want_gaussian) {
    g_input = gaussian_moments(state_spec);
    if (!g_input)
      fail(ErrorCode::Unsupported, "state '" + config.input_state + "' is not Gaussian; use the fock engine");
  }
  std::optional<FockState> f_input;
  if (want_fock) {
    if (state_spec.kind == StateKind::Gaussian)
      fail(ErrorCode::Unsupported, "gaussian:... inputs are only available on the gaussian engine");
    f_input = build_fock_state(state_spec, config.cutoff, config.leak_budget);
  }

  const SpectralPropagator propagator(coupling_matrix(spec, profile_for(config)));
  const double phi = correction_phase(spec.dims).phi();
  const std::vector<double> grid = config.grid();
  const int n = spec.dims.modes();

  ScanResult result;
  result.engine = config.engine;
  result.leak = f_input ? f_input->leak() : 0.0;
  result.rows.resize(grid.size());
  detail::parallel_for(grid.size(), config.workers, [&](std::size_t k) {
    ScanRow& row = result.rows[k];
    row.Jt = grid[k];
    const EvolutionMatrix evo = propagator.at(grid[k] / spec.J);
    row.amplitude = evo(in, out);
    if (want_gaussian) {
      GaussianState full = GaussianState::vacuum(n);
      full.d.segment<2>(2 * in) = g_input->d;
      full.xi.block<2, 2>(2 * in, 2 * in) = g_input->xi;
      full = apply_symplectic(full, symplectic_from_evolution(evo));
      full = apply_phase_gate(full, out, phi);
      const int only_out[] = {out};
      const int pair[] = {in, out};
      row.fidelity = uhlmann_fidelity_gaussian(*g_input, reduce_to_modes(full, only_out));
      row.log_negativity = log_negativity(reduce_to_modes(full, pair));
    }
    if (want_fock) {
      const FockState output = apply_phase_gate_fock(loss_channel_output(*f_input, row.amplitude), phi);
      const double f = fock_uhlmann_fidelity(*f_input, output);
      if (config.engine == Engine::Both) row.fidelity_fock = f;
      else row.fidelity = f;
    }
  });
  return result;
}

std::string Verdict::to_json() const {
  ojson j;
  j["mode"] = mode;
  j["dims"] = dims;
  j["profile"] = profile;
  j["pass"] = pass;
  j["worst_deviation"] = worst_deviation;
  j["t_opt"] = t_opt;
  j["phase"] = phase;
  j["tolerance"] = tolerance;
  return j.dump(2) + "\n";
}

Verdict verify_pst(const RunConfig& config) {
  config.validate();
  const LatticeSpec spec = config.lattice();
  Verdict v;
  v.mode = "pst";
  v.dims = dims_to_string(spec.dims);
  v.profile = profile_name(config.profile);
  v.tolerance = config.tolerance;
  v.t_opt = optimal_time(spec.dims, spec.J, config.period);
  v.phase = correction_phase(spec.dims, config.period).phi();
  const EvolutionMatrix evo = evolve_operator(coupling_matrix(spec, profile_for(config)), v.t_opt);
  const auto pairs = mirror_pairs(spec.dims);
  const PstVerdict p = pst_check(evo, pairs, config.tolerance);
  v.pass = p.pass;
  v.worst_deviation = p.worst_deviation;
  return v;
}

Verdict verify_swap(const RunConfig& config) {
  config.validate();
  const LatticeSpec spec = config.lattice();
  const auto n = static_cast<std::size_t>(spec.dims.modes());
  if (config.swap_states.size() != n)
    fail(ErrorCode::Shape, "swap needs " + std::to_string(n) + " states (one per mode), got " +
                               std::to_string(config.swap_states.size()));
  std::vector<GaussianState> states;
  for (const auto& s : config.swap_states) {
    auto g = gaussian_moments(parse_state_spec(s));
    if (!g) fail(ErrorCode::Unsupported, "swap states must be Gaussian, got '" + s + "'");
    states.push_back(*g);
  }
  const SwapVerdict s = swap_verify(spec, profile_for(config), states, config.tolerance, config.period);
  Verdict v;
  v.mode = "swap";
  v.dims = dims_to_string(spec.dims);
  v.profile = profile_name(config.profile);
  v.tolerance = config.tolerance;
  v.t_opt = s.t_opt;
  v.phase = s.phase;
  v.pass = s.pass;
  v.worst_deviation = s.worst_deviation;
  return v;
}

}  // namespace wgpst
