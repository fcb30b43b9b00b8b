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

#include "wgpst/wgpst.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <new>
#include <optional>
#include <string>

#include "wgpst/error.hpp"
#include "wgpst/evolution.hpp"
#include "wgpst/fabrication.hpp"
#include "wgpst/fock.hpp"
#include "wgpst/gaussian.hpp"
#include "wgpst/io.hpp"
#include "wgpst/runner.hpp"

struct wgpst_lattice {
  wgpst::LatticeSpec spec;
  wgpst::CouplingProfile profile;
  wgpst::CouplingMatrix coupling;
  mutable std::once_flag once;
  mutable std::unique_ptr<wgpst::SpectralPropagator> propagator;

  const wgpst::SpectralPropagator& spectral() const {
    std::call_once(once, [this] { propagator = std::make_unique<wgpst::SpectralPropagator>(coupling); });
    return *propagator;
  }
};

struct wgpst_evolution {
  wgpst::EvolutionMatrix evolution;
};

struct wgpst_gaussian {
  wgpst::GaussianState state;
};

struct wgpst_fock {
  wgpst::FockState state;
};

namespace {

thread_local std::string g_last_error;
thread_local double g_last_detail = 0.0;

wgpst_status record(wgpst_status status, const std::string& message, double detail = 0.0) {
  g_last_error = message;
  g_last_detail = detail;
  return status;
}

template <typename F>
wgpst_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    g_last_detail = 0.0;
    return WGPST_OK;
  } catch (const wgpst::Error& e) {
    return record(static_cast<wgpst_status>(static_cast<int>(e.code())),
                  std::string(wgpst::error_code_name(e.code())) + ": " + e.what(), e.detail());
  } catch (const std::bad_alloc&) {
    return record(WGPST_ERR_RESOURCE, "resource: out of memory");
  } catch (const std::exception& e) {
    return record(WGPST_ERR_INTERNAL, std::string("internal: ") + e.what());
  } catch (...) {
    return record(WGPST_ERR_INTERNAL, "internal: unknown exception");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Null pointers get their own status rather than the generic internal one.
template <typename F>
wgpst_status checked(std::initializer_list<const void*> args, F&& body) {
  for (const void* p : args)
    if (!p) return record(WGPST_ERR_NULL_ARGUMENT, "null-argument: required pointer is null");
  return guard(std::forward<F>(body));
}

int output_mode(const wgpst_lattice* lattice, int input_mode) {
  const int n = lattice->spec.dims.modes();
  if (input_mode < 0 || input_mode >= n)
    wgpst::fail(wgpst::ErrorCode::Index, "input mode " + std::to_string(input_mode) + " out of range");
  return wgpst::mirror_index(input_mode, lattice->spec.dims);
}

}  // namespace

extern "C" {

const char* wgpst_version(void) { return "1.0.0"; }

const char* wgpst_status_name(wgpst_status status) {
  switch (status) {
    case WGPST_OK: return "ok";
    case WGPST_ERR_NULL_ARGUMENT: return "null-argument";
    case WGPST_ERR_INTERNAL: return "internal";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 12) return wgpst::error_code_name(static_cast<wgpst::ErrorCode>(code));
  return "unknown";
}

const char* wgpst_last_error(void) { return g_last_error.c_str(); }
double wgpst_last_error_detail(void) { return g_last_detail; }
void wgpst_string_free(char* text) { std::free(text); }

wgpst_status wgpst_parse_dims(const char* text, int* L, int* B, int* H) {
  return checked({text, L, B, H}, [&] {
    const wgpst::Dims d = wgpst::parse_dims(text);
    *L = d.L;
    *B = d.B;
    *H = d.H;
  });
}

wgpst_status wgpst_lattice_create(int L, int B, int H, double J, int uniform, wgpst_lattice** out) {
  return checked({out}, [&] {
    auto lattice = std::make_unique<wgpst_lattice>();
    lattice->spec = wgpst::LatticeSpec{wgpst::Dims{L, B, H}, J};
    lattice->spec.validate();
    lattice->profile = uniform ? wgpst::uniform_couplings(lattice->spec)
                               : wgpst::design_couplings_nd(lattice->spec);
    lattice->coupling = wgpst::coupling_matrix(lattice->spec, lattice->profile);
    *out = lattice.release();
  });
}

void wgpst_lattice_destroy(wgpst_lattice* lattice) { delete lattice; }

wgpst_status wgpst_lattice_modes(const wgpst_lattice* lattice, int* out) {
  return checked({lattice, out}, [&] { *out = lattice->spec.dims.modes(); });
}

wgpst_status wgpst_lattice_mode_index(const wgpst_lattice* lattice, int u, int v, int w, int* out) {
  return checked({lattice, out}, [&] { *out = wgpst::mode_index(wgpst::Site{u, v, w}, lattice->spec.dims); });
}

wgpst_status wgpst_lattice_mirror_index(const wgpst_lattice* lattice, int mode, int* out) {
  return checked({lattice, out}, [&] { *out = output_mode(lattice, mode); });
}

wgpst_status wgpst_lattice_profile_json(const wgpst_lattice* lattice, char** out) {
  return checked({lattice, out}, [&] { *out = duplicate(wgpst::profile_to_json(lattice->spec, lattice->profile)); });
}

wgpst_status wgpst_lattice_plan_csv(const wgpst_lattice* lattice, double gamma, double eta, char** out) {
  return checked({lattice, out}, [&] {
    *out = duplicate(wgpst::plan_to_csv(wgpst::separations(lattice->profile, gamma, eta)));
  });
}

wgpst_status wgpst_lattice_optimal_time(const wgpst_lattice* lattice, int period, double* out) {
  return checked({lattice, out}, [&] {
    if (period < 0) wgpst::fail(wgpst::ErrorCode::InvalidParameter, "period must be >= 0");
    *out = wgpst::optimal_time(lattice->spec.dims, lattice->spec.J, period);
  });
}

wgpst_status wgpst_lattice_correction_phase(const wgpst_lattice* lattice, int period, double* out) {
  return checked({lattice, out}, [&] { *out = wgpst::correction_phase(lattice->spec.dims, period).phi(); });
}

wgpst_status wgpst_evolve(const wgpst_lattice* lattice, double t, wgpst_evolution** out) {
  return checked({lattice, out}, [&] {
    if (!std::isfinite(t)) wgpst::fail(wgpst::ErrorCode::InvalidParameter, "time must be finite");
    *out = new wgpst_evolution{lattice->spectral().at(t)};
  });
}

void wgpst_evolution_destroy(wgpst_evolution* evolution) { delete evolution; }

wgpst_status wgpst_evolution_entry(const wgpst_evolution* evolution, int row, int col, double* re,
                                   double* im) {
  return checked({evolution, re, im}, [&] {
    const auto n = static_cast<int>(evolution->evolution.A.rows());
    if (row < 0 || row >= n || col < 0 || col >= n)
      wgpst::fail(wgpst::ErrorCode::Index, "entry (" + std::to_string(row) + ", " +
                                               std::to_string(col) + ") out of range");
    const auto a = evolution->evolution(row, col);
    *re = a.real();
    *im = a.imag();
  });
}

wgpst_status wgpst_evolution_pst_check(const wgpst_evolution* evolution, double tol, int* pass,
                                       double* worst_deviation) {
  return checked({evolution, pass, worst_deviation}, [&] {
    const auto pairs = wgpst::mirror_pairs(evolution->evolution.dims);
    const auto v = wgpst::pst_check(evolution->evolution, pairs, tol);
    *pass = v.pass ? 1 : 0;
    *worst_deviation = v.worst_deviation;
  });
}

wgpst_status wgpst_gaussian_from_spec(const char* spec, wgpst_gaussian** out) {
  return checked({spec, out}, [&] {
    auto g = wgpst::gaussian_moments(wgpst::parse_state_spec(spec));
    if (!g) wgpst::fail(wgpst::ErrorCode::Unsupported, std::string("state '") + spec + "' is not Gaussian");
    *out = new wgpst_gaussian{std::move(*g)};
  });
}

void wgpst_gaussian_destroy(wgpst_gaussian* state) { delete state; }

wgpst_status wgpst_gaussian_to_json(const wgpst_gaussian* state, char** out) {
  return checked({state, out}, [&] { *out = duplicate(wgpst::gaussian_to_json(state->state)); });
}

wgpst_status wgpst_gaussian_transfer(const wgpst_lattice* lattice, const wgpst_gaussian* input,
                                     int input_mode, double t, int correct, wgpst_gaussian** out) {
  return checked({lattice, input, out}, [&] {
    const int target = output_mode(lattice, input_mode);
    if (input->state.modes() != 1) wgpst::fail(wgpst::ErrorCode::Shape, "input must be single-mode");
    if (!std::isfinite(t)) wgpst::fail(wgpst::ErrorCode::InvalidParameter, "time must be finite");
    const int n = lattice->spec.dims.modes();
    wgpst::GaussianState full = wgpst::GaussianState::vacuum(n);
    full.d.segment<2>(2 * input_mode) = input->state.d;
    full.xi.block<2, 2>(2 * input_mode, 2 * input_mode) = input->state.xi;
    full = wgpst::apply_symplectic(full, wgpst::symplectic_from_evolution(lattice->spectral().at(t)));
    if (correct) full = wgpst::apply_phase_gate(full, target, wgpst::correction_phase(lattice->spec.dims).phi());
    const int only[] = {target};
    *out = new wgpst_gaussian{wgpst::reduce_to_modes(full, only)};
  });
}

wgpst_status wgpst_gaussian_fidelity(const wgpst_gaussian* a, const wgpst_gaussian* b, double* out) {
  return checked({a, b, out}, [&] { *out = wgpst::uhlmann_fidelity_gaussian(a->state, b->state); });
}

wgpst_status wgpst_fock_from_spec(const char* spec, int cutoff, double leak_budget, wgpst_fock** out) {
  return checked({spec, out}, [&] {
    const std::optional<int> c = cutoff < 0 ? std::nullopt : std::optional<int>(cutoff);
    const double budget = leak_budget > 0.0 ? leak_budget : wgpst::kDefaultLeakBudget;
    *out = new wgpst_fock{wgpst::build_fock_state(wgpst::parse_state_spec(spec), c, budget)};
  });
}

void wgpst_fock_destroy(wgpst_fock* state) { delete state; }

wgpst_status wgpst_fock_cutoff(const wgpst_fock* state, int* out) {
  return checked({state, out}, [&] { *out = state->state.cutoff(); });
}

wgpst_status wgpst_fock_leak(const wgpst_fock* state, double* out) {
  return checked({state, out}, [&] { *out = state->state.leak(); });
}

wgpst_status wgpst_fock_to_json(const wgpst_fock* state, char** out) {
  return checked({state, out}, [&] { *out = duplicate(wgpst::fock_to_json(state->state)); });
}

wgpst_status wgpst_fock_transfer(const wgpst_lattice* lattice, const wgpst_fock* input, int input_mode,
                                 double t, int correct, wgpst_fock** out) {
  return checked({lattice, input, out}, [&] {
    const int target = output_mode(lattice, input_mode);
    if (!std::isfinite(t)) wgpst::fail(wgpst::ErrorCode::InvalidParameter, "time must be finite");
    const auto alpha = lattice->spectral().at(t)(input_mode, target);
    wgpst::FockState s = wgpst::loss_channel_output(input->state, alpha);
    if (correct) s = wgpst::apply_phase_gate_fock(s, wgpst::correction_phase(lattice->spec.dims).phi());
    *out = new wgpst_fock{std::move(s)};
  });
}

wgpst_status wgpst_fock_fidelity(const wgpst_fock* a, const wgpst_fock* b, double* out) {
  return checked({a, b, out}, [&] { *out = wgpst::fock_uhlmann_fidelity(a->state, b->state); });
}

wgpst_status wgpst_run_scan(const char* config_json, char** fidelity_csv_out,
                            char** coefficient_csv_out) {
  return checked({config_json, fidelity_csv_out}, [&] {
    const wgpst::ScanResult result = wgpst::run_scan(wgpst::config_from_json(config_json));
    std::string fid = result.to_csv();
    std::string coeff = coefficient_csv_out ? result.coefficient_csv() : std::string();
    char* fid_c = duplicate(fid);
    if (coefficient_csv_out) {
      try {
        *coefficient_csv_out = duplicate(coeff);
      } catch (...) {
        std::free(fid_c);
        throw;
      }
    }
    *fidelity_csv_out = fid_c;
  });
}

wgpst_status wgpst_verify(const char* config_json, const char* mode, int* pass, char** json_out) {
  return checked({config_json, mode, pass, json_out}, [&] {
    const wgpst::RunConfig config = wgpst::config_from_json(config_json);
    const std::string m(mode);
    wgpst::Verdict v;
    if (m == "pst") v = wgpst::verify_pst(config);
    else if (m == "swap") v = wgpst::verify_swap(config);
    else wgpst::fail(wgpst::ErrorCode::InvalidParameter, "verify mode must be 'pst' or 'swap'");
    *pass = v.pass ? 1 : 0;
    *json_out = duplicate(v.to_json());
  });
}

}  // extern "C"
