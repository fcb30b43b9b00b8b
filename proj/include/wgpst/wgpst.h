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

#ifndef WGPST_WGPST_H
#define WGPST_WGPST_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(WGPST_BUILDING_LIBRARY)
#define WGPST_API __attribute__((visibility("default")))
#else
#define WGPST_API
#endif

/* Status codes. Every fallible call returns one of these; on failure the
   message is available from wgpst_last_error() on the same thread. */
typedef enum wgpst_status {
  WGPST_OK = 0,
  WGPST_ERR_INVALID_LATTICE = 1,
  WGPST_ERR_INVALID_REFERENCE_AXIS = 2,
  WGPST_ERR_INDEX = 3,
  WGPST_ERR_SHAPE = 4,
  WGPST_ERR_INVALID_PARAMETER = 5,
  WGPST_ERR_NUMERICAL_FAILURE = 6,
  WGPST_ERR_INVALID_STATE = 7,
  WGPST_ERR_INVALID_COEFFICIENT = 8,
  WGPST_ERR_RESOURCE = 9,
  WGPST_ERR_UNSUPPORTED = 10,
  WGPST_ERR_WEAK_COUPLING = 11,
  WGPST_ERR_IO = 12,
  WGPST_ERR_NULL_ARGUMENT = 13,
  WGPST_ERR_INTERNAL = 99
} wgpst_status;

typedef struct wgpst_lattice wgpst_lattice;
typedef struct wgpst_evolution wgpst_evolution;
typedef struct wgpst_gaussian wgpst_gaussian;
typedef struct wgpst_fock wgpst_fock;

WGPST_API const char* wgpst_version(void);
WGPST_API const char* wgpst_status_name(wgpst_status status);
/* Message of the last failed call on this thread ("" if none). */
WGPST_API const char* wgpst_last_error(void);
/* Numeric payload of the last failure (residual, leak, dimension...). */
WGPST_API double wgpst_last_error_detail(void);
/* Releases strings returned through char** out-parameters. */
WGPST_API void wgpst_string_free(char* text);

WGPST_API wgpst_status wgpst_parse_dims(const char* text, int* L, int* B, int* H);

/* uniform = 0 designs the PST profile, nonzero uses every gap equal to J. */
WGPST_API wgpst_status wgpst_lattice_create(int L, int B, int H, double J, int uniform,
                                            wgpst_lattice** out);
WGPST_API void wgpst_lattice_destroy(wgpst_lattice* lattice);
WGPST_API wgpst_status wgpst_lattice_modes(const wgpst_lattice* lattice, int* out);
WGPST_API wgpst_status wgpst_lattice_mode_index(const wgpst_lattice* lattice, int u, int v, int w,
                                                int* out);
WGPST_API wgpst_status wgpst_lattice_mirror_index(const wgpst_lattice* lattice, int mode, int* out);
WGPST_API wgpst_status wgpst_lattice_profile_json(const wgpst_lattice* lattice, char** out);
WGPST_API wgpst_status wgpst_lattice_plan_csv(const wgpst_lattice* lattice, double gamma,
                                              double eta, char** out);
WGPST_API wgpst_status wgpst_lattice_optimal_time(const wgpst_lattice* lattice, int period,
                                                  double* out);
WGPST_API wgpst_status wgpst_lattice_correction_phase(const wgpst_lattice* lattice, int period,
                                                      double* out);

/* A(t) = exp(-i M t). */
WGPST_API wgpst_status wgpst_evolve(const wgpst_lattice* lattice, double t, wgpst_evolution** out);
WGPST_API void wgpst_evolution_destroy(wgpst_evolution* evolution);
WGPST_API wgpst_status wgpst_evolution_entry(const wgpst_evolution* evolution, int row, int col,
                                             double* re, double* im);
WGPST_API wgpst_status wgpst_evolution_pst_check(const wgpst_evolution* evolution, double tol,
                                                 int* pass, double* worst_deviation);

/* Single-mode Gaussian state from a `kind:param` spec. */
WGPST_API wgpst_status wgpst_gaussian_from_spec(const char* spec, wgpst_gaussian** out);
WGPST_API void wgpst_gaussian_destroy(wgpst_gaussian* state);
WGPST_API wgpst_status wgpst_gaussian_to_json(const wgpst_gaussian* state, char** out);
/* Output at the mirror mode of `input_mode` after time t, with the output
   phase correction applied when `correct` is nonzero. */
WGPST_API wgpst_status wgpst_gaussian_transfer(const wgpst_lattice* lattice,
                                               const wgpst_gaussian* input, int input_mode,
                                               double t, int correct, wgpst_gaussian** out);
WGPST_API wgpst_status wgpst_gaussian_fidelity(const wgpst_gaussian* a, const wgpst_gaussian* b,
                                               double* out);

/* cutoff < 0 picks the smallest cutoff within the leak budget; a budget
   <= 0 selects the default 1e-8. */
WGPST_API wgpst_status wgpst_fock_from_spec(const char* spec, int cutoff, double leak_budget,
                                            wgpst_fock** out);
WGPST_API void wgpst_fock_destroy(wgpst_fock* state);
WGPST_API wgpst_status wgpst_fock_cutoff(const wgpst_fock* state, int* out);
WGPST_API wgpst_status wgpst_fock_leak(const wgpst_fock* state, double* out);
WGPST_API wgpst_status wgpst_fock_to_json(const wgpst_fock* state, char** out);
WGPST_API wgpst_status wgpst_fock_transfer(const wgpst_lattice* lattice, const wgpst_fock* input,
                                           int input_mode, double t, int correct,
                                           wgpst_fock** out);
WGPST_API wgpst_status wgpst_fock_fidelity(const wgpst_fock* a, const wgpst_fock* b, double* out);

/* Batch jobs driven by a JSON run config. coefficient_csv_out may be NULL. */
WGPST_API wgpst_status wgpst_run_scan(const char* config_json, char** fidelity_csv_out,
                                      char** coefficient_csv_out);
/* mode is "pst" or "swap". */
WGPST_API wgpst_status wgpst_verify(const char* config_json, const char* mode, int* pass,
                                    char** json_out);

#ifdef __cplusplus
}
#endif

#endif
