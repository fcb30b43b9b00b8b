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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wgpst/fock.hpp"
#include "wgpst/lattice.hpp"

namespace wgpst {

enum class ProfileKind { Pst, Uniform };
enum class Engine { Gaussian, Fock, Both };

// Batch job description. Grid values are in units of Jt (times pi when
// `grid_in_pi` is set).
struct RunConfig {
  Dims dims = chain_dims(5);
  double J = 1.0;
  ProfileKind profile = ProfileKind::Pst;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;
  bool grid_in_pi = false;
  std::string input_state = "vacuum";
  Site input_site{1, 1, 1};
  Engine engine = Engine::Gaussian;
  double tolerance = 1e-9;
  double leak_budget = kDefaultLeakBudget;
  std::optional<int> cutoff;
  int workers = 1;
  std::vector<std::string> swap_states;
  int period = 0;

  LatticeSpec lattice() const { return {dims, J}; }
  // Throws invalid-parameter (or the lattice errors) on a bad config.
  void validate() const;
  std::vector<double> grid() const;  // Jt values
};

// Keys: dims ("LxBxH" or [L, B, H]), N, J, profile, start, stop, step,
// grid_unit ("1" or "pi"), input_state, input_site, engine, tolerance,
// leak_budget, cutoff, workers, swap_states, period. Unknown keys are errors.
RunConfig config_from_json(std::string_view text, const RunConfig& defaults = {});

CouplingProfile profile_for(const RunConfig& config);

struct ScanRow {
  double Jt = 0.0;
  double fidelity = 0.0;        // engine gaussian, or fock when that is the only engine
  double log_negativity = 0.0;  // gaussian engine only
  double fidelity_fock = 0.0;   // engine both
  cplx amplitude;               // A[input][output]
};

struct ScanResult {
  Engine engine = Engine::Gaussian;
  std::vector<ScanRow> rows;
  double leak = 0.0;

  // Jt,fidelity,log_negativity (fock engine: Jt,fidelity; both: plus fidelity_fock).
  std::string to_csv() const;
  // Jt,re,im,abs of A[input][output].
  std::string coefficient_csv() const;
};

// Fidelity of the corrected output mode against the input (and the
// input/output log negativity) at each grid point, in grid order.
ScanResult run_scan(const RunConfig& config);

struct Verdict {
  std::string mode;
  bool pass = false;
  double worst_deviation = 0.0;
  double t_opt = 0.0;
  double phase = 0.0;
  double tolerance = 0.0;
  std::string dims;
  std::string profile;

  std::string to_json() const;
};

Verdict verify_pst(const RunConfig& config);
Verdict verify_swap(const RunConfig& config);

}  // namespace wgpst
