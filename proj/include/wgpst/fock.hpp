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

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wgpst/gaussian.hpp"
#include "wgpst/lattice.hpp"

namespace wgpst {

using cplx = std::complex<double>;

inline constexpr double kDefaultLeakBudget = 1e-8;
inline constexpr int kMaxAutoCutoff = 400;

// Single-mode density matrix on the photon-number basis |0>..|cutoff>,
// C(n, m) = <n|rho|m>. `leak` is the probability mass the truncation dropped
// from the untruncated state (the kept part is renormalized).
class FockState {
 public:
  FockState() = default;
  FockState(Eigen::MatrixXcd c, double leak = 0.0);

  static FockState vacuum(int cutoff);

  const Eigen::MatrixXcd& matrix() const noexcept { return c_; }
  cplx operator()(int n, int m) const { return c_(n, m); }
  int cutoff() const noexcept { return static_cast<int>(c_.rows()) - 1; }
  double leak() const noexcept { return leak_; }
  double trace() const { return c_.trace().real(); }

  // Throws invalid-state unless Hermitian (1e-12), trace within
  // [1 - leak - 1e-12, 1 + 1e-12] and PSD within -1e-10.
  void validate() const;

 private:
  Eigen::MatrixXcd c_;
  double leak_ = 0.0;
};

enum class StateKind { Vacuum, Fock, Coherent, Squeezed, Cat, Thermal, Gaussian };

// Parsed `kind:param` state description, e.g. `coherent:0.8+0.3i`, `fock:2`,
// `squeezed:0.5`, `cat:1.2`, `thermal:1`, `vacuum`, or
// `gaussian:ax,ay,a,b,c` (phase-space parametrization, Gaussian engine only).
struct StateSpec {
  StateKind kind = StateKind::Vacuum;
  cplx amplitude{0.0, 0.0};  // coherent/cat amplitude, squeezing r, thermal n
  int photons = 0;           // fock
  InputMoments moments;      // gaussian

  std::string to_string() const;
};

StateSpec parse_state_spec(std::string_view text);
cplx parse_complex(std::string_view text);

// Builds the truncated state. With no cutoff the smallest cutoff whose leak is
// below `leak_budget` is chosen; an explicit cutoff whose leak exceeds the
// budget is a resource error.
FockState build_fock_state(const StateSpec& spec, std::optional<int> cutoff = std::nullopt,
                           double leak_budget = kDefaultLeakBudget);

FockState make_fock(int photons, int cutoff);
FockState make_coherent(cplx beta, std::optional<int> cutoff = std::nullopt,
                        double leak_budget = kDefaultLeakBudget);
FockState make_squeezed(double r, std::optional<int> cutoff = std::nullopt,
                        double leak_budget = kDefaultLeakBudget);
FockState make_cat(cplx beta, std::optional<int> cutoff = std::nullopt,
                   double leak_budget = kDefaultLeakBudget);
FockState make_thermal(double mean_photons, std::optional<int> cutoff = std::nullopt,
                       double leak_budget = kDefaultLeakBudget);

// Phase-space moments of a Gaussian state spec; nullopt for fock and cat.
std::optional<GaussianState> gaussian_moments(const StateSpec& spec);

// First and second quadrature moments computed in the Fock basis.
GaussianState phase_space_moments(const FockState& state);

// Reduced output state when the input mode couples to the output with
// amplitude alpha and every other mode starts in vacuum (a pure-loss channel
// of transmissivity |alpha|^2 followed by the phase arg(alpha)).
FockState loss_channel_output(const FockState& input, cplx alpha);

// U = exp(i phi n): C(n, m) -> exp(i phi (n - m)) C(n, m).
FockState apply_phase_gate_fock(const FockState& state, double phi);

double fock_uhlmann_fidelity(const FockState& rho1, const FockState& rho2);

// One fixed-photon-number sector of the lattice Fock space.
struct FockSector {
  int photons = 0;
  std::vector<std::vector<int>> occupations;  // basis, lexicographic
  Eigen::VectorXcd amplitudes;                // evolved |n photons at input>
};

// rho = sum_{n,m} C(n, m) |psi_n><psi_m| with |psi_n> the evolved sector-n
// vector. This is exact for an input on one site with vacuum elsewhere.
struct MultimodeFockState {
  Dims dims;
  std::vector<FockSector> sectors;  // sectors[n].photons == n
  Eigen::MatrixXcd coefficients;
  double leak = 0.0;

  int modes() const noexcept { return dims.modes(); }
  double trace() const;
};

struct OracleOptions {
  std::size_t sector_cap = 200000;  // max basis states per sector
  int workers = 1;
};

std::size_t sector_dimension(int modes, int photons);

// Brute-force evolution: builds each sector's hopping Hamiltonian
// M(q, q') sqrt((n_q + 1) n_q') and exponentiates it.
MultimodeFockState full_evolution_oracle(const FockState& input, int input_mode,
                                         const CouplingMatrix& coupling, double t,
                                         const OracleOptions& options = {});

FockState reduce_mode(const MultimodeFockState& state, int mode);

}  // namespace wgpst
