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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wgpst/evolution.hpp"
#include "wgpst/lattice.hpp"

namespace wgpst {

// Phase-space description of an N-mode Gaussian state. Quadratures are
// ordered (x_1, p_1, ..., x_N, p_N) with x = (a + a^dagger)/sqrt(2); the vacuum
// has d = 0 and xi = I/2.
struct GaussianState {
  Eigen::VectorXd d;
  Eigen::MatrixXd xi;

  static GaussianState vacuum(int modes);

  int modes() const noexcept { return static_cast<int>(d.size() / 2); }

  // Throws invalid-state unless xi is symmetric and xi + (i/2) W >= 0
  // (eigenvalue floor -tol).
  void validate(double tol = 1e-10) const;
};

// Single-mode input parametrization: d = (alpha_x, alpha_y),
// xi = 1/2 [[a, b], [b, c]]; pure iff a c - b^2 = 1.
struct InputMoments {
  double alpha_x = 0.0;
  double alpha_y = 0.0;
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;

  GaussianState state() const;
};

struct SymplecticMatrix {
  Eigen::MatrixXd S;
};

Eigen::MatrixXd symplectic_form(int modes);

// Phase-space image of the passive evolution: block (q', q) is the rotation
// [[Re A, -Im A], [Im A, Re A]] with A = A[q][q'].
SymplecticMatrix symplectic_from_evolution(const EvolutionMatrix& evolution);

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s);

// U = exp(i phi n) on one mode: rotates (x, p) by +phi.
GaussianState apply_phase_gate(const GaussianState& state, int mode, double phi);

// Mode indices are 0-based.
GaussianState reduce_to_modes(const GaussianState& state, std::span<const int> modes);

GaussianState direct_sum(std::span<const GaussianState> states);

// <n>_total = (tr xi - N)/2 + |d|^2/2.
double mean_photon_number(const GaussianState& state);

struct BoundaryMoments {
  Eigen::Vector2d d_first;
  Eigen::Matrix2d xi_first;
  Eigen::Vector2d d_last;   // after the output correction phase
  Eigen::Matrix2d xi_last;  // after the output correction phase
};

// Closed-form moments of modes 1 and N of the designed chain with the input on
// mode 1 and vacuum elsewhere.
BoundaryMoments analytic_boundary_moments(const InputMoments& input, int modes, double Jt);

// Off-diagonal (1, N) block of the two-mode covariance, output frame corrected.
Eigen::Matrix2d cross_covariance_block(const InputMoments& input, int modes, double Jt);

// Uhlmann fidelity of two single-mode Gaussian states.
double uhlmann_fidelity_gaussian(const GaussianState& s1, const GaussianState& s2);

// Logarithmic negativity of a two-mode Gaussian state.
double log_negativity(const GaussianState& two_mode);

// Literal evaluation of the published closed-form transfer fidelity as a
// function of |A_1N|. `well_defined` is false when a radicand is negative or
// the denominator vanishes; `value` is then NaN.
struct ClosedFormFidelity {
  double value = 0.0;
  double radicand_first = 0.0;
  double radicand_second = 0.0;
  bool well_defined = true;
};

ClosedFormFidelity closed_form_transfer_fidelity(const InputMoments& input, double amplitude);

struct FidelityAudit {
  double amplitude = 0.0;
  ClosedFormFidelity printed;
  double oracle = 0.0;       // Uhlmann fidelity of input vs pure-loss output
  double discrepancy = 0.0;  // |printed - oracle|, +inf when ill-defined
};

FidelityAudit audit_transfer_fidelity(const InputMoments& input, double amplitude);

struct SwapVerdict {
  bool pass = false;
  double worst_deviation = 0.0;
  double t_opt = 0.0;
  double phase = 0.0;
};

// Evolves the product of `per_mode` (one single-mode state per lattice mode)
// through the designed lattice to t_opt, applies the correction phase on every
// mode and compares against the mirror-permuted input.
SwapVerdict swap_verify(const LatticeSpec& spec, std::span<const GaussianState> per_mode,
                        double tol = 1e-9);

// Same check on an arbitrary profile, at t_opt of the given period.
SwapVerdict swap_verify(const LatticeSpec& spec, const CouplingProfile& profile,
                        std::span<const GaussianState> per_mode, double tol = 1e-9,
                        int period = 0);

}  // namespace wgpst
