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
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wgpst/lattice.hpp"

namespace wgpst {

using cplx = std::complex<double>;

struct EvolutionInvariants {
  double unitarity = 0.0;      // max |A A^dagger - I|
  double row_norm = 0.0;       // max_j |sum_k |A_jk|^2 - 1|
  double mirror = 0.0;         // max |A_jk - A_P(j)P(k)|
};

// A(t) = exp(-i M t), the single-photon propagator: a photon created at mode q
// ends up in sum_q' A[q][q'] |1_q'>.
struct EvolutionMatrix {
  Eigen::MatrixXcd A;
  double t = 0.0;
  Dims dims;

  cplx operator()(int row, int col) const { return A(row, col); }
  EvolutionInvariants invariants() const;
};

// Eigendecomposition of a coupling matrix, computed once and evaluated at any
// time. Immutable after construction; `at` may be called concurrently.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const CouplingMatrix& coupling);

  EvolutionMatrix at(double t) const;

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return vectors_; }
  double residual() const noexcept { return residual_; }
  const Dims& dims() const noexcept { return dims_; }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
  Dims dims_;
  double residual_ = 0.0;
};

EvolutionMatrix evolve_operator(const CouplingMatrix& coupling, double t);

// A_{j, N-j+1} of the designed chain for j = 1, 2, 3 (requires N >= 2j).
cplx closed_form_mirror_coefficient(int j, int modes, double Jt);

// The j = 2, 3 expressions exactly as typeset in the source derivation. They do
// not agree with exp(-iMt); kept for the audit in the acceptance suite.
cplx printed_mirror_coefficient(int j, int modes, double Jt);

// (-i)^power, exact for integer powers.
cplx minus_i_power(int power);

// t_opt = (2n + 1) sqrt(B - 1) pi / (2 J); B = N for a chain.
double optimal_time(const Dims& dims, double J, int n = 0);

// Power D of the (-i)^D phase each transferred photon picks up at t_opt:
// N - 1, L + B - 2 or L + B + H - 3.
int accumulated_phase_power(const Dims& dims);

struct PhaseCorrection {
  int quarter_turns = 0;  // phi = quarter_turns * pi / 2, in [0, 4)

  double phi() const noexcept;
};

PhaseCorrection correction_phase(const Dims& dims);

// Correction at t_opt of period n: A picks up an extra (-1)^(n D) there.
PhaseCorrection correction_phase(const Dims& dims, int period);

struct PstVerdict {
  bool pass = false;
  double worst_deviation = 0.0;
};

PstVerdict pst_check(const EvolutionMatrix& evolution, std::span<const std::pair<int, int>> pairs,
                     double tol = 1e-9);

// Every (q, P(q)) pair of the lattice.
std::vector<std::pair<int, int>> mirror_pairs(const Dims& dims);

// Product of the per-axis chain coefficients for a mirror pair of a 2D/3D
// lattice. Each axis is evaluated on its own (scaled) chain: by the closed form
// when it applies, otherwise by the chain exponential.
cplx factorized_coefficient(const LatticeSpec& spec, const Site& from, const Site& to, double Jt);

}  // namespace wgpst
