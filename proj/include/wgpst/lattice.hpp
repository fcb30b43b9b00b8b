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

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace wgpst {

enum class Axis { L = 0, B = 1, H = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::L, Axis::B, Axis::H};

const char* axis_name(Axis axis) noexcept;

// Mode counts per axis. A 1D chain of N modes is (1, N, 1); B is the
// reference axis that the 2D/3D coupling scale factors are taken against.
struct Dims {
  int L = 1;
  int B = 1;
  int H = 1;

  int operator[](Axis axis) const noexcept {
    return axis == Axis::L ? L : (axis == Axis::B ? B : H);
  }
  int modes() const noexcept { return L * B * H; }
  int active_axes() const noexcept { return (L > 1) + (B > 1) + (H > 1); }
  bool is_chain() const noexcept { return L == 1 && H == 1; }

  friend bool operator==(const Dims&, const Dims&) = default;
};

Dims chain_dims(int modes);

// 1-based lattice site (u, v, w).
struct Site {
  int u = 1;
  int v = 1;
  int w = 1;

  friend bool operator==(const Site&, const Site&) = default;
};

struct LatticeSpec {
  Dims dims;
  double J = 1.0;  // coupling scale, inverse time units

  // Throws invalid-lattice / invalid-parameter.
  void validate() const;
};

// Gap couplings per axis; an axis with n modes carries n - 1 entries.
struct CouplingProfile {
  std::array<std::vector<double>, 3> axes;

  const std::vector<double>& operator[](Axis axis) const {
    return axes[static_cast<std::size_t>(axis)];
  }
  std::vector<double>& operator[](Axis axis) {
    return axes[static_cast<std::size_t>(axis)];
  }
  double max_coupling() const;
  bool is_mirror_symmetric(double tol = 0.0) const;
};

struct CouplingMatrix {
  Eigen::MatrixXd M;  // N x N, row-major (u, v, w) mode ordering
  Dims dims;
};

// J_j = J sqrt(j (n - j) / (n - 1)) for gaps j = 1..n-1.
std::vector<double> chain_couplings(int modes, double J);

CouplingProfile design_couplings_1d(int modes, double J);

// Axis B gets the chain profile, axes L and H the chain profile scaled by
// sqrt((n_a - 1) / (B - 1)).
CouplingProfile design_couplings_nd(const LatticeSpec& spec);

// Every gap equal to J (unmodulated lattice, the negative control).
CouplingProfile uniform_couplings(const LatticeSpec& spec);

int mode_index(const Site& site, const Dims& dims);
Site site_of(int index, const Dims& dims);

Site mirror_site(const Site& site, const Dims& dims);
int mirror_index(int index, const Dims& dims);
std::vector<int> mirror_permutation(const Dims& dims);

// Tridiagonal chain matrix with the given gap couplings on the off-diagonals.
Eigen::MatrixXd chain_matrix(const std::vector<double>& gaps);

CouplingMatrix coupling_matrix(const LatticeSpec& spec, const CouplingProfile& profile);

}  // namespace wgpst
