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

#include "wgpst/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wgpst/error.hpp"

namespace wgpst {

const char* axis_name(Axis axis) noexcept {
  switch (axis) {
    case Axis::L: return "L";
    case Axis::B: return "B";
    case Axis::H: return "H";
  }
  return "?";
}

Dims chain_dims(int modes) { return Dims{1, modes, 1}; }

void LatticeSpec::validate() const {
  if (dims.L < 1 || dims.B < 1 || dims.H < 1)
    fail(ErrorCode::InvalidLattice, "every axis needs at least one mode");
  if (dims.modes() < 2)
    fail(ErrorCode::InvalidLattice, "lattice needs at least two modes");
  if (dims.B == 1)
    fail(ErrorCode::InvalidReferenceAxis,
         "axis B is the reference axis and must have at least two modes");
  if (!(J > 0.0) || !std::isfinite(J))
    fail(ErrorCode::InvalidParameter, "coupling scale J must be finite and > 0");
}

double CouplingProfile::max_coupling() const {
  double best = 0.0;
  for (const auto& axis : axes)
    for (double c : axis) best = std::max(best, c);
  return best;
}

bool CouplingProfile::is_mirror_symmetric(double tol) const {
  for (const auto& axis : axes) {
    const std::size_t n = axis.size();
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(axis[j] - axis[n - 1 - j]) > tol) return false;
  }
  return true;
}

std::vector<double> chain_couplings(int modes, double J) {
  if (modes < 2) fail(ErrorCode::InvalidLattice, "chain needs at least two modes");
  if (!(J > 0.0)) fail(ErrorCode::InvalidParameter, "coupling scale J must be > 0");
  std::vector<double> gaps(static_cast<std::size_t>(modes - 1));
  const double denom = modes - 1;
  for (int j = 1; j < modes; ++j)
    gaps[static_cast<std::size_t>(j - 1)] =
        J * std::sqrt(static_cast<double>(j) * (modes - j) / denom);
  return gaps;
}

CouplingProfile design_couplings_1d(int modes, double J) {
  CouplingProfile profile;
  profile[Axis::B] = chain_couplings(modes, J);
  return profile;
}

CouplingProfile design_couplings_nd(const LatticeSpec& spec) {
  spec.validate();
  CouplingProfile profile;
  const double ref = spec.dims.B - 1;
  for (Axis axis : kAxes) {
    const int n = spec.dims[axis];
    if (n < 2) continue;
    auto gaps = chain_couplings(n, spec.J);
    if (axis != Axis::B) {
      const double scale = std::sqrt((n - 1) / ref);
      for (double& g : gaps) g *= scale;
    }
    profile[axis] = std::move(gaps);
  }
  return profile;
}

CouplingProfile uniform_couplings(const LatticeSpec& spec) {
  spec.validate();
  CouplingProfile profile;
  for (Axis axis : kAxes) {
    const int n = spec.dims[axis];
    if (n >= 2) profile[axis].assign(static_cast<std::size_t>(n - 1), spec.J);
  }
  return profile;
}

int mode_index(const Site& site, const Dims& dims) {
  if (site.u < 1 || site.u > dims.L || site.v < 1 || site.v > dims.B || site.w < 1 ||
      site.w > dims.H)
    fail(ErrorCode::Index, "site (" + std::to_string(site.u) + "," + std::to_string(site.v) +
                               "," + std::to_string(site.w) + ") outside lattice");
  return (site.u - 1) * dims.B * dims.H + (site.v - 1) * dims.H + (site.w - 1);
}

Site site_of(int index, const Dims& dims) {
  if (index < 0 || index >= dims.modes())
    fail(ErrorCode::Index, "mode index " + std::to_string(index) + " outside lattice");
  const int plane = dims.B * dims.H;
  return Site{index / plane + 1, (index % plane) / dims.H + 1, index % dims.H + 1};
}

Site mirror_site(const Site& site, const Dims& dims) {
  return Site{dims.L - site.u + 1, dims.B - site.v + 1, dims.H - site.w + 1};
}

int mirror_index(int index, const Dims& dims) {
  return mode_index(mirror_site(site_of(index, dims), dims), dims);
}

std::vector<int> mirror_permutation(const Dims& dims) {
  std::vector<int> perm(static_cast<std::size_t>(dims.modes()));
  for (int q = 0; q < dims.modes(); ++q) perm[static_cast<std::size_t>(q)] = mirror_index(q, dims);
  return perm;
}

Eigen::MatrixXd chain_matrix(const std::vector<double>& gaps) {
  const auto n = static_cast<Eigen::Index>(gaps.size() + 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    m(j, j + 1) = gaps[static_cast<std::size_t>(j)];
    m(j + 1, j) = gaps[static_cast<std::size_t>(j)];
  }
  return m;
}

CouplingMatrix coupling_matrix(const LatticeSpec& spec, const CouplingProfile& profile) {
  spec.validate();
  for (Axis axis : kAxes) {
    const int n = spec.dims[axis];
    const std::size_t expected = n > 1 ? static_cast<std::size_t>(n - 1) : 0;
    if (profile[axis].size() != expected)
      fail(ErrorCode::Shape, std::string("axis ") + axis_name(axis) + " profile has " +
                                 std::to_string(profile[axis].size()) + " gaps, expected " +
                                 std::to_string(expected));
    for (double c : profile[axis])
      if (!std::isfinite(c) || c < 0.0)
        fail(ErrorCode::Shape, std::string("axis ") + axis_name(axis) +
                                   " profile has a negative or non-finite gap");
  }

  const Dims& d = spec.dims;
  const int n = d.modes();
  CouplingMatrix out{Eigen::MatrixXd::Zero(n, n), d};
  for (int q = 0; q < n; ++q) {
    const Site s = site_of(q, d);
    if (s.u < d.L) {
      const int r = mode_index({s.u + 1, s.v, s.w}, d);
      out.M(q, r) = out.M(r, q) = profile[Axis::L][static_cast<std::size_t>(s.u - 1)];
    }
    if (s.v < d.B) {
      const int r = mode_index({s.u, s.v + 1, s.w}, d);
      out.M(q, r) = out.M(r, q) = profile[Axis::B][static_cast<std::size_t>(s.v - 1)];
    }
    if (s.w < d.H) {
      const int r = mode_index({s.u, s.v, s.w + 1}, d);
      out.M(q, r) = out.M(r, q) = profile[Axis::H][static_cast<std::size_t>(s.w - 1)];
    }
  }
  return out;
}

}  // namespace wgpst
