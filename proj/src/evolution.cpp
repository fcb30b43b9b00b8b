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

#include "wgpst/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "wgpst/error.hpp"

namespace wgpst {

namespace {

constexpr double kOrthogonalityTol = 1e-10;

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void gram_schmidt(Eigen::MatrixXd& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    for (Eigen::Index p = 0; p < k; ++p) v.col(k) -= v.col(p).dot(v.col(k)) * v.col(p);
    v.col(k).normalize();
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

EvolutionInvariants EvolutionMatrix::invariants() const {
  EvolutionInvariants inv;
  const Eigen::Index n = A.rows();
  const Eigen::MatrixXcd g = A * A.adjoint() - Eigen::MatrixXcd::Identity(n, n);
  inv.unitarity = n ? g.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    inv.row_norm = std::max(inv.row_norm, std::abs(A.row(j).squaredNorm() - 1.0));
  if (dims.modes() == n) {
    const auto perm = mirror_permutation(dims);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        inv.mirror = std::max(inv.mirror, std::abs(A(j, k) - A(perm[j], perm[k])));
  }
  return inv;
}

SpectralPropagator::SpectralPropagator(const CouplingMatrix& coupling) : dims_(coupling.dims) {
  const Eigen::MatrixXd& m = coupling.M;
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) fail(ErrorCode::Shape, "coupling matrix must be square");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (dims_.is_chain() && n > 1) {
    Eigen::VectorXd diag = m.diagonal();
    Eigen::VectorXd sub(n - 1);
    for (Eigen::Index j = 0; j + 1 < n; ++j) sub(j) = m(j + 1, j);
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  } else {
    solver.compute(m, Eigen::ComputeEigenvectors);
  }
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::NumericalFailure, "eigensolver did not converge",
         std::numeric_limits<double>::infinity());

  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
  const Eigen::MatrixXd overlap =
      vectors_.transpose() * vectors_ - Eigen::MatrixXd::Identity(n, n);
  if (max_abs(overlap) > kOrthogonalityTol) gram_schmidt(vectors_);

  residual_ = max_abs(m * vectors_ - vectors_ * values_.asDiagonal());
  const double scale = std::max(1.0, max_abs(m));
  if (!(residual_ <= 1e-10 * scale * static_cast<double>(n)))
    fail(ErrorCode::NumericalFailure,
         "eigendecomposition residual " + std::to_string(residual_) + " too large", residual_);
}

EvolutionMatrix SpectralPropagator::at(double t) const {
  if (!std::isfinite(t) || t < 0.0)
    fail(ErrorCode::InvalidParameter, "evolution time must be finite and >= 0");
  const Eigen::Index n = values_.size();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, -values_(k) * t);
  const Eigen::MatrixXcd v = vectors_.cast<cplx>();
  return EvolutionMatrix{v * phases.asDiagonal() * v.transpose(), t, dims_};
}

EvolutionMatrix evolve_operator(const CouplingMatrix& coupling, double t) {
  return SpectralPropagator(coupling).at(t);
}

cplx minus_i_power(int power) {
  switch (((power % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

namespace {

void check_mirror_coefficient_args(int j, int modes) {
  if (j < 1 || j > 3)
    fail(ErrorCode::Unsupported,
         "closed form only available for j = 1..3; use evolve_operator for j = " +
             std::to_string(j));
  if (modes < 2 * j)
    fail(ErrorCode::InvalidParameter, "closed form for j = " + std::to_string(j) +
                                          " needs at least " + std::to_string(2 * j) + " modes");
}

}  // namespace

cplx closed_form_mirror_coefficient(int j, int modes, double Jt) {
  check_mirror_coefficient_args(j, modes);
  const double x = Jt / std::sqrt(modes - 1.0);
  const double s = std::sin(x);
  const double c2 = std::cos(x) * std::cos(x);
  const cplx phase = minus_i_power(modes - 1);
  switch (j) {
    case 1:
      return phase * std::pow(s, modes - 1);
    case 2:
      return phase * std::pow(s, modes - 3) * (4.0 - 4.0 * (modes - 1) * c2) / 4.0;
    default:
      return phase * std::pow(s, modes - 5) *
             (8.0 - 16.0 * (modes - 2) * c2 + 4.0 * (modes - 1.0) * (modes - 2.0) * c2 * c2) /
             8.0;
  }
}

cplx printed_mirror_coefficient(int j, int modes, double Jt) {
  check_mirror_coefficient_args(j, modes);
  const double x = Jt / std::sqrt(modes - 1.0);
  const double s = std::sin(x);
  const double c2 = std::cos(x) * std::cos(x);
  const cplx phase = minus_i_power(modes - 1);
  switch (j) {
    case 1:
      return phase * std::pow(s, modes - 1);
    case 2:
      return phase * std::pow(s, modes - 3) * (4.0 - 2.0 * (modes - 1) * c2) / 4.0;
    default: {
      double bracket = 8.0;
      for (int r = 1; r <= 2; ++r)
        bracket += std::pow(-2.0, r) * std::pow(c2, r) * (binomial(modes - 2, r) + modes - 2);
      return phase * std::pow(s, modes - 5) * bracket / 8.0;
    }
  }
}

double optimal_time(const Dims& dims, double J, int n) {
  if (!(J > 0.0) || !std::isfinite(J))
    fail(ErrorCode::InvalidParameter, "coupling scale J must be finite and > 0");
  if (n < 0) fail(ErrorCode::InvalidParameter, "period index n must be >= 0");
  if (dims.B < 2)
    fail(ErrorCode::InvalidReferenceAxis, "optimal time needs reference axis B >= 2");
  return (2.0 * n + 1.0) * std::sqrt(dims.B - 1.0) * std::numbers::pi / (2.0 * J);
}

int accumulated_phase_power(const Dims& dims) { return dims.L + dims.B + dims.H - 3; }

double PhaseCorrection::phi() const noexcept { return quarter_turns * std::numbers::pi / 2.0; }

PhaseCorrection correction_phase(const Dims& dims) {
  LatticeSpec{dims, 1.0}.validate();
  int key = 0;
  for (Axis axis : kAxes)
    if (dims[axis] > 1) key += dims[axis];
  const int r = key % 4;
  // Quarter turns indexed by key mod 4 = 0, 1, 2, 3.
  static constexpr int chain[4] = {3, 0, 1, 2};
  static constexpr int plane[4] = {2, 3, 0, 1};
  static constexpr int solid[4] = {1, 2, 3, 0};
  switch (dims.active_axes()) {
    case 1: return {chain[r]};
    case 2: return {plane[r]};
    default: return {solid[r]};
  }
}

PhaseCorrection correction_phase(const Dims& dims, int period) {
  if (period < 0) fail(ErrorCode::InvalidParameter, "period must be >= 0");
  PhaseCorrection c = correction_phase(dims);
  if ((static_cast<long long>(period) * accumulated_phase_power(dims)) % 2 != 0)
    c.quarter_turns = (c.quarter_turns + 2) % 4;
  return c;
}

PstVerdict pst_check(const EvolutionMatrix& evolution, std::span<const std::pair<int, int>> pairs,
                     double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tolerance must be > 0");
  const auto n = static_cast<int>(evolution.A.rows());
  PstVerdict verdict{true, 0.0};
  for (const auto& [from, to] : pairs) {
    if (from < 0 || from >= n || to < 0 || to >= n)
      fail(ErrorCode::Index, "pair (" + std::to_string(from) + ", " + std::to_string(to) +
                                 ") outside evolution matrix");
    double dev = std::abs(std::abs(evolution.A(from, to)) - 1.0);
    for (int k = 0; k < n; ++k)
      if (k != to) dev = std::max(dev, std::abs(evolution.A(from, k)));
    verdict.worst_deviation = std::max(verdict.worst_deviation, dev);
    if (!(dev < tol)) verdict.pass = false;
  }
  return verdict;
}

std::vector<std::pair<int, int>> mirror_pairs(const Dims& dims) {
  std::vector<std::pair<int, int>> pairs;
  for (int q = 0; q < dims.modes(); ++q) pairs.emplace_back(q, mirror_index(q, dims));
  return pairs;
}

cplx factorized_coefficient(const LatticeSpec& spec, const Site& from, const Site& to,
                            double Jt) {
  spec.validate();
  const Dims& d = spec.dims;
  mode_index(from, d);
  if (!(mirror_site(from, d) == to))
    fail(ErrorCode::Unsupported, "factorized coefficient is only defined for mirror pairs");

  cplx product{1.0, 0.0};
  const int coords[3] = {from.u, from.v, from.w};
  for (Axis axis : kAxes) {
    const int n = d[axis];
    if (n < 2) continue;
    const double scale = axis == Axis::B ? 1.0 : std::sqrt((n - 1.0) / (d.B - 1.0));
    const int j = coords[static_cast<int>(axis)];
    const int j_eff = std::min(j, n - j + 1);  // A is symmetric and mirror-covariant
    if (j_eff <= 3 && n >= 2 * j_eff) {
      product *= closed_form_mirror_coefficient(j_eff, n, Jt * scale);
    } else {
      auto gaps = chain_couplings(n, spec.J * scale);
      const CouplingMatrix chain{chain_matrix(gaps), chain_dims(n)};
      product *= evolve_operator(chain, Jt / spec.J)(j - 1, n - j);
    }
  }
  return product;
}

}  // namespace wgpst
