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

#include "wgpst/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "wgpst/error.hpp"

namespace wgpst {

namespace {

Eigen::Matrix2d rotation(double re, double im) {
  Eigen::Matrix2d r;
  r << re, -im, im, re;
  return r;
}

void require_single_mode(const GaussianState& s, const char* what) {
  if (s.d.size() != 2 || s.xi.rows() != 2 || s.xi.cols() != 2)
    fail(ErrorCode::Shape, std::string(what) + " must be a single-mode state");
}

}  // namespace

GaussianState GaussianState::vacuum(int modes) {
  if (modes < 1) fail(ErrorCode::Shape, "vacuum needs at least one mode");
  return {Eigen::VectorXd::Zero(2 * modes), 0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes)};
}

void GaussianState::validate(double tol) const {
  const Eigen::Index n = d.size();
  if (n % 2 != 0 || xi.rows() != n || xi.cols() != n)
    fail(ErrorCode::Shape, "displacement and covariance sizes disagree");
  if (!d.allFinite() || !xi.allFinite()) fail(ErrorCode::InvalidState, "non-finite moments");
  if ((xi - xi.transpose()).cwiseAbs().maxCoeff() > tol)
    fail(ErrorCode::InvalidState, "covariance matrix is not symmetric");
  const Eigen::MatrixXcd h =
      xi.cast<cplx>() + cplx(0.0, 0.5) * symplectic_form(static_cast<int>(n / 2)).cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  const double lowest = eig.eigenvalues().minCoeff();
  if (lowest < -tol)
    fail(ErrorCode::InvalidState,
         "covariance violates the uncertainty principle (eigenvalue " + std::to_string(lowest) + ")",
         lowest);
}

GaussianState InputMoments::state() const {
  GaussianState s;
  s.d = Eigen::Vector2d(alpha_x, alpha_y);
  Eigen::Matrix2d xi;
  xi << a, b, b, c;
  s.xi = 0.5 * xi;
  return s;
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    w(2 * k, 2 * k + 1) = 1.0;
    w(2 * k + 1, 2 * k) = -1.0;
  }
  return w;
}

SymplecticMatrix symplectic_from_evolution(const EvolutionMatrix& evolution) {
  const Eigen::MatrixXcd& a = evolution.A;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) fail(ErrorCode::Shape, "evolution matrix must be square");
  const double unitarity =
      (a * a.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-8)
    fail(ErrorCode::InvalidParameter, "evolution matrix is not unitary", unitarity);

  SymplecticMatrix s{Eigen::MatrixXd::Zero(2 * n, 2 * n)};
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index qp = 0; qp < n; ++qp) {
      const cplx amp = a(q, qp);
      s.S.block<2, 2>(2 * qp, 2 * q) = rotation(amp.real(), amp.imag());
    }
  return s;
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s) {
  if (s.S.rows() != state.d.size() || s.S.cols() != state.d.size())
    fail(ErrorCode::Shape, "symplectic matrix and state sizes disagree");
  return {s.S * state.d, s.S * state.xi * s.S.transpose()};
}

GaussianState apply_phase_gate(const GaussianState& state, int mode, double phi) {
  if (mode < 0 || mode >= state.modes())
    fail(ErrorCode::Index, "phase gate mode " + std::to_string(mode) + " out of range");
  const Eigen::Matrix2d r = rotation(std::cos(phi), std::sin(phi));
  GaussianState out = state;
  const Eigen::Index k = 2 * mode;
  out.d.segment<2>(k) = r * state.d.segment<2>(k);
  out.xi.middleRows(k, 2) = r * out.xi.middleRows(k, 2);
  out.xi.middleCols(k, 2) = out.xi.middleCols(k, 2) * r.transpose();
  return out;
}

GaussianState reduce_to_modes(const GaussianState& state, std::span<const int> modes) {
  const int n = state.modes();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int m : modes) {
    if (m < 0 || m >= n) fail(ErrorCode::Index, "mode " + std::to_string(m) + " out of range");
    if (seen[static_cast<std::size_t>(m)])
      fail(ErrorCode::Index, "mode " + std::to_string(m) + " listed twice");
    seen[static_cast<std::size_t>(m)] = true;
  }
  const auto k = static_cast<Eigen::Index>(modes.size());
  GaussianState out{Eigen::VectorXd(2 * k), Eigen::MatrixXd(2 * k, 2 * k)};
  for (Eigen::Index i = 0; i < k; ++i) {
    out.d.segment<2>(2 * i) = state.d.segment<2>(2 * modes[i]);
    for (Eigen::Index j = 0; j < k; ++j)
      out.xi.block<2, 2>(2 * i, 2 * j) = state.xi.block<2, 2>(2 * modes[i], 2 * modes[j]);
  }
  return out;
}

GaussianState direct_sum(std::span<const GaussianState> states) {
  Eigen::Index total = 0;
  for (const auto& s : states) total += s.d.size();
  GaussianState out{Eigen::VectorXd::Zero(total), Eigen::MatrixXd::Zero(total, total)};
  Eigen::Index at = 0;
  for (const auto& s : states) {
    const Eigen::Index k = s.d.size();
    if (s.xi.rows() != k || s.xi.cols() != k) fail(ErrorCode::Shape, "malformed state in sum");
    out.d.segment(at, k) = s.d;
    out.xi.block(at, at, k, k) = s.xi;
    at += k;
  }
  return out;
}

double mean_photon_number(const GaussianState& state) {
  return 0.5 * (state.xi.trace() - state.modes()) + 0.5 * state.d.squaredNorm();
}

BoundaryMoments analytic_boundary_moments(const InputMoments& input, int modes, double Jt) {
  if (modes < 2) fail(ErrorCode::InvalidLattice, "chain needs at least two modes");
  const double x = Jt / std::sqrt(modes - 1.0);
  const auto moments = [&](double amp, Eigen::Vector2d& d, Eigen::Matrix2d& xi) {
    const double g = amp * amp;
    d = amp * Eigen::Vector2d(input.alpha_x, input.alpha_y);
    xi << g * (input.a - 1.0) + 1.0, input.b * g, input.b * g, g * (input.c - 1.0) + 1.0;
    xi *= 0.5;
  };
  BoundaryMoments out;
  moments(std::pow(std::cos(x), modes - 1), out.d_first, out.xi_first);
  moments(std::pow(std::sin(x), modes - 1), out.d_last, out.xi_last);
  return out;
}

Eigen::Matrix2d cross_covariance_block(const InputMoments& input, int modes, double Jt) {
  if (modes < 2) fail(ErrorCode::InvalidLattice, "chain needs at least two modes");
  const double x = Jt / std::sqrt(modes - 1.0);
  const double f = std::pow(std::sin(2.0 * x), modes - 1) / std::pow(2.0, modes);
  Eigen::Matrix2d block;
  block << input.a - 1.0, input.b, input.b, input.c - 1.0;
  return f * block;
}

double uhlmann_fidelity_gaussian(const GaussianState& s1, const GaussianState& s2) {
  require_single_mode(s1, "first state");
  require_single_mode(s2, "second state");
  const Eigen::Matrix2d sum = s1.xi + s2.xi;
  const double big_delta = sum.determinant();
  if (!(big_delta > 1e-300))
    fail(ErrorCode::NumericalFailure, "sum of covariance matrices is singular", big_delta);
  double small_delta = 4.0 * (s1.xi.determinant() - 0.25) * (s2.xi.determinant() - 0.25);
  if (small_delta < -1e-12)
    fail(ErrorCode::InvalidState, "negative radicand in Gaussian fidelity", small_delta);
  small_delta = std::max(small_delta, 0.0);
  const Eigen::Vector2d dd = s1.d - s2.d;
  const double exponent = 0.5 * dd.dot(sum.inverse() * dd);
  return std::exp(-exponent) / (std::sqrt(big_delta + small_delta) - std::sqrt(small_delta));
}

double log_negativity(const GaussianState& two_mode) {
  if (two_mode.d.size() != 4 || two_mode.xi.rows() != 4 || two_mode.xi.cols() != 4)
    fail(ErrorCode::Shape, "log negativity needs a two-mode state");
  // Partial transpose flips p_2. The squared symplectic eigenvalues of the
  // result are the eigenvalues of X^(1/2) W^T X W X^(1/2), which a symmetric
  // solve gets to full absolute precision (the closed form
  // (D - sqrt(D^2 - 4 det X)) / 2 loses half the digits near separability).
  Eigen::Matrix4d pt = two_mode.xi;
  pt.row(3) *= -1.0;
  pt.col(3) *= -1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> cov(pt);
  if (cov.eigenvalues().minCoeff() <= 0.0)
    fail(ErrorCode::InvalidState, "covariance matrix is not positive definite", cov.eigenvalues().minCoeff());
  const Eigen::Matrix4d root = cov.operatorSqrt();
  const Eigen::Matrix4d w = symplectic_form(2);
  Eigen::Matrix4d g = root * w.transpose() * pt * w * root;
  g = 0.5 * (g + g.transpose());
  const double nu_sq = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(g, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (!(nu_sq > 0.0)) fail(ErrorCode::InvalidState, "non-positive symplectic eigenvalue", nu_sq);
  return std::max(0.0, -std::log(2.0 * std::sqrt(nu_sq)));
}

ClosedFormFidelity closed_form_transfer_fidelity(const InputMoments& input, double amplitude) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0 + 1e-12))
    fail(ErrorCode::InvalidParameter, "|A_1N| must lie in [0, 1]");
  const double A = amplitude, A2 = A * A;
  const double a = input.a, b = input.b, c = input.c;
  const double ax = input.alpha_x, ay = input.alpha_y;
  const double chi_p = a * b - c * c + 1.0;
  const double chi_m = a * b - c * c - 1.0;

  const double e_num = (1.0 - A) * (1.0 - A) *
                       ((b * ax * ax - 2.0 * c * ax * ay + a * ay * ay) * (1.0 + A2) +
                        (ax * ax + ay * ay) * (1.0 - A2));
  const double e_den = (chi_p - 1.0) * (1.0 + A2) + (1.0 - A2);
  const double numerator = 2.0 * std::exp(-e_num / e_den);

  ClosedFormFidelity out;
  out.radicand_first = chi_m * A2 * ((a + b - 2.0) + (chi_p - a - b) * A2);
  out.radicand_second =
      (chi_p + a + b) + (a + b) * chi_m * A2 + (chi_p - a - b) * (chi_p - 1.0) * A2 * A2;
  const double denom = std::sqrt(std::max(out.radicand_first, 0.0)) -
                       std::sqrt(std::max(out.radicand_second, 0.0));
  out.well_defined = out.radicand_first >= 0.0 && out.radicand_second >= 0.0 &&
                     std::isfinite(e_num / e_den) && denom != 0.0;
  out.value = out.well_defined ? numerator / denom : std::numeric_limits<double>::quiet_NaN();
  return out;
}

FidelityAudit audit_transfer_fidelity(const InputMoments& input, double amplitude) {
  FidelityAudit audit;
  audit.amplitude = amplitude;
  audit.printed = closed_form_transfer_fidelity(input, amplitude);
  const GaussianState in = input.state();
  GaussianState out{amplitude * in.d,
                    amplitude * amplitude * in.xi +
                        0.5 * (1.0 - amplitude * amplitude) * Eigen::MatrixXd::Identity(2, 2)};
  audit.oracle = uhlmann_fidelity_gaussian(in, out);
  audit.discrepancy = audit.printed.well_defined ? std::abs(audit.printed.value - audit.oracle)
                                                 : std::numeric_limits<double>::infinity();
  return audit;
}

SwapVerdict swap_verify(const LatticeSpec& spec, std::span<const GaussianState> per_mode,
                        double tol) {
  spec.validate();
  return swap_verify(spec, design_couplings_nd(spec), per_mode, tol);
}

SwapVerdict swap_verify(const LatticeSpec& spec, const CouplingProfile& profile,
                        std::span<const GaussianState> per_mode, double tol, int period) {
  spec.validate();
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "tolerance must be > 0");
  const Dims& dims = spec.dims;
  const int n = dims.modes();
  if (static_cast<int>(per_mode.size()) != n)
    fail(ErrorCode::Shape, "swap needs one state per mode (" + std::to_string(n) + "), got " +
                               std::to_string(per_mode.size()));
  for (const auto& s : per_mode) require_single_mode(s, "per-mode state");

  SwapVerdict verdict;
  verdict.t_opt = optimal_time(dims, spec.J, period);
  const PhaseCorrection correction = correction_phase(dims, period);
  verdict.phase = correction.phi();

  const CouplingMatrix m = coupling_matrix(spec, profile);
  const SymplecticMatrix s = symplectic_from_evolution(evolve_operator(m, verdict.t_opt));
  GaussianState state = apply_symplectic(direct_sum(per_mode), s);
  for (int q = 0; q < n; ++q) state = apply_phase_gate(state, q, verdict.phase);

  std::vector<GaussianState> expected_modes(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q)
    expected_modes[static_cast<std::size_t>(mirror_index(q, dims))] =
        per_mode[static_cast<std::size_t>(q)];
  const GaussianState expected = direct_sum(expected_modes);
  verdict.worst_deviation = std::max((state.d - expected.d).cwiseAbs().maxCoeff(),
                                     (state.xi - expected.xi).cwiseAbs().maxCoeff());
  verdict.pass = verdict.worst_deviation < tol;
  return verdict;
}

}  // namespace wgpst
