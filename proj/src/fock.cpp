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

#include "wgpst/fock.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "parallel.hpp"
#include "wgpst/error.hpp"

namespace wgpst {

// ---------------------------------------------------------------- FockState

FockState::FockState(Eigen::MatrixXcd c, double leak) : c_(std::move(c)), leak_(leak) {
  if (c_.rows() == 0 || c_.rows() != c_.cols())
    fail(ErrorCode::Shape, "Fock density matrix must be square and non-empty");
}

FockState FockState::vacuum(int cutoff) {
  if (cutoff < 0) fail(ErrorCode::InvalidParameter, "cutoff must be >= 0");
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  c(0, 0) = 1.0;
  return FockState(std::move(c));
}

void FockState::validate() const {
  if ((c_ - c_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::InvalidState, "density matrix is not Hermitian");
  const double tr = trace();
  if (tr < 1.0 - leak_ - 1e-12 || tr > 1.0 + 1e-12)
    fail(ErrorCode::InvalidState, "density matrix trace " + std::to_string(tr) + " out of range", tr);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(c_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10)
    fail(ErrorCode::InvalidState, "density matrix is not positive semidefinite",
         eig.eigenvalues().minCoeff());
}

// ------------------------------------------------------------- constructors

namespace {

// Leak of truncating a normalized distribution at each cutoff, from its
// probabilities p[0..K].
std::vector<double> leak_profile(const std::vector<double>& p) {
  std::vector<double> tail(p.size(), 0.0);
  double acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    tail[k] = acc;  // mass strictly above k
    acc += p[k];
  }
  double prefix = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    prefix += p[k];
    tail[k] = std::max(tail[k], 1.0 - prefix);
    tail[k] = std::max(tail[k], 0.0);
  }
  return tail;
}

int choose_cutoff(const std::vector<double>& leaks, std::optional<int> cutoff, double budget,
                  const char* what) {
  if (cutoff) {
    if (*cutoff < 0) fail(ErrorCode::InvalidParameter, "cutoff must be >= 0");
    const double leak = *cutoff < static_cast<int>(leaks.size())
                            ? leaks[static_cast<std::size_t>(*cutoff)]
                            : 0.0;
    if (leak > budget)
      fail(ErrorCode::Resource,
           std::string(what) + ": truncation leak " + std::to_string(leak) + " at cutoff " +
               std::to_string(*cutoff) + " exceeds budget",
           leak);
    return *cutoff;
  }
  for (std::size_t k = 0; k < leaks.size(); ++k)
    if (leaks[k] <= budget) return static_cast<int>(k);
  fail(ErrorCode::Resource,
       std::string(what) + ": no cutoff up to " + std::to_string(kMaxAutoCutoff) +
           " meets the leak budget",
       leaks.back());
}

FockState pure_state(const std::vector<cplx>& amps, std::optional<int> cutoff, double budget,
                     const char* what) {
  std::vector<double> p(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) p[k] = std::norm(amps[k]);
  const auto leaks = leak_profile(p);
  const int c = choose_cutoff(leaks, cutoff, budget, what);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(c + 1);
  for (int k = 0; k <= c && k < static_cast<int>(amps.size()); ++k) psi(k) = amps[static_cast<std::size_t>(k)];
  const double leak = c < static_cast<int>(leaks.size()) ? leaks[static_cast<std::size_t>(c)] : 0.0;
  psi /= psi.norm();
  return FockState(psi * psi.adjoint(), leak);
}

std::vector<cplx> coherent_amplitudes(cplx beta) {
  std::vector<cplx> amps(kMaxAutoCutoff + 1);
  amps[0] = std::exp(-0.5 * std::norm(beta));
  for (std::size_t k = 1; k < amps.size(); ++k)
    amps[k] = amps[k - 1] * beta / std::sqrt(static_cast<double>(k));
  return amps;
}

}  // namespace

FockState make_fock(int photons, int cutoff) {
  if (photons < 0) fail(ErrorCode::InvalidParameter, "photon number must be >= 0");
  if (cutoff < photons)
    fail(ErrorCode::Resource, "cutoff " + std::to_string(cutoff) + " below photon number", 1.0);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  c(photons, photons) = 1.0;
  return FockState(std::move(c));
}

FockState make_coherent(cplx beta, std::optional<int> cutoff, double leak_budget) {
  return pure_state(coherent_amplitudes(beta), cutoff, leak_budget, "coherent state");
}

FockState make_squeezed(double r, std::optional<int> cutoff, double leak_budget) {
  std::vector<cplx> amps(kMaxAutoCutoff + 1, 0.0);
  const double t = -std::tanh(r);
  double a = 1.0 / std::sqrt(std::cosh(r));
  for (std::size_t n = 0; n < amps.size(); n += 2) {
    amps[n] = a;
    // c_{2k+2}/c_{2k} = t sqrt((2k+1)(2k+2)) / (2k+2)
    a *= t * std::sqrt((n + 1.0) * (n + 2.0)) / (n + 2.0);
  }
  return pure_state(amps, cutoff, leak_budget, "squeezed state");
}

FockState make_cat(cplx beta, std::optional<int> cutoff, double leak_budget) {
  auto amps = coherent_amplitudes(beta);
  const double norm = std::sqrt(2.0 * (1.0 + std::exp(-2.0 * std::norm(beta))));
  for (std::size_t k = 0; k < amps.size(); ++k) amps[k] = k % 2 == 0 ? 2.0 * amps[k] / norm : 0.0;
  return pure_state(amps, cutoff, leak_budget, "cat state");
}

FockState make_thermal(double mean_photons, std::optional<int> cutoff, double leak_budget) {
  if (!(mean_photons >= 0.0)) fail(ErrorCode::InvalidParameter, "mean photon number must be >= 0");
  const double ratio = mean_photons / (mean_photons + 1.0);
  std::vector<double> leaks(kMaxAutoCutoff + 1);
  for (std::size_t k = 0; k < leaks.size(); ++k) leaks[k] = std::pow(ratio, static_cast<double>(k + 1));
  const int c = choose_cutoff(leaks, cutoff, leak_budget, "thermal state");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(c + 1, c + 1);
  double total = 0.0;
  for (int k = 0; k <= c; ++k) {
    m(k, k) = std::pow(ratio, k) / (mean_photons + 1.0);
    total += m(k, k).real();
  }
  return FockState(m / total, std::pow(ratio, c + 1.0));
}

FockState build_fock_state(const StateSpec& spec, std::optional<int> cutoff, double leak_budget) {
  switch (spec.kind) {
    case StateKind::Vacuum: return FockState::vacuum(cutoff.value_or(0));
    case StateKind::Fock: return make_fock(spec.photons, cutoff.value_or(spec.photons));
    case StateKind::Coherent: return make_coherent(spec.amplitude, cutoff, leak_budget);
    case StateKind::Squeezed: return make_squeezed(spec.amplitude.real(), cutoff, leak_budget);
    case StateKind::Cat: return make_cat(spec.amplitude, cutoff, leak_budget);
    case StateKind::Thermal: return make_thermal(spec.amplitude.real(), cutoff, leak_budget);
    case StateKind::Gaussian: break;
  }
  fail(ErrorCode::Unsupported, "state '" + spec.to_string() + "' has no Fock constructor");
}

std::optional<GaussianState> gaussian_moments(const StateSpec& spec) {
  GaussianState s = GaussianState::vacuum(1);
  switch (spec.kind) {
    case StateKind::Vacuum: return s;
    case StateKind::Coherent:
      s.d << std::sqrt(2.0) * spec.amplitude.real(), std::sqrt(2.0) * spec.amplitude.imag();
      return s;
    case StateKind::Squeezed: {
      const double r = spec.amplitude.real();
      s.xi << 0.5 * std::exp(-2.0 * r), 0.0, 0.0, 0.5 * std::exp(2.0 * r);
      return s;
    }
    case StateKind::Thermal:
      s.xi *= 2.0 * spec.amplitude.real() + 1.0;
      return s;
    case StateKind::Gaussian: return spec.moments.state();
    case StateKind::Fock:
    case StateKind::Cat: return std::nullopt;
  }
  return std::nullopt;
}

GaussianState phase_space_moments(const FockState& state) {
  // One padding level makes the second moments exact for the truncated state.
  const int dim = state.cutoff() + 2;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho.topLeftCorner(dim - 1, dim - 1) = state.matrix();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd ad = a.adjoint();
  const double s2 = std::sqrt(2.0);
  const Eigen::MatrixXcd x = (a + ad) / s2;
  const Eigen::MatrixXcd p = (a - ad) / cplx(0.0, s2);
  const auto expect = [&](const Eigen::MatrixXcd& op) { return (rho * op).trace().real(); };
  GaussianState out = GaussianState::vacuum(1);
  const double mx = expect(x), mp = expect(p);
  out.d << mx, mp;
  out.xi << expect(x * x) - mx * mx, 0.5 * expect(x * p + p * x) - mx * mp,
      0.5 * expect(x * p + p * x) - mx * mp, expect(p * p) - mp * mp;
  return out;
}

// ------------------------------------------------------------ spec parsing

namespace {

double parse_double(std::string_view text, std::string_view context) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    fail(ErrorCode::InvalidParameter,
         "cannot parse number '" + std::string(text) + "' in '" + std::string(context) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

cplx parse_complex(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) fail(ErrorCode::InvalidParameter, "empty complex number");
  if (t.back() != 'i' && t.back() != 'j') return {parse_double(t, text), 0.0};
  const std::string_view body = t.substr(0, t.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag_part = [&](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s, text);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {parse_double(body.substr(0, split), text), imag_part(body.substr(split))};
}

StateSpec parse_state_spec(std::string_view text) {
  const std::string_view t = trim(text);
  const auto colon = t.find(':');
  const std::string_view kind = t.substr(0, colon);
  const std::string_view param = colon == std::string_view::npos ? std::string_view{} : t.substr(colon + 1);
  StateSpec spec;
  const auto need_param = [&] {
    if (param.empty())
      fail(ErrorCode::InvalidParameter, "state '" + std::string(t) + "' needs a parameter");
  };
  if (kind == "vacuum") {
    spec.kind = StateKind::Vacuum;
  } else if (kind == "fock") {
    need_param();
    spec.kind = StateKind::Fock;
    const double n = parse_double(param, t);
    if (n < 0 || n != std::floor(n))
      fail(ErrorCode::InvalidParameter, "fock photon number must be a non-negative integer");
    spec.photons = static_cast<int>(n);
  } else if (kind == "coherent" || kind == "cat") {
    need_param();
    spec.kind = kind == "coherent" ? StateKind::Coherent : StateKind::Cat;
    spec.amplitude = parse_complex(param);
  } else if (kind == "squeezed" || kind == "thermal") {
    need_param();
    spec.kind = kind == "squeezed" ? StateKind::Squeezed : StateKind::Thermal;
    spec.amplitude = parse_double(param, t);
    if (spec.kind == StateKind::Thermal && spec.amplitude.real() < 0.0)
      fail(ErrorCode::InvalidParameter, "thermal mean photon number must be >= 0");
  } else if (kind == "gaussian") {
    need_param();
    spec.kind = StateKind::Gaussian;
    std::vector<double> v;
    std::size_t start = 0;
    while (start <= param.size()) {
      const auto comma = param.find(',', start);
      v.push_back(parse_double(trim(param.substr(start, comma - start)), t));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (v.size() != 5)
      fail(ErrorCode::InvalidParameter, "gaussian state needs ax,ay,a,b,c");
    spec.moments = InputMoments{v[0], v[1], v[2], v[3], v[4]};
    spec.moments.state().validate();
  } else {
    fail(ErrorCode::InvalidParameter, "unknown state kind '" + std::string(kind) + "'");
  }
  return spec;
}

std::string StateSpec::to_string() const {
  std::ostringstream os;
  os.precision(15);
  const auto complex_text = [&] {
    os << amplitude.real();
    if (amplitude.imag() != 0.0) os << std::showpos << amplitude.imag() << std::noshowpos << 'i';
  };
  switch (kind) {
    case StateKind::Vacuum: os << "vacuum"; break;
    case StateKind::Fock: os << "fock:" << photons; break;
    case StateKind::Coherent: os << "coherent:"; complex_text(); break;
    case StateKind::Cat: os << "cat:"; complex_text(); break;
    case StateKind::Squeezed: os << "squeezed:" << amplitude.real(); break;
    case StateKind::Thermal: os << "thermal:" << amplitude.real(); break;
    case StateKind::Gaussian:
      os << "gaussian:" << moments.alpha_x << ',' << moments.alpha_y << ',' << moments.a << ','
         << moments.b << ',' << moments.c;
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- channels

FockState loss_channel_output(const FockState& input, cplx alpha) {
  const double eta = std::norm(alpha);
  if (!(eta <= 1.0 + 2e-12))
    fail(ErrorCode::InvalidCoefficient,
         "coupling amplitude |alpha| = " + std::to_string(std::sqrt(eta)) + " exceeds 1",
         std::sqrt(eta));
  const double loss = std::max(0.0, 1.0 - eta);
  const int cutoff = input.cutoff();
  const auto dim = static_cast<std::size_t>(cutoff + 1);

  // sqrt(binom(n, l)) via Pascal's triangle
  std::vector<std::vector<double>> binom(dim, std::vector<double>(dim, 0.0));
  for (std::size_t n = 0; n < dim; ++n) {
    binom[n][0] = 1.0;
    for (std::size_t l = 1; l <= n; ++l) binom[n][l] = binom[n - 1][l - 1] + (l < n ? binom[n - 1][l] : 0.0);
  }
  std::vector<cplx> alpha_pow(dim), alpha_conj_pow(dim);
  std::vector<double> loss_pow(dim);
  alpha_pow[0] = alpha_conj_pow[0] = 1.0;
  loss_pow[0] = 1.0;
  for (std::size_t k = 1; k < dim; ++k) {
    alpha_pow[k] = alpha_pow[k - 1] * alpha;
    alpha_conj_pow[k] = alpha_conj_pow[k - 1] * std::conj(alpha);
    loss_pow[k] = loss_pow[k - 1] * loss;
  }

  const Eigen::MatrixXcd& c = input.matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (std::size_t n = 0; n < dim; ++n)
    for (std::size_t m = 0; m < dim; ++m) {
      const cplx cnm = c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
      if (cnm == 0.0) continue;
      for (std::size_t l = 0; l <= std::min(n, m); ++l)
        out(static_cast<Eigen::Index>(n - l), static_cast<Eigen::Index>(m - l)) +=
            cnm * std::sqrt(binom[n][l] * binom[m][l]) * alpha_pow[n - l] *
            alpha_conj_pow[m - l] * loss_pow[l];
    }
  return FockState(std::move(out), input.leak());
}

FockState apply_phase_gate_fock(const FockState& state, double phi) {
  Eigen::MatrixXcd c = state.matrix();
  for (Eigen::Index n = 0; n < c.rows(); ++n)
    for (Eigen::Index m = 0; m < c.cols(); ++m)
      if (n != m) c(n, m) *= std::polar(1.0, phi * static_cast<double>(n - m));
  return FockState(std::move(c), state.leak());
}

namespace {

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& rho, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  if (eig.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "Hermitian eigensolve failed");
  Eigen::VectorXd vals = eig.eigenvalues();
  if (vals.minCoeff() < -1e-10)
    fail(ErrorCode::InvalidState, std::string(what) + " has a negative eigenvalue", vals.minCoeff());
  vals = vals.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * vals.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

double fock_uhlmann_fidelity(const FockState& rho1, const FockState& rho2) {
  if (rho1.cutoff() != rho2.cutoff())
    fail(ErrorCode::Shape, "fidelity needs states with the same cutoff");
  const Eigen::MatrixXcd s = hermitian_sqrt(rho1.matrix(), "first state");
  Eigen::MatrixXcd inner = s * rho2.matrix() * s;
  inner = 0.5 * (inner + inner.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(inner, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10)
    fail(ErrorCode::InvalidState, "second state has a negative eigenvalue",
         eig.eigenvalues().minCoeff());
  const double root_trace = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return root_trace * root_trace;
}

// ------------------------------------------------------------------ oracle

std::size_t sector_dimension(int modes, int photons) {
  // binom(photons + modes - 1, modes - 1), saturating
  double d = 1.0;
  for (int k = 1; k < modes; ++k) d = d * (photons + k) / k;
  return d > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(std::llround(d));
}

namespace {

void enumerate_occupations(int modes, int photons, std::vector<int>& current, int mode,
                           std::vector<std::vector<int>>& out) {
  if (mode == modes - 1) {
    current[static_cast<std::size_t>(mode)] = photons;
    out.push_back(current);
    return;
  }
  for (int k = photons; k >= 0; --k) {
    current[static_cast<std::size_t>(mode)] = k;
    enumerate_occupations(modes, photons - k, current, mode + 1, out);
  }
}

}  // namespace

double MultimodeFockState::trace() const {
  double tr = 0.0;
  for (const auto& s : sectors)
    tr += coefficients(s.photons, s.photons).real() * s.amplitudes.squaredNorm();
  return tr;
}

MultimodeFockState full_evolution_oracle(const FockState& input, int input_mode,
                                         const CouplingMatrix& coupling, double t,
                                         const OracleOptions& options) {
  const int modes = coupling.dims.modes();
  if (coupling.M.rows() != modes) fail(ErrorCode::Shape, "coupling matrix does not match dims");
  if (input_mode < 0 || input_mode >= modes)
    fail(ErrorCode::Index, "input mode " + std::to_string(input_mode) + " out of range");
  if (!std::isfinite(t) || t < 0.0) fail(ErrorCode::InvalidParameter, "time must be >= 0");
  const int cutoff = input.cutoff();
  for (int n = 0; n <= cutoff; ++n) {
    const std::size_t dim = sector_dimension(modes, n);
    if (dim > options.sector_cap)
      fail(ErrorCode::Resource,
           "sector with " + std::to_string(n) + " photons needs " + std::to_string(dim) +
               " basis states (cap " + std::to_string(options.sector_cap) + ")",
           static_cast<double>(dim));
  }

  MultimodeFockState out;
  out.dims = coupling.dims;
  out.coefficients = input.matrix();
  out.leak = input.leak();
  out.sectors.resize(static_cast<std::size_t>(cutoff + 1));

  detail::parallel_for(out.sectors.size(), options.workers, [&](std::size_t idx) {
    const int n = static_cast<int>(idx);
    FockSector& sector = out.sectors[idx];
    sector.photons = n;
    std::vector<int> scratch(static_cast<std::size_t>(modes), 0);
    enumerate_occupations(modes, n, scratch, 0, sector.occupations);
    const auto dim = static_cast<Eigen::Index>(sector.occupations.size());

    std::map<std::vector<int>, Eigen::Index> lookup;
    for (Eigen::Index k = 0; k < dim; ++k) lookup.emplace(sector.occupations[static_cast<std::size_t>(k)], k);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
      std::vector<int> occ = sector.occupations[static_cast<std::size_t>(col)];
      for (int from = 0; from < modes; ++from) {
        if (occ[static_cast<std::size_t>(from)] == 0) continue;
        for (int to = 0; to < modes; ++to) {
          const double hop = coupling.M(to, from);
          if (to == from || hop == 0.0) continue;
          const double amp = hop * std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(from)]) *
                                             (occ[static_cast<std::size_t>(to)] + 1));
          --occ[static_cast<std::size_t>(from)];
          ++occ[static_cast<std::size_t>(to)];
          h(lookup.at(occ), col) += amp;
          ++occ[static_cast<std::size_t>(from)];
          --occ[static_cast<std::size_t>(to)];
        }
      }
    }

    std::vector<int> start(static_cast<std::size_t>(modes), 0);
    start[static_cast<std::size_t>(input_mode)] = n;
    const Eigen::Index init = lookup.at(start);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    if (eig.info() != Eigen::Success)
      fail(ErrorCode::NumericalFailure, "sector eigensolve failed for n = " + std::to_string(n));
    const Eigen::MatrixXd& v = eig.eigenvectors();
    Eigen::VectorXcd weights(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
      weights(k) = std::polar(1.0, -eig.eigenvalues()(k) * t) * v(init, k);
    sector.amplitudes = v.cast<cplx>() * weights;
  });
  return out;
}

FockState reduce_mode(const MultimodeFockState& state, int mode) {
  const int modes = state.modes();
  if (mode < 0 || mode >= modes)
    fail(ErrorCode::Index, "mode " + std::to_string(mode) + " out of range");
  const auto cutoff = static_cast<int>(state.sectors.size()) - 1;

  std::vector<std::map<std::vector<int>, Eigen::Index>> lookup(state.sectors.size());
  for (std::size_t n = 0; n < state.sectors.size(); ++n)
    for (std::size_t k = 0; k < state.sectors[n].occupations.size(); ++k)
      lookup[n].emplace(state.sectors[n].occupations[k], static_cast<Eigen::Index>(k));

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  const auto m_idx = static_cast<std::size_t>(mode);
  for (int n = 0; n <= cutoff; ++n)
    for (int m = 0; m <= cutoff; ++m) {
      const cplx cnm = state.coefficients(n, m);
      if (cnm == 0.0) continue;
      const FockSector& sn = state.sectors[static_cast<std::size_t>(n)];
      const FockSector& sm = state.sectors[static_cast<std::size_t>(m)];
      for (std::size_t e = 0; e < sn.occupations.size(); ++e) {
        std::vector<int> partner = sn.occupations[e];
        const int a = partner[m_idx];
        const int b = a + (m - n);
        if (b < 0) continue;
        partner[m_idx] = b;
        const auto it = lookup[static_cast<std::size_t>(m)].find(partner);
        if (it == lookup[static_cast<std::size_t>(m)].end()) continue;
        out(a, b) += cnm * sn.amplitudes(static_cast<Eigen::Index>(e)) * std::conj(sm.amplitudes(it->second));
      }
    }
  return FockState(std::move(out), state.leak);
}

}  // namespace wgpst
