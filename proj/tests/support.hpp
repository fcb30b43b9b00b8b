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

#include <cmath>
#include <complex>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "wgpst/error.hpp"
#include "wgpst/lattice.hpp"

namespace wgpst::test {

using cplx = std::complex<double>;

// Code of the wgpst::Error thrown by `body`, or nothing if it returns.
template <typename F>
std::optional<ErrorCode> error_of(F&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// exp(X) by scaling and squaring of a truncated Taylor series. Slow but shares
// nothing with the spectral propagator it is used to check.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& x) {
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd y = x / std::ldexp(1.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(x.rows(), x.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * y / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline Eigen::MatrixXcd propagator_oracle(const Eigen::MatrixXd& m, double t) {
  return expm_taylor(cplx(0.0, -t) * m.cast<cplx>());
}

// Hopping matrix assembled site by site from the neighbour list.
inline Eigen::MatrixXd adjacency_oracle(const Dims& d, const CouplingProfile& p) {
  const int n = d.modes();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int u = 1; u <= d.L; ++u)
    for (int v = 1; v <= d.B; ++v)
      for (int w = 1; w <= d.H; ++w) {
        const int here = (u - 1) * d.B * d.H + (v - 1) * d.H + (w - 1);
        if (u < d.L) {
          const int there = u * d.B * d.H + (v - 1) * d.H + (w - 1);
          m(here, there) = m(there, here) = p[Axis::L][static_cast<std::size_t>(u - 1)];
        }
        if (v < d.B) {
          const int there = (u - 1) * d.B * d.H + v * d.H + (w - 1);
          m(here, there) = m(there, here) = p[Axis::B][static_cast<std::size_t>(v - 1)];
        }
        if (w < d.H) {
          const int there = (u - 1) * d.B * d.H + (v - 1) * d.H + w;
          m(here, there) = m(there, here) = p[Axis::H][static_cast<std::size_t>(w - 1)];
        }
      }
  return m;
}

// Seeded generator shared by the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // Random mirror-symmetric gap list of an n-mode chain.
  std::vector<double> mirror_gaps(int n, double lo = 0.2, double hi = 2.0) {
    std::vector<double> g(static_cast<std::size_t>(n - 1));
    for (std::size_t k = 0; k < g.size(); ++k) {
      const std::size_t partner = g.size() - 1 - k;
      g[k] = partner < k ? g[partner] : uniform(lo, hi);
    }
    return g;
  }

  CouplingProfile mirror_profile(const Dims& d) {
    CouplingProfile p;
    for (Axis a : kAxes)
      if (d[a] > 1) p[a] = mirror_gaps(d[a]);
    return p;
  }

  Dims dims(int max_axis, bool allow_3d = true) {
    for (;;) {
      Dims d{integer(1, max_axis), integer(2, max_axis), allow_3d ? integer(1, max_axis) : 1};
      if (d.modes() >= 2) return d;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace wgpst::test
