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

#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "wgpst/lattice.hpp"

using namespace wgpst;
using test::error_of;

TEST_SUITE("lattice") {

TEST_CASE("chain couplings of the designed profile") {
  CHECK(chain_couplings(2, 1.0) == std::vector<double>{1.0});
  const auto five = chain_couplings(5, 1.0);
  REQUIRE(five.size() == 4);
  CHECK(five[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(five[1] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  CHECK(five[1] == doctest::Approx(1.2247449).epsilon(1e-7));
  CHECK(five[2] == five[1]);
  CHECK(five[3] == five[0]);
  const auto three = chain_couplings(3, 2.0);
  CHECK(three[0] == doctest::Approx(2.0));
  CHECK(three[1] == doctest::Approx(2.0));
  CHECK(error_of([] { chain_couplings(1, 1.0); }) == ErrorCode::InvalidLattice);
  CHECK(error_of([] { chain_couplings(4, 0.0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("multi-axis profiles scale against axis B") {
  auto p = design_couplings_nd({{1, 5, 1}, 1.0});
  CHECK(p[Axis::L].empty());
  CHECK(p[Axis::H].empty());
  CHECK(p[Axis::B][1] == doctest::Approx(1.2247449).epsilon(1e-7));

  p = design_couplings_nd({{2, 3, 1}, 1.0});
  REQUIRE(p[Axis::L].size() == 1);
  CHECK(p[Axis::L][0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(p[Axis::B][0] == doctest::Approx(1.0));
  CHECK(p[Axis::B][1] == doctest::Approx(1.0));

  p = design_couplings_nd({{3, 3, 3}, 1.0});
  for (Axis a : kAxes) {
    REQUIRE(p[a].size() == 2);
    CHECK(p[a][0] == doctest::Approx(1.0));
    CHECK(p[a][1] == doctest::Approx(1.0));
  }
}

TEST_CASE("lattice validation order") {
  CHECK(error_of([] { LatticeSpec{{1, 1, 1}, 1.0}.validate(); }) == ErrorCode::InvalidLattice);
  CHECK(error_of([] { LatticeSpec{{0, 5, 1}, 1.0}.validate(); }) == ErrorCode::InvalidLattice);
  CHECK(error_of([] { LatticeSpec{{3, 1, 1}, 1.0}.validate(); }) == ErrorCode::InvalidReferenceAxis);
  CHECK(error_of([] { LatticeSpec{{1, 1, 4}, 1.0}.validate(); }) == ErrorCode::InvalidReferenceAxis);
  CHECK(error_of([] { LatticeSpec{{1, 4, 1}, -1.0}.validate(); }) == ErrorCode::InvalidParameter);
  CHECK(error_of([] { LatticeSpec{{1, 4, 1}, NAN}.validate(); }) == ErrorCode::InvalidParameter);
  CHECK_FALSE(error_of([] { LatticeSpec{{1, 2, 1}, 0.3}.validate(); }));
}

TEST_CASE("row-major mode index") {
  CHECK(mode_index({1, 1, 1}, {4, 5, 6}) == 0);
  CHECK(mode_index({2, 3, 1}, {2, 3, 1}) == 5);
  CHECK(mode_index({1, 2, 2}, {1, 3, 3}) == 4);
  CHECK(error_of([] { mode_index({3, 1, 1}, {2, 3, 1}); }) == ErrorCode::Index);
  CHECK(error_of([] { mode_index({1, 0, 1}, {2, 3, 1}); }) == ErrorCode::Index);
  CHECK(error_of([] { site_of(6, {2, 3, 1}); }) == ErrorCode::Index);
}

TEST_CASE("coupling matrices of small lattices") {
  const auto m2 = coupling_matrix({{1, 2, 1}, 1.0}, design_couplings_1d(2, 1.0)).M;
  Eigen::Matrix2d expected;
  expected << 0, 1, 1, 0;
  CHECK((m2 - expected).cwiseAbs().maxCoeff() == 0.0);

  const auto m3 = coupling_matrix({{1, 3, 1}, 1.0}, design_couplings_1d(3, 1.0)).M;
  CHECK(m3(0, 1) == doctest::Approx(1.0));
  CHECK(m3(1, 2) == doctest::Approx(1.0));
  CHECK(m3(0, 2) == 0.0);
  CHECK(m3.diagonal().cwiseAbs().maxCoeff() == 0.0);

  // 2x2 square: the four edges, nothing across the diagonals.
  const LatticeSpec sq{{2, 2, 1}, 1.0};
  const auto m4 = coupling_matrix(sq, design_couplings_nd(sq)).M;
  Eigen::Matrix4d ring;
  ring << 0, 1, 1, 0,
          1, 0, 0, 1,
          1, 0, 0, 1,
          0, 1, 1, 0;
  CHECK((m4 - ring).cwiseAbs().maxCoeff() < 1e-15);

  CouplingProfile bad = design_couplings_nd(sq);
  bad[Axis::B].push_back(1.0);
  CHECK(error_of([&] { coupling_matrix(sq, bad); }) == ErrorCode::Shape);
}

TEST_CASE("mirror sites") {
  const Dims d{2, 3, 4};
  CHECK(mirror_site({1, 1, 1}, d) == Site{2, 3, 4});
  CHECK(mirror_site({1, 2, 3}, d) == Site{2, 2, 2});
  CHECK(mirror_index(0, chain_dims(5)) == 4);
  CHECK(mirror_index(2, chain_dims(5)) == 2);
}

TEST_CASE("property: index map is a bijection") {
  test::Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Dims d = gen.dims(6);
    for (int q = 0; q < d.modes(); ++q) {
      const Site s = site_of(q, d);
      CHECK(mode_index(s, d) == q);
      CHECK(mirror_site(mirror_site(s, d), d) == s);
    }
  }
}

TEST_CASE("property: P M P = M for designed profiles") {
  test::Gen gen(12);
  for (int trial = 0; trial < 60; ++trial) {
    const LatticeSpec spec{gen.dims(5), gen.uniform(0.1, 3.0)};
    const auto m = coupling_matrix(spec, design_couplings_nd(spec)).M;
    const auto perm = mirror_permutation(spec.dims);
    double worst = 0.0;
    for (int a = 0; a < m.rows(); ++a)
      for (int b = 0; b < m.cols(); ++b)
        worst = std::max(worst, std::abs(m(a, b) - m(perm[static_cast<std::size_t>(a)],
                                                      perm[static_cast<std::size_t>(b)])));
    CHECK(worst == 0.0);
    CHECK(design_couplings_nd(spec).is_mirror_symmetric());
  }
}

TEST_CASE("property: assembled matrix matches the neighbour-list oracle") {
  test::Gen gen(13);
  for (int L = 1; L <= 4; ++L)
    for (int B = 2; B <= 4; ++B)
      for (int H = 1; H <= 3; ++H) {
        const LatticeSpec spec{{L, B, H}, 1.0};
        const CouplingProfile p = gen.mirror_profile(spec.dims);
        const auto m = coupling_matrix(spec, p).M;
        CHECK((m - test::adjacency_oracle(spec.dims, p)).cwiseAbs().maxCoeff() == 0.0);
      }
}

TEST_CASE("property: Kronecker sum structure for planar lattices") {
  for (int L = 1; L <= 4; ++L)
    for (int B = 2; B <= 4; ++B) {
      const LatticeSpec spec{{L, B, 1}, 1.0};
      const auto p = design_couplings_nd(spec);
      const Eigen::MatrixXd mL = L > 1 ? chain_matrix(p[Axis::L]) : Eigen::MatrixXd::Zero(1, 1);
      const Eigen::MatrixXd mB = chain_matrix(p[Axis::B]);
      Eigen::MatrixXd kron = Eigen::MatrixXd::Zero(L * B, L * B);
      for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b)
          kron.block(a * B, b * B, B, B) += mL(a, b) * Eigen::MatrixXd::Identity(B, B);
      for (int a = 0; a < L; ++a) kron.block(a * B, a * B, B, B) += mB;
      CHECK((coupling_matrix(spec, p).M - kron).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("property: peak coupling stays below sqrt(N)/2 + 1") {
  for (int n = 2; n <= 10000; n += (n < 200 ? 1 : 37)) {
    const auto g = chain_couplings(n, 1.0);
    CHECK(*std::max_element(g.begin(), g.end()) <= std::sqrt(static_cast<double>(n)) / 2.0 + 1.0);
  }
}

}
