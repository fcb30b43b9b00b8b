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

#include <vector>

#include "wgpst/lattice.hpp"

namespace wgpst {

struct GapSeparation {
  Axis axis = Axis::B;
  int gap = 1;  // 1-based gap index along the axis
  double coupling = 0.0;
  double kappa = 0.0;
};

// Waveguide separations realizing a coupling profile under the exponential
// coupling-distance law J = gamma exp(-eta kappa).
struct FabricationPlan {
  std::vector<GapSeparation> gaps;  // axis order L, B, H; gap order within
  double gamma = 0.0;
  double eta = 0.0;
};

// kappa_j = ln(gamma / J_j) / eta. Requires gamma > max J_j and eta > 0.
FabricationPlan separations(const CouplingProfile& profile, double gamma, double eta);

double coupling_from_separation(double kappa, double gamma, double eta);

}  // namespace wgpst
