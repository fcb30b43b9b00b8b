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

#include "wgpst/fabrication.hpp"

#include <cmath>
#include <string>

#include "wgpst/error.hpp"

namespace wgpst {

FabricationPlan separations(const CouplingProfile& profile, double gamma, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    fail(ErrorCode::InvalidParameter, "eta must be a finite positive number");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    fail(ErrorCode::InvalidParameter, "gamma must be a finite positive number");
  FabricationPlan plan;
  plan.gamma = gamma;
  plan.eta = eta;
  for (Axis axis : kAxes) {
    const auto& gaps = profile[axis];
    for (std::size_t k = 0; k < gaps.size(); ++k) {
      const double j = gaps[k];
      if (!(j > 0.0))
        fail(ErrorCode::InvalidParameter, std::string("coupling on axis ") + axis_name(axis) +
                                              " gap " + std::to_string(k + 1) + " is not positive");
      if (gamma <= j)
        fail(ErrorCode::WeakCouplingViolation,
             std::string("gamma ") + std::to_string(gamma) + " does not exceed coupling " +
                 std::to_string(j) + " on axis " + axis_name(axis) + " gap " + std::to_string(k + 1),
             j);
      plan.gaps.push_back({axis, static_cast<int>(k + 1), j, std::log(gamma / j) / eta});
    }
  }
  return plan;
}

double coupling_from_separation(double kappa, double gamma, double eta) {
  return gamma * std::exp(-eta * kappa);
}

}  // namespace wgpst
