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

#include <string>
#include <string_view>

#include "wgpst/fabrication.hpp"
#include "wgpst/fock.hpp"
#include "wgpst/gaussian.hpp"
#include "wgpst/lattice.hpp"

namespace wgpst {

// printf %.*g with negative zero printed as 0.
std::string format_sig(double value, int digits);

// "LxBxH", e.g. "1x5x1". Malformed text is an invalid-parameter error.
Dims parse_dims(std::string_view text);
std::string dims_to_string(const Dims& dims);

// {"dims": [L, B, H], "J": J, "axis_profiles": {"L": [...], "B": [...], "H": [...]}}
// with couplings rounded to 15 significant digits.
std::string profile_to_json(const LatticeSpec& spec, const CouplingProfile& profile);
CouplingProfile profile_from_json(std::string_view text, LatticeSpec* spec = nullptr);

// axis,gap_index,J,kappa at 12 significant digits.
std::string plan_to_csv(const FabricationPlan& plan);

// {"modes": n, "d": [...], "xi": [...]} with xi row-major.
std::string gaussian_to_json(const GaussianState& state);
GaussianState gaussian_from_json(std::string_view text);

// {"cutoff": c, "leak": l, "re": [...], "im": [...]} row-major.
std::string fock_to_json(const FockState& state);
FockState fock_from_json(std::string_view text);

}  // namespace wgpst
