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

#include "wgpst/error.hpp"

namespace wgpst {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidLattice: return "invalid-lattice";
    case ErrorCode::InvalidReferenceAxis: return "invalid-reference-axis";
    case ErrorCode::Index: return "index";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::NumericalFailure: return "numerical-failure";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::InvalidCoefficient: return "invalid-coefficient";
    case ErrorCode::Resource: return "resource";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::WeakCouplingViolation: return "weak-coupling-violation";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what, double detail) {
  throw Error(code, what, detail);
}

}  // namespace wgpst
