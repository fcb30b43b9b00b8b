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

#include <stdexcept>
#include <string>

namespace wgpst {

enum class ErrorCode {
  InvalidLattice = 1,
  InvalidReferenceAxis,
  Index,
  Shape,
  InvalidParameter,
  NumericalFailure,
  InvalidState,
  InvalidCoefficient,
  Resource,
  Unsupported,
  WeakCouplingViolation,
  Io,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library. `detail()` carries the numeric payload
// some errors report: the residual norm of a failed eigensolve, the required
// dimension of a refused oracle job, the offending gap index, the leak.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double detail = 0.0)
      : std::runtime_error(what), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  double detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  double detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what, double detail = 0.0);

}  // namespace wgpst
