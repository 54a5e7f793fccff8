// Copyright 2026 The cuspvol Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cuspvol {

// Every failure the library reports carries one of these kinds. The names
// returned by error_name() are stable and printed by the CLI.
enum class ErrorKind {
  MalformedInput,
  NonInvolutiveGluing,
  UnglueedFace,
  NonOrientable,
  NonTorusLink,
  EdgeCountMismatch,
  CuspCountMismatch,
  PeripheralMismatch,
  MissingPeripheralRows,
  NonCoprimeFilling,
  IdentityHasNoIsolatedFixedPoints,
  DihedralPeripheral,
  NonCommutingGenerators,
  AllIdentity,
  NoConvergence,
  DegenerationGuard,
  SingularJacobianUnrecoverable,
  ShapeResidualTooLarge,
  NumericallyCoincidentVertices,
  RelatorResidualTooLarge,
  NotApplicable,
};

std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace cuspvol
