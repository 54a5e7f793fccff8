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

#include "cuspvol/error.hpp"

namespace cuspvol {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NonInvolutiveGluing: return "NonInvolutiveGluing";
    case ErrorKind::UnglueedFace: return "UnglueedFace";
    case ErrorKind::NonOrientable: return "NonOrientable";
    case ErrorKind::NonTorusLink: return "NonTorusLink";
    case ErrorKind::EdgeCountMismatch: return "EdgeCountMismatch";
    case ErrorKind::CuspCountMismatch: return "CuspCountMismatch";
    case ErrorKind::PeripheralMismatch: return "PeripheralMismatch";
    case ErrorKind::MissingPeripheralRows: return "MissingPeripheralRows";
    case ErrorKind::NonCoprimeFilling: return "NonCoprimeFilling";
    case ErrorKind::IdentityHasNoIsolatedFixedPoints:
      return "IdentityHasNoIsolatedFixedPoints";
    case ErrorKind::DihedralPeripheral: return "DihedralPeripheral";
    case ErrorKind::NonCommutingGenerators: return "NonCommutingGenerators";
    case ErrorKind::AllIdentity: return "AllIdentity";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerationGuard: return "DegenerationGuard";
    case ErrorKind::SingularJacobianUnrecoverable:
      return "SingularJacobianUnrecoverable";
    case ErrorKind::ShapeResidualTooLarge: return "ShapeResidualTooLarge";
    case ErrorKind::NumericallyCoincidentVertices:
      return "NumericallyCoincidentVertices";
    case ErrorKind::RelatorResidualTooLarge: return "RelatorResidualTooLarge";
    case ErrorKind::NotApplicable: return "NotApplicable";
  }
  return "UnknownError";
}

}  // namespace cuspvol
