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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cuspvol/ideal_geometry.hpp"

namespace cuspvol {

struct TetVolume {
  ShapeModulus modulus = ShapeModulus::degenerate(Degeneracy::Infinity);
  double volume = 0.0;
  std::vector<std::string> flags;  // "degenerate:<tag>", "flat", "negative"
};

struct VolumeReport {
  std::vector<TetVolume> per_tet;
  double total = 0.0;
  /// |total| <= tet_count * v3 (and every |v_i| <= v3).
  bool within_bound = true;
  std::optional<std::string> policy;
  std::optional<double> relator_residual;

  bool all_degenerate() const;
};

/// Sums signed tetrahedron volumes and fills in flags and the bound check.
VolumeReport make_volume_report(std::span<const ShapeModulus> moduli);

}  // namespace cuspvol
