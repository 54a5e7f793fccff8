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

#include "cuspvol/volume_report.hpp"

#include <algorithm>
#include <cmath>

namespace cuspvol {

bool VolumeReport::all_degenerate() const {
  return std::all_of(per_tet.begin(), per_tet.end(),
                     [](const TetVolume& t) { return t.modulus.is_degenerate(); });
}

VolumeReport make_volume_report(std::span<const ShapeModulus> moduli) {
  VolumeReport report;
  bool per_tet_ok = true;
  for (const ShapeModulus& m : moduli) {
    TetVolume tv{m, tet_volume(m), {}};
    if (m.is_degenerate())
      tv.flags.push_back("degenerate:" + std::string(to_string(m.tag())));
    else if (m.is_flat())
      tv.flags.push_back("flat");
    else if (m.z().imag() < 0.0)
      tv.flags.push_back("negative");
    per_tet_ok = per_tet_ok && std::abs(tv.volume) <= kRegularIdealVolume + 1e-12;
    report.total += tv.volume;
    report.per_tet.push_back(std::move(tv));
  }
  report.within_bound =
      per_tet_ok && std::abs(report.total) <=
                        static_cast<double>(moduli.size()) * kRegularIdealVolume + 1e-12;
  return report;
}

}  // namespace cuspvol
