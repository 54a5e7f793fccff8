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

// Shapes and volumes of ideal tetrahedra.

#pragma once

#include <string_view>

#include "cuspvol/moebius.hpp"

namespace cuspvol {

/// Volume of the regular ideal tetrahedron, 3 * lobachevsky(pi / 3).
inline constexpr double kRegularIdealVolume = 1.0149416064096536250;

/// Moduli with |Im z| at or below this are flat (zero volume, flagged).
inline constexpr double kFlatTolerance = 1e-12;

enum class Degeneracy { None, Zero, One, Infinity };
std::string_view to_string(Degeneracy d);

/// The modulus of an ideal tetrahedron, or the tag recording which vertices
/// collapsed when the tetrahedron is degenerate.
class ShapeModulus {
 public:
  /// z == 0 or z == 1 exactly become degenerate tags.
  static ShapeModulus from_value(Complex z);
  static ShapeModulus degenerate(Degeneracy tag);

  bool is_degenerate() const { return tag_ != Degeneracy::None; }
  Degeneracy tag() const { return tag_; }
  bool is_flat() const {
    return !is_degenerate() && std::abs(z_.imag()) <= kFlatTolerance;
  }

  Complex z() const { return z_; }
  Complex z_prime() const { return 1.0 / (1.0 - z_); }
  Complex z_double_prime() const { return (z_ - 1.0) / z_; }

 private:
  ShapeModulus(Complex z, Degeneracy tag) : z_(z), tag_(tag) {}
  Complex z_;
  Degeneracy tag_;
};

/// Image of v3 under the transformation sending (v0, v1, v2) to
/// (0, 1, infinity), so cross_ratio(0, 1, inf, z) == z. When two of the
/// points are within `coincidence_tol` (chordal) the result is the tag the
/// formula ((v3-v0)(v1-v2)) / ((v3-v2)(v1-v0)) degenerates to.
ShapeModulus cross_ratio(const SpherePoint& v0, const SpherePoint& v1,
                         const SpherePoint& v2, const SpherePoint& v3,
                         double coincidence_tol = 1e-12);

/// Lobachevsky function -int_0^theta log|2 sin t| dt. Odd and pi-periodic.
double lobachevsky(double theta);

/// Signed volume: zero for degenerate or flat moduli, otherwise
/// L(arg z) + L(arg z') + L(arg z''), positive exactly when Im z > 0.
double tet_volume(const ShapeModulus& m);
double tet_volume(Complex z);

}  // namespace cuspvol
