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

#include "cuspvol/ideal_geometry.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace cuspvol {

std::string_view to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::None: return "none";
    case Degeneracy::Zero: return "0";
    case Degeneracy::One: return "1";
    case Degeneracy::Infinity: return "inf";
  }
  return "?";
}

ShapeModulus ShapeModulus::from_value(Complex z) {
  if (z == 0.0) return degenerate(Degeneracy::Zero);
  if (z == 1.0) return degenerate(Degeneracy::One);
  return {z, Degeneracy::None};
}

ShapeModulus ShapeModulus::degenerate(Degeneracy tag) {
  const Complex placeholder =
      tag == Degeneracy::One ? Complex(1.0) : Complex(0.0);
  return {placeholder, tag};
}

ShapeModulus cross_ratio(const SpherePoint& v0, const SpherePoint& v1,
                         const SpherePoint& v2, const SpherePoint& v3,
                         double coincidence_tol) {
  const std::array<const SpherePoint*, 4> v{&v0, &v1, &v2, &v3};
  // Tag the formula collapses to when the pair (i, j) coincides.
  static constexpr std::array<std::pair<std::pair<int, int>, Degeneracy>, 6>
      kPairs{{{{0, 1}, Degeneracy::Infinity},
              {{0, 2}, Degeneracy::One},
              {{0, 3}, Degeneracy::Zero},
              {{1, 2}, Degeneracy::Zero},
              {{1, 3}, Degeneracy::One},
              {{2, 3}, Degeneracy::Infinity}}};
  for (const auto& [pair, tag] : kPairs)
    if (chordal_distance(*v[static_cast<size_t>(pair.first)],
                         *v[static_cast<size_t>(pair.second)]) <= coincidence_tol)
      return ShapeModulus::degenerate(tag);

  auto bracket = [](const SpherePoint& p, const SpherePoint& q) {
    return p.u() * q.v() - q.u() * p.v();
  };
  const Complex num = bracket(v3, v0) * bracket(v1, v2);
  const Complex den = bracket(v3, v2) * bracket(v1, v0);
  return ShapeModulus::from_value(num / den);
}

namespace {

// zeta(2n) / (n (2n + 1)) for n = 1..kSeriesTerms.
constexpr int kSeriesTerms = 40;
const std::array<double, kSeriesTerms>& series_coefficients() {
  static const auto coeffs = [] {
    std::array<double, kSeriesTerms> c{};
    for (int n = 1; n <= kSeriesTerms; ++n)
      c[static_cast<size_t>(n - 1)] = std::riemann_zeta(2.0 * n) / (n * (2.0 * n + 1.0));
    return c;
  }();
  return coeffs;
}

}  // namespace

double lobachevsky(double theta) {
  using std::numbers::pi;
  double t = theta - pi * std::round(theta / pi);
  if (t <= -pi / 2) t += pi;
  if (t == 0.0) return 0.0;
  // L(t) = t (1 - log|2t|) + t * sum_{n>=1} zeta(2n) / (n (2n+1)) (t/pi)^(2n),
  // convergent for |t| < pi; here (t/pi)^2 <= 1/4, so 40 terms reach 4^-40.
  const double x = (t / pi) * (t / pi);
  double sum = 0.0;
  double xn = 1.0;
  for (double c : series_coefficients()) {
    xn *= x;
    const double term = c * xn;
    sum += term;
    if (term < 1e-18) break;
  }
  return t * (1.0 - std::log(2.0 * std::abs(t))) + t * sum;
}

double tet_volume(const ShapeModulus& m) {
  if (m.is_degenerate() || m.is_flat()) return 0.0;
  return lobachevsky(std::arg(m.z())) + lobachevsky(std::arg(m.z_prime())) +
         lobachevsky(std::arg(m.z_double_prime()));
}

double tet_volume(Complex z) { return tet_volume(ShapeModulus::from_value(z)); }

}  // namespace cuspvol
