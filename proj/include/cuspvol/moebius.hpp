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

// PSL(2,C) acting on the Riemann sphere.

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cuspvol {

using Complex = std::complex<double>;

/// A point of the Riemann sphere in homogeneous coordinates (u : v); the
/// point at infinity is (1 : 0).
class SpherePoint {
 public:
  SpherePoint() : u_(0.0), v_(1.0) {}
  SpherePoint(Complex u, Complex v);

  static SpherePoint finite(Complex z) { return {z, 1.0}; }
  static SpherePoint infinity() { return {1.0, 0.0}; }

  Complex u() const { return u_; }
  Complex v() const { return v_; }

  bool is_infinity(double tol = 0.0) const {
    return std::abs(v_) <= tol * std::abs(u_);
  }
  /// u / v; infinite coordinates give inf.
  Complex value() const;

 private:
  Complex u_, v_;
};

/// Chordal distance on the sphere of diameter 1:
/// |z - w| / sqrt((1 + |z|^2)(1 + |w|^2)), in [0, 1].
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

/// An element of PSL(2,C), stored as a matrix of determinant one. The
/// matrix and its negative describe the same transformation.
class Moebius {
 public:
  Moebius() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}
  /// Rescales to determinant one; throws MalformedInput when |det| < 1e-14.
  Moebius(Complex a, Complex b, Complex c, Complex d);

  static Moebius identity() { return {}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex trace() const { return a_ + d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

  Moebius inverse() const;
  /// Entrywise complex conjugate (conjugation by z -> conj(z)).
  Moebius conjugate_entries() const;
  SpherePoint operator()(const SpherePoint& p) const;
  friend Moebius operator*(const Moebius& x, const Moebius& y);

  /// Largest entry modulus.
  double norm() const;

 private:
  Complex a_, b_, c_, d_;
};

SpherePoint apply(const Moebius& m, const SpherePoint& p);

/// Max-entry distance between m and the nearer of n, -n.
double distance_up_to_sign(const Moebius& m, const Moebius& n);
bool is_identity(const Moebius& m, double tol = 1e-10);

/// Sends p0, p1, p2 to 0, 1, infinity.
Moebius to_standard_frame(const SpherePoint& p0, const SpherePoint& p1,
                          const SpherePoint& p2);
/// The unique transformation sending each p[i] to q[i].
Moebius three_point_map(std::span<const SpherePoint, 3> p,
                        std::span<const SpherePoint, 3> q);

enum class IsometryType { Identity, Parabolic, Elliptic, Loxodromic };
std::string_view to_string(IsometryType t);

/// Classification by tr^2: the parabolic band is |tr^2 - 4| <= tol, the
/// elliptic band is |Im tr^2| <= tol with Re tr^2 in [0, 4).
IsometryType classify(const Moebius& m, double tol = 1e-10);

/// One point for parabolic transformations, otherwise two points with the
/// attracting one first. Throws IdentityHasNoIsolatedFixedPoints on +-I.
std::vector<SpherePoint> fixed_points(const Moebius& m);

enum class FixedPointChoice { Attracting, Repelling };
std::string_view to_string(FixedPointChoice c);

struct FixedPointPolicy {
  FixedPointChoice choice = FixedPointChoice::Attracting;
  /// Resolve groups of identities to infinity instead of throwing AllIdentity.
  bool lenient_identity = true;
};

/// A boundary point fixed by every generator of a commuting family.
/// Throws NonCommutingGenerators, DihedralPeripheral or AllIdentity.
SpherePoint common_fixed_point(std::span<const Moebius> generators,
                               const FixedPointPolicy& policy = {});

/// phi with b[i] = phi a[i] phi^-1 (up to sign) for every i, or nullopt.
/// Candidates come from matching ordered triples of fixed points.
std::optional<Moebius> conjugator(std::span<const Moebius> a,
                                  std::span<const Moebius> b,
                                  double tol = 1e-8);

}  // namespace cuspvol
