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

#include "cuspvol/moebius.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cuspvol/error.hpp"

namespace cuspvol {

namespace {

// Generators whose |tr^2 - 4| falls below this are treated as one parabolic
// family when locating a common fixed point.
constexpr double kParabolicFamilyBand = 1e-7;
constexpr double kCommuteTol = 1e-8;
constexpr double kFixTol = 1e-8;
constexpr double kDistinctPointTol = 1e-6;


SpherePoint eigenvector(const Moebius& m, Complex lambda) {
  const Complex u1 = m.b(), v1 = lambda - m.a();
  const Complex u2 = lambda - m.d(), v2 = m.c();
  const double n1 = std::norm(u1) + std::norm(v1);
  const double n2 = std::norm(u2) + std::norm(v2);
  if (n1 >= n2) return {u1, v1};
  return {u2, v2};
}

}  // namespace

SpherePoint::SpherePoint(Complex u, Complex v) : u_(u), v_(v) {
  if (u == 0.0 && v == 0.0)
    throw Error(ErrorKind::MalformedInput, "(0 : 0) is not a sphere point");
  const double scale = std::sqrt(std::norm(u) + std::norm(v));
  u_ /= scale;
  v_ /= scale;
}

Complex SpherePoint::value() const {
  if (v_ == 0.0)
    return {std::numeric_limits<double>::infinity(), 0.0};
  return u_ / v_;
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  // Coordinates are stored with |u|^2 + |v|^2 = 1.
  return std::abs(p.u() * q.v() - q.u() * p.v());
}

Moebius::Moebius(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  const Complex det = a * d - b * c;
  if (std::abs(det) < 1e-14)
    throw Error(ErrorKind::MalformedInput, "singular Moebius matrix");
  const Complex s = std::sqrt(det);
  a_ /= s;
  b_ /= s;
  c_ /= s;
  d_ /= s;
}

Moebius Moebius::inverse() const { return {d_, -b_, -c_, a_}; }

Moebius Moebius::conjugate_entries() const {
  return {std::conj(a_), std::conj(b_), std::conj(c_), std::conj(d_)};
}

SpherePoint Moebius::operator()(const SpherePoint& p) const {
  return {a_ * p.u() + b_ * p.v(), c_ * p.u() + d_ * p.v()};
}

Moebius operator*(const Moebius& x, const Moebius& y) {
  return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
          x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_};
}

double Moebius::norm() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

SpherePoint apply(const Moebius& m, const SpherePoint& p) { return m(p); }

double distance_up_to_sign(const Moebius& m, const Moebius& n) {
  auto dist = [&](double s) {
    return std::max({std::abs(m.a() - s * n.a()), std::abs(m.b() - s * n.b()),
                     std::abs(m.c() - s * n.c()), std::abs(m.d() - s * n.d())});
  };
  return std::min(dist(1.0), dist(-1.0));
}

bool is_identity(const Moebius& m, double tol) {
  return distance_up_to_sign(m, Moebius::identity()) <= tol;
}

Moebius to_standard_frame(const SpherePoint& p0, const SpherePoint& p1,
                          const SpherePoint& p2) {
  const Complex alpha = p2.v() * p1.u() - p2.u() * p1.v();
  const Complex beta = p0.v() * p1.u() - p0.u() * p1.v();
  return {alpha * p0.v(), -alpha * p0.u(), beta * p2.v(), -beta * p2.u()};
}

Moebius three_point_map(std::span<const SpherePoint, 3> p,
                        std::span<const SpherePoint, 3> q) {
  return to_standard_frame(q[0], q[1], q[2]).inverse() *
         to_standard_frame(p[0], p[1], p[2]);
}

std::string_view to_string(IsometryType t) {
  switch (t) {
    case IsometryType::Identity: return "identity";
    case IsometryType::Parabolic: return "parabolic";
    case IsometryType::Elliptic: return "elliptic";
    case IsometryType::Loxodromic: return "loxodromic";
  }
  return "?";
}

IsometryType classify(const Moebius& m, double tol) {
  const Complex tr = m.trace();
  const Complex tr2 = tr * tr;
  if (std::abs(tr2 - 4.0) <= tol)
    return is_identity(m, tol) ? IsometryType::Identity : IsometryType::Parabolic;
  if (std::abs(tr2.imag()) <= tol && tr2.real() >= 0.0 && tr2.real() < 4.0)
    return IsometryType::Elliptic;
  return IsometryType::Loxodromic;
}

std::vector<SpherePoint> fixed_points(const Moebius& m) {
  const IsometryType type = classify(m);
  if (type == IsometryType::Identity)
    throw Error(ErrorKind::IdentityHasNoIsolatedFixedPoints,
                "the identity fixes every point");
  const Complex tr = m.trace();
  if (type == IsometryType::Parabolic) return {eigenvector(m, tr / 2.0)};
  const Complex s = std::sqrt(tr * tr - 4.0);
  Complex l1 = (tr + s) / 2.0;
  Complex l2 = (tr - s) / 2.0;
  if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
  return {eigenvector(m, l1), eigenvector(m, l2)};
}

std::string_view to_string(FixedPointChoice c) {
  return c == FixedPointChoice::Attracting ? "attracting" : "repelling";
}

SpherePoint common_fixed_point(std::span<const Moebius> generators,
                               const FixedPointPolicy& policy) {
  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = i + 1; j < generators.size(); ++j) {
      const Moebius xy = generators[i] * generators[j];
      const Moebius yx = generators[j] * generators[i];
      if (distance_up_to_sign(xy, yx) > kCommuteTol * std::max(1.0, xy.norm()))
        throw Error(ErrorKind::NonCommutingGenerators,
                    "generators " + std::to_string(i) + " and " +
                        std::to_string(j) + " do not commute");
    }

  std::vector<Moebius> active;
  for (const Moebius& g : generators)
    if (!is_identity(g, kCommuteTol * std::max(1.0, g.norm()))) active.push_back(g);
  if (active.empty()) {
    if (policy.lenient_identity) return SpherePoint::infinity();
    throw Error(ErrorKind::AllIdentity, "every generator is the identity");
  }

  auto fixed_by_all = [&](const SpherePoint& p) {
    return std::all_of(active.begin(), active.end(), [&](const Moebius& g) {
      return chordal_distance(g(p), p) <= kFixTol;
    });
  };

  const bool parabolic_family =
      std::any_of(active.begin(), active.end(), [](const Moebius& g) {
        const Complex tr = g.trace();
        return std::abs(tr * tr - 4.0) <= kParabolicFamilyBand;
      });
  if (parabolic_family) {
    // Common null vector of (g - tr/2) over the family.
    Eigen::MatrixXcd stack(static_cast<Eigen::Index>(2 * active.size()), 2);
    for (size_t i = 0; i < active.size(); ++i) {
      const Moebius& g = active[i];
      const Complex half = g.trace() / 2.0;
      const double scale = 1.0 / std::max(1.0, g.norm());
      const auto r = static_cast<Eigen::Index>(2 * i);
      stack(r, 0) = (g.a() - half) * scale;
      stack(r, 1) = g.b() * scale;
      stack(r + 1, 0) = g.c() * scale;
      stack(r + 1, 1) = (g.d() - half) * scale;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack, Eigen::ComputeFullV);
    const SpherePoint p(svd.matrixV()(0, 1), svd.matrixV()(1, 1));
    if (!fixed_by_all(p))
      throw Error(ErrorKind::DihedralPeripheral,
                  "parabolic peripheral family has no common fixed point");
    return p;
  }

  const auto candidates = fixed_points(active.front());
  const size_t first = policy.choice == FixedPointChoice::Attracting ? 0 : 1;
  for (size_t k = 0; k < candidates.size(); ++k) {
    const SpherePoint& p = candidates[(first + k) % candidates.size()];
    if (fixed_by_all(p)) return p;
  }
  throw Error(ErrorKind::DihedralPeripheral,
              "commuting peripheral images share no boundary fixed point");
}

namespace {

struct LabeledPoint {
  size_t generator;
  size_t index;
  SpherePoint point;
};

bool ambiguous_order(const Moebius& g) {
  const Complex tr = g.trace();
  const Complex s = std::sqrt(tr * tr - 4.0);
  return std::abs(std::abs((tr + s) / 2.0) - std::abs((tr - s) / 2.0)) < 1e-9;
}

}  // namespace

std::optional<Moebius> conjugator(std::span<const Moebius> a,
                                  std::span<const Moebius> b, double tol) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  for (size_t i = 0; i < a.size(); ++i) {
    const Complex ta = a[i].trace(), tb = b[i].trace();
    const double diff = std::min(std::abs(ta - tb), std::abs(ta + tb));
    if (diff > tol * std::max(1.0, std::abs(ta))) return std::nullopt;
  }

  // Prefer well separated loxodromic fixed points for the frame.
  std::vector<size_t> order(a.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto separation = [&](size_t i) {
    const Complex tr = a[i].trace();
    return std::abs(tr * tr - 4.0);
  };
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return separation(x) > separation(y);
  });

  std::vector<LabeledPoint> frame;
  for (size_t i : order) {
    if (classify(a[i]) == IsometryType::Identity) continue;
    const auto fps = fixed_points(a[i]);
    for (size_t k = 0; k < fps.size() && frame.size() < 3; ++k) {
      const bool distinct = std::all_of(frame.begin(), frame.end(), [&](const LabeledPoint& q) {
        return chordal_distance(q.point, fps[k]) > kDistinctPointTol;
      });
      if (distinct) frame.push_back({i, k, fps[k]});
    }
    if (frame.size() == 3) break;
  }
  if (frame.size() < 3) return std::nullopt;  // elementary image

  std::array<SpherePoint, 3> source{frame[0].point, frame[1].point, frame[2].point};
  for (int mask = 0; mask < 8; ++mask) {
    std::array<SpherePoint, 3> target;
    bool usable = true;
    for (size_t j = 0; j < 3 && usable; ++j) {
      const Moebius& g = b[frame[j].generator];
      if (classify(g) == IsometryType::Identity) {
        usable = false;
        break;
      }
      const auto fps = fixed_points(g);
      size_t idx = frame[j].index;
      const bool flip = (mask >> j) & 1;
      if (flip) {
        if (fps.size() != 2 || !ambiguous_order(g)) {
          usable = false;
          break;
        }
        idx = 1 - idx;
      }
      if (idx >= fps.size()) {
        usable = false;
        break;
      }
      target[j] = fps[idx];
    }
    if (!usable) continue;
    if (chordal_distance(target[0], target[1]) <= kDistinctPointTol ||
        chordal_distance(target[0], target[2]) <= kDistinctPointTol ||
        chordal_distance(target[1], target[2]) <= kDistinctPointTol)
      continue;
    const Moebius phi = three_point_map(source, target);
    const Moebius phi_inv = phi.inverse();
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i) {
      const Moebius image = phi * a[i] * phi_inv;
      ok = distance_up_to_sign(b[i], image) <= tol * std::max(1.0, b[i].norm());
    }
    if (ok) return phi;
  }
  return std::nullopt;
}

}  // namespace cuspvol
