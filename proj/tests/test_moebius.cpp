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

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "cuspvol/error.hpp"
#include "cuspvol/moebius.hpp"
#include "oracles.hpp"

namespace cuspvol {
namespace {

double dist(const SpherePoint& p, const SpherePoint& q) { return chordal_distance(p, q); }

TEST(Moebius, NormalizesToDeterminantOne) {
  const Moebius m({2, 0}, {1, 1}, {0, 0}, {3, 0});
  EXPECT_NEAR(std::abs(m.determinant() - 1.0), 0.0, 1e-14);
  // Same transformation as the unnormalized matrix.
  EXPECT_NEAR(std::abs(m(SpherePoint::finite(1.0)).value() - Complex(1.0, 1.0 / 3)), 0.0, 1e-14);
}

TEST(Moebius, RejectsSingularMatrices) {
  try {
    Moebius({1, 0}, {2, 0}, {2, 0}, {4, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedInput);
  }
}

TEST(Moebius, CompositionAndInverse) {
  std::mt19937_64 rng(1);
  const SpherePoint p = SpherePoint::finite({0.3, -0.8});
  for (int i = 0; i < 20; ++i) {
    const Moebius f = oracle::random_moebius(rng), g = oracle::random_moebius(rng);
    EXPECT_LT(dist((f * g)(p), f(g(p))), 1e-12);
    EXPECT_TRUE(is_identity(f * f.inverse(), 1e-10));
    EXPECT_LT(dist(f.inverse()(f(p)), p), 1e-12);
  }
}

TEST(Moebius, InfinityHandling) {
  const Moebius m({1, 0}, {2, 0}, {1, 0}, {1, 0});  // (z + 2) / (z + 1)
  EXPECT_NEAR(std::abs(m(SpherePoint::infinity()).value() - 1.0), 0.0, 1e-14);
  EXPECT_TRUE(m(SpherePoint::finite(-1.0)).is_infinity(1e-14));
  EXPECT_NEAR(dist(SpherePoint::infinity(), SpherePoint::finite(0.0)), 1.0, 1e-15);
  EXPECT_NEAR(dist(SpherePoint::finite(1.0), SpherePoint::finite(-1.0)), 1.0, 1e-15);
}

TEST(Moebius, ThreePointMap) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  for (int i = 0; i < 20; ++i) {
    std::array<SpherePoint, 3> p, q;
    for (int k = 0; k < 3; ++k) {
      p[k] = SpherePoint::finite({n(rng), n(rng)});
      q[k] = SpherePoint::finite({n(rng), n(rng)});
    }
    q[2] = SpherePoint::infinity();
    const Moebius m = three_point_map(p, q);
    for (int k = 0; k < 3; ++k) EXPECT_LT(dist(m(p[k]), q[k]), 1e-10);
  }
  const Moebius s = to_standard_frame(SpherePoint::finite(2.0), SpherePoint::finite({0, 1}),
                                      SpherePoint::finite(-3.0));
  EXPECT_LT(dist(s(SpherePoint::finite(2.0)), SpherePoint::finite(0.0)), 1e-14);
  EXPECT_LT(dist(s(SpherePoint::finite({0, 1})), SpherePoint::finite(1.0)), 1e-14);
  EXPECT_TRUE(s(SpherePoint::finite(-3.0)).is_infinity(1e-14));
}

TEST(Classify, ByTraceSquared) {
  EXPECT_EQ(classify(Moebius::identity()), IsometryType::Identity);
  EXPECT_EQ(classify(Moebius({-1, 0}, {0, 0}, {0, 0}, {-1, 0})), IsometryType::Identity);
  EXPECT_EQ(classify(Moebius({1, 0}, {1, 0}, {0, 0}, {1, 0})), IsometryType::Parabolic);
  EXPECT_EQ(classify(Moebius(std::polar(1.0, 0.4), 0.0, 0.0, std::polar(1.0, -0.4))),
            IsometryType::Elliptic);
  EXPECT_EQ(classify(Moebius({2, 0}, {0, 0}, {0, 0}, {0.5, 0})), IsometryType::Loxodromic);
  EXPECT_EQ(classify(Moebius({2, 1}, {0, 0}, {0, 0}, {1, 0})), IsometryType::Loxodromic);
}

TEST(FixedPoints, LoxodromicAttractingFirst) {
  // z -> 4z: attracting infinity, repelling 0.
  const Moebius m({2, 0}, {0, 0}, {0, 0}, {0.5, 0});
  const auto fp = fixed_points(m);
  ASSERT_EQ(fp.size(), 2u);
  EXPECT_TRUE(fp[0].is_infinity(1e-14));
  EXPECT_LT(std::abs(fp[1].value()), 1e-14);
  // Conjugated: still fixed, attracting first.
  std::mt19937_64 rng(4);
  const Moebius g = oracle::random_moebius(rng);
  const Moebius c = g * m * g.inverse();
  const auto fc = fixed_points(c);
  EXPECT_LT(dist(fc[0], g(SpherePoint::infinity())), 1e-10);
  EXPECT_LT(dist(fc[1], g(SpherePoint::finite(0.0))), 1e-10);
}

TEST(FixedPoints, ParabolicHasOne) {
  const auto fp = fixed_points(Moebius({1, 0}, {3, 0}, {0, 0}, {1, 0}));
  ASSERT_EQ(fp.size(), 1u);
  EXPECT_TRUE(fp[0].is_infinity(1e-14));
}

TEST(FixedPoints, IdentityThrows) {
  try {
    fixed_points(Moebius::identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdentityHasNoIsolatedFixedPoints);
  }
}

TEST(CommonFixedPoint, ParabolicLattice) {
  std::mt19937_64 rng(6);
  const Moebius g = oracle::random_moebius(rng);
  const Moebius t1 = g * Moebius(1.0, 1.0, 0.0, 1.0) * g.inverse();
  const Moebius t2 = g * Moebius(1.0, Complex(0.5, 1.7), 0.0, 1.0) * g.inverse();
  const std::vector<Moebius> gens = {t1, t2, Moebius::identity()};
  EXPECT_LT(dist(common_fixed_point(gens), g(SpherePoint::infinity())), 1e-7);
}

TEST(CommonFixedPoint, LoxodromicChoice) {
  const Moebius m({3, 0}, {0, 0}, {0, 0}, {1.0 / 3, 0});
  const std::vector<Moebius> gens = {m, m * m};
  EXPECT_TRUE(common_fixed_point(gens, {FixedPointChoice::Attracting}).is_infinity(1e-12));
  EXPECT_LT(std::abs(common_fixed_point(gens, {FixedPointChoice::Repelling}).value()), 1e-12);
}

TEST(CommonFixedPoint, Errors) {
  const Moebius rot(Complex(0, 1), 0.0, 0.0, Complex(0, -1));  // z -> -z, fixes 0 and inf
  const Moebius swap(0.0, Complex(0, 1), Complex(0, 1), 0.0);  // z -> 1/z, fixes +-1
  const std::vector<Moebius> dihedral = {rot, swap};
  try {
    common_fixed_point(dihedral);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DihedralPeripheral);
  }
  const std::vector<Moebius> noncommuting = {Moebius(1.0, 1.0, 0.0, 1.0),
                                             Moebius(1.0, 0.0, 1.0, 1.0)};
  try {
    common_fixed_point(noncommuting);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonCommutingGenerators);
  }
  const std::vector<Moebius> ids = {Moebius::identity()};
  EXPECT_TRUE(common_fixed_point(ids).is_infinity());
  try {
    common_fixed_point(ids, {FixedPointChoice::Attracting, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AllIdentity);
  }
}

TEST(Conjugator, RecoversConjugatingMap) {
  std::mt19937_64 rng(8);
  std::vector<Moebius> a;
  for (int i = 0; i < 3; ++i) a.push_back(oracle::random_moebius(rng));
  for (int trial = 0; trial < 10; ++trial) {
    const Moebius g = oracle::random_moebius(rng);
    std::vector<Moebius> b;
    for (const Moebius& m : a) b.push_back(g * m * g.inverse());
    const auto phi = conjugator(a, b);
    ASSERT_TRUE(phi.has_value());
    EXPECT_LT(distance_up_to_sign(*phi, g), 1e-7);
  }
}

TEST(Conjugator, RejectsNonConjugateFamilies) {
  std::mt19937_64 rng(9);
  std::vector<Moebius> a, b;
  for (int i = 0; i < 3; ++i) a.push_back(oracle::random_moebius(rng));
  b = a;
  b[1] = b[1] * Moebius(1.0, 0.2, 0.0, 1.0);
  EXPECT_FALSE(conjugator(a, b).has_value());
  // Mirror images are not conjugate by an orientation-preserving map.
  std::vector<Moebius> mirror;
  for (const Moebius& m : a) mirror.push_back(m.conjugate_entries());
  EXPECT_FALSE(conjugator(a, mirror).has_value());
}

}  // namespace
}  // namespace cuspvol
