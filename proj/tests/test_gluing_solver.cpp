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

#include <cmath>

#include "cuspvol/error.hpp"
#include "cuspvol/gluing_solver.hpp"
#include "oracles.hpp"

namespace cuspvol {
namespace {

const Complex kRegular = std::polar(1.0, M_PI / 3);

Triangulation fig8() { return load_triangulation(oracle::fixture("fig8.trig")); }

EquationSystem fig8_system(std::optional<Filling> fill = std::nullopt) {
  EquationOptions opts;
  opts.fillings[0] = fill;
  return build_equations(fig8(), opts);
}

// Multiplicative form of the figure-eight equations, written out by hand from
// the fixture (fixtures/fig8.md): edges z0 z0''^2 z1'^2 z1'' = 1 and
// z0 z0'^2 z1^2 z1'' = 1; meridian M = z0'' / z1, longitude L = z1'^2 / z1^2.
struct Fig8Oracle {
  Complex z0, z1;
  Complex p(Complex z) const { return 1.0 / (1.0 - z); }
  Complex pp(Complex z) const { return (z - 1.0) / z; }
  Complex edge_a() const { return z0 * pp(z0) * pp(z0) * p(z1) * p(z1) * pp(z1); }
  Complex edge_b() const { return z0 * p(z0) * p(z0) * z1 * z1 * pp(z1); }
  Complex meridian() const { return pp(z0) / z1; }
  Complex longitude() const { return p(z1) * p(z1) / (z1 * z1); }
};

TEST(Equations, RowCounts) {
  const EquationSystem complete = fig8_system();
  EXPECT_EQ(complete.rows.size(), 4u);
  EXPECT_EQ(complete.count(RowKind::Edge), 2u);
  EXPECT_EQ(complete.count(RowKind::Completeness), 2u);
  const EquationSystem filled = fig8_system(Filling{5, 1});
  EXPECT_EQ(filled.count(RowKind::Edge), 2u);
  EXPECT_EQ(filled.count(RowKind::Filling), 1u);
  EXPECT_EQ(filled.rows.size(), 3u);

  const Triangulation w = load_triangulation(oracle::fixture("whitehead.trig"));
  EquationOptions opts;
  opts.fillings[1] = Filling{5, 2};
  const EquationSystem mixed = build_equations(w, opts);
  EXPECT_EQ(mixed.count(RowKind::Edge), 4u);
  EXPECT_EQ(mixed.count(RowKind::Completeness), 2u);
  EXPECT_EQ(mixed.count(RowKind::Filling), 1u);
  opts.edges_only = true;
  EXPECT_EQ(build_equations(w, opts).rows.size(), 4u);
}

TEST(Equations, RegularShapesSolveComplete) {
  const std::vector<Complex> z = {kRegular, kRegular};
  EXPECT_LT(residual(fig8_system(), z), 1e-14);
  const Fig8Oracle o{kRegular, kRegular};
  EXPECT_LT(std::abs(o.edge_a() - 1.0), 1e-14);
  EXPECT_LT(std::abs(o.meridian() - 1.0), 1e-14);
}

TEST(Equations, Errors) {
  try {
    fig8_system(Filling{2, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonCoprimeFilling);
  }
  TriangulationData d = fig8().data();
  d.peripheral[0] = std::nullopt;
  const Triangulation bare(d);
  try {
    build_equations(bare);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingPeripheralRows);
  }
  EquationOptions edges;
  edges.edges_only = true;
  EXPECT_EQ(build_equations(bare, edges).rows.size(), 2u);
}

TEST(Newton, CompleteFromRegularStart) {
  const NewtonResult r = newton_solve(fig8_system(), regular_shapes(2));
  EXPECT_LE(r.iterations, 25);
  EXPECT_LE(r.residual, 1e-12);
  for (Complex z : r.shapes) EXPECT_LT(std::abs(z - kRegular), 1e-10);
  EXPECT_NEAR(volume_of_shapes(r.shapes).total, 2.0298832128, 1e-9);
  EXPECT_NEAR(volume_of_shapes(r.shapes).total, 6 * oracle::lobachevsky_integral(M_PI / 3), 1e-9);
}

TEST(Newton, CompleteFromPerturbedStart) {
  const NewtonResult r = newton_solve(fig8_system(), std::vector<Complex>{{0.4, 0.7}, {0.6, 1.0}});
  for (Complex z : r.shapes) EXPECT_LT(std::abs(z - kRegular), 1e-10);
}

TEST(Newton, FilledSolutionsSatisfyOracleEquations) {
  // Census values for the figure-eight fillings.
  const std::vector<std::pair<Filling, double>> cases = {
      {{5, 1}, 0.98136882889}, {{6, 1}, 1.2844853005}, {{7, 1}, 1.46377664493},
      {{5, 2}, 1.52947732943}, {{8, 1}, 1.58316666062}};
  for (const auto& [fill, volume] : cases) {
    const NewtonResult r = newton_solve(fig8_system(fill), regular_shapes(2));
    EXPECT_LE(r.residual, 1e-12);
    const Fig8Oracle o{r.shapes[0], r.shapes[1]};
    EXPECT_LT(std::abs(o.edge_a() - 1.0), 1e-10);
    EXPECT_LT(std::abs(o.edge_b() - 1.0), 1e-10);
    const Complex mlq = std::pow(o.meridian(), fill.p) * std::pow(o.longitude(), fill.q);
    EXPECT_LT(std::abs(mlq - 1.0), 1e-10) << fill.p << "," << fill.q;
    // The meridian is not itself trivial.
    EXPECT_GT(std::abs(o.meridian() - 1.0), 1e-3);
    const double v = volume_of_shapes(r.shapes).total;
    EXPECT_NEAR(v, volume, 1e-9);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 2.0298832128);
  }
}

TEST(Newton, WhiteheadFillings) {
  const Triangulation w = load_triangulation(oracle::fixture("whitehead.trig"));
  auto solve = [&](std::optional<Filling> a, std::optional<Filling> b) {
    EquationOptions opts;
    opts.fillings[0] = a;
    opts.fillings[1] = b;
    return volume_of_shapes(newton_solve(build_equations(w, opts), regular_shapes(4)).shapes).total;
  };
  EXPECT_NEAR(solve(std::nullopt, std::nullopt), 3.6638623767, 1e-9);
  EXPECT_NEAR(solve(Filling{5, 1}, Filling{5, 1}), 2.48782259179, 1e-9);
  EXPECT_NEAR(solve(Filling{5, 1}, std::nullopt), 2.98912028293, 1e-9);
  EXPECT_NEAR(solve(Filling{6, 1}, Filling{5, 2}), 2.7761807368, 1e-9);
}

TEST(Newton, FailureModes) {
  NewtonOptions few;
  few.max_iterations = 1;
  try {
    newton_solve(fig8_system(Filling{5, 1}), regular_shapes(2), few);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoConvergence);
  }
  // The meridian filling of the figure-eight knot has no solution.
  try {
    newton_solve(fig8_system(Filling{1, 0}), regular_shapes(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::NoConvergence || e.kind() == ErrorKind::DegenerationGuard ||
                e.kind() == ErrorKind::SingularJacobianUnrecoverable)
        << e.what();
  }
  try {
    newton_solve(fig8_system(), std::vector<Complex>{0.0, kRegular});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedInput);
  }
}

TEST(Scan, DeterministicAndOrdered) {
  const EquationSystem sys = fig8_system();
  const ScanResult a = solve_all(sys, 30, 7), b = solve_all(sys, 30, 7);
  ASSERT_EQ(a.solutions.size(), b.solutions.size());
  for (size_t i = 0; i < a.solutions.size(); ++i) EXPECT_EQ(a.solutions[i].shapes, b.solutions[i].shapes);
  ASSERT_GE(a.solutions.size(), 2u);
  for (size_t i = 1; i < a.solutions.size(); ++i)
    EXPECT_GE(a.solutions[i - 1].volume, a.solutions[i].volume);
  ASSERT_TRUE(a.max_volume_index.has_value());
  EXPECT_NEAR(a.solutions[*a.max_volume_index].volume, 2.0298832128, 1e-9);
  EXPECT_NEAR(a.solutions.back().volume, -2.0298832128, 1e-9);
  EXPECT_FALSE(a.all_zero_volume);
  EXPECT_EQ(a.solutions[0].flags.front(), "positively_oriented");
}

TEST(Scan, EdgeOnlyBoundedByComplete) {
  EquationOptions opts;
  opts.edges_only = true;
  const ScanResult r = solve_all(build_equations(fig8(), opts), 50, 11);
  ASSERT_FALSE(r.solutions.empty());
  for (const ScanSolution& s : r.solutions) {
    EXPECT_LE(std::abs(s.volume), 2.0298832128 + 1e-6);
    for (Complex z : s.shapes) EXPECT_LE(std::abs(tet_volume(z)), kRegularIdealVolume + 1e-12);
  }
  EXPECT_NEAR(r.solutions[*r.max_volume_index].volume, 2.0298832128, 1e-8);
}

TEST(Scan, AllZeroVolumeAdvisory) {
  const ScanResult r = solve_all(fig8_system(Filling{3, 1}), 10, 1);
  ASSERT_FALSE(r.solutions.empty());
  EXPECT_TRUE(r.all_zero_volume);
  const ScanResult none = solve_all(fig8_system(Filling{1, 0}), 5, 1);
  EXPECT_TRUE(none.solutions.empty());
  EXPECT_FALSE(none.all_zero_volume);
  EXPECT_FALSE(none.max_volume_index.has_value());
}

}  // namespace
}  // namespace cuspvol
