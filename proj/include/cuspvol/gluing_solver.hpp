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

// Gluing (edge), completeness and Dehn filling equations in logarithmic
// form, and a damped least-squares Newton solver for them.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cuspvol/ideal_geometry.hpp"
#include "cuspvol/triangulation.hpp"
#include "cuspvol/volume_report.hpp"

namespace cuspvol {

/// One modulus per tetrahedron, each in C \ {0, 1}.
using ShapeVector = std::vector<Complex>;

/// Throws MalformedInput unless every entry is finite and farther than
/// `guard` from 0 and 1.
void validate_shapes(std::span<const Complex> z, int tet_count,
                     double guard = 1e-10);

enum class RowKind { Edge, Completeness, Filling };
std::string_view to_string(RowKind k);

/// sum_i a_i log z_i + b_i log z_i' + c_i log z_i'' + pi_offset * i pi = target
struct EquationRow {
  RowKind kind = RowKind::Edge;
  int cusp = -1;
  std::vector<SlotExponents> exponents;
  int pi_offset = 0;
  Complex target;

  /// Row value minus target, principal logarithms.
  Complex evaluate(std::span<const Complex> z) const;
};

struct EquationSystem {
  int tet_count = 0;
  std::vector<EquationRow> rows;

  size_t count(RowKind kind) const;
};

struct EquationOptions {
  /// Per-cusp filling overriding the file; nullopt forces the cusp complete.
  std::map<int, std::optional<Filling>> fillings;
  /// Drop every completeness and filling row.
  bool edges_only = false;
};

/// Edge rows from the edge classes (target 2 pi i); unfilled cusps add their
/// meridian and longitude rows (target 0); a filled cusp adds
/// p * meridian + q * longitude (target 2 pi i).
/// Throws MissingPeripheralRows, NonCoprimeFilling.
EquationSystem build_equations(const Triangulation& t,
                               const EquationOptions& options = {});

/// Max row residual. Edge rows are measured modulo 2 pi i (the gluing
/// condition is multiplicative); completeness and filling rows literally.
double residual(const EquationSystem& sys, std::span<const Complex> z);

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 100;
  double guard_radius = 1e-6;
  int max_halvings = 20;
};

struct NewtonResult {
  ShapeVector shapes;
  double residual = 0.0;
  int iterations = 0;
};

/// Damped least-squares Newton in log-shape coordinates. The 2 pi i branch of
/// each edge row is frozen at z0. Throws NoConvergence, DegenerationGuard,
/// SingularJacobianUnrecoverable.
NewtonResult newton_solve(const EquationSystem& sys, std::span<const Complex> z0,
                          const NewtonOptions& options = {});

/// Signed volume of the tetrahedra with moduli z.
VolumeReport volume_of_shapes(std::span<const Complex> z);

struct ScanSolution {
  ShapeVector shapes;
  double residual = 0.0;
  double volume = 0.0;
  std::vector<std::string> flags;
};

struct ScanResult {
  /// Distinct solutions, descending volume.
  std::vector<ScanSolution> solutions;
  std::optional<size_t> max_volume_index;
  /// Every found solution has |volume| <= 1e-9 (heuristic over the found set).
  bool all_zero_volume = false;
};

inline constexpr double kDedupTolerance = 1e-8;

/// Newton from the regular start (every z = e^{i pi/3}) followed by
/// restarts - 1 seeded random starts in the disk of radius 2 about e^{i pi/3}.
ScanResult solve_all(const EquationSystem& sys, int restarts, std::uint64_t seed,
                     const NewtonOptions& options = {});

/// All moduli equal to e^{i pi/3}.
ShapeVector regular_shapes(int tet_count);

}  // namespace cuspvol
