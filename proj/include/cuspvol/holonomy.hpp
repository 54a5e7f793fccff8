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

// Representations of the fundamental group: developing a shape solution into
// face-pairing transformations, and the straightened volume of an arbitrary
// representation.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cuspvol/gluing_solver.hpp"
#include "cuspvol/moebius.hpp"
#include "cuspvol/triangulation.hpp"
#include "cuspvol/volume_report.hpp"

namespace cuspvol {

inline constexpr double kRelatorTolerance = 1e-8;

/// Images of the generators of a triangulation's fundamental group, indexed
/// as in its spanning tree.
struct Representation {
  std::vector<Moebius> generators;
};

Moebius evaluate(const Representation& rep, const Word& w);
/// Max over relators of the distance (up to sign) from the identity.
double relator_residual(const Triangulation& t, const Representation& rep);

/// g rho g^-1.
Representation conjugated(const Representation& rep, const Moebius& g);
/// Entrywise complex conjugate of every generator.
Representation mirrored(const Representation& rep);

/// Images of the cusp's peripheral loops.
std::vector<Moebius> peripheral_images(const Triangulation& t,
                                       const Representation& rep, int cusp);
/// rho(meridian)^p rho(longitude)^q; requires peripheral rows for the cusp.
Moebius peripheral_holonomy(const Triangulation& t, const Representation& rep,
                            int cusp, int p, int q);

struct DevelopedDomain {
  /// Ideal vertex images for each tetrahedron of the fundamental domain.
  std::vector<std::array<SpherePoint, 4>> vertices;
};

struct Development {
  DevelopedDomain domain;
  Representation rep;
  double relator_residual = 0.0;
};

/// Places tetrahedron 0 at (0, 1, inf, z_0) and the rest across the spanning
/// tree; each non-tree face pair yields its generator's image.
/// Throws ShapeResidualTooLarge, NumericallyCoincidentVertices.
Development develop(const Triangulation& t, std::span<const Complex> z,
                    double edge_tolerance = 1e-10);

/// Straightened volume: each cusp's ideal point goes to a common fixed point
/// of its peripheral images (per-cusp choice), every ideal vertex to the
/// image of that point under its developing word, and the tetrahedra are
/// measured through the cross-ratio of their vertex images.
/// Throws RelatorResidualTooLarge, DihedralPeripheral.
VolumeReport straighten_volume(const Triangulation& t, const Representation& rep,
                               std::span<const FixedPointChoice> per_cusp,
                               double relator_tolerance = kRelatorTolerance);
VolumeReport straighten_volume(const Triangulation& t, const Representation& rep,
                               FixedPointChoice choice = FixedPointChoice::Attracting,
                               double relator_tolerance = kRelatorTolerance);

struct IndependenceReport {
  std::vector<int> ambiguous_cusps;
  std::vector<std::vector<FixedPointChoice>> combinations;
  std::vector<double> totals;
  double discrepancy = 0.0;
  bool pass = false;
};

/// Runs straighten_volume for every attracting/repelling combination on the
/// cusps whose peripheral images have two fixed points. Throws NotApplicable
/// when no cusp has a choice.
IndependenceReport fixed_point_independence_check(const Triangulation& t,
                                                  const Representation& rep,
                                                  double tolerance = 1e-8);

enum class RigidityVerdict {
  ConjugateToComplete,
  MirrorOfComplete,
  VolumeMatchesWithoutCertificate,
  StrictlySmallerVolume,
  ExceedsCompleteVolume,
};
std::string_view to_string(RigidityVerdict v);

struct RigidityReport {
  double volume = 0.0;
  double complete_volume = 0.0;
  RigidityVerdict verdict = RigidityVerdict::StrictlySmallerVolume;
  /// phi with rep = phi complete phi^-1 (or phi mirrored(complete) phi^-1).
  std::optional<Moebius> certificate;
  bool pass = false;
};

/// Compares |vol(rep)| with the complete volume: above it fails, within
/// 1e-6 of it requires a conjugacy certificate, below it reports "strictly
/// smaller volume" without attempting one.
RigidityReport rigidity_check(const Triangulation& t, const Representation& rep,
                              const Representation& complete,
                              double complete_volume);

}  // namespace cuspvol
