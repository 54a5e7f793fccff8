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

#include "cuspvol/holonomy.hpp"

#include <algorithm>
#include <cmath>

#include "cuspvol/error.hpp"

namespace cuspvol {

namespace {

constexpr double kVertexSeparation = 1e-10;
constexpr double kVolumeMatch = 1e-6;

std::array<SpherePoint, 4> standard_positions(Complex z) {
  return {SpherePoint::finite(0.0), SpherePoint::finite(1.0),
          SpherePoint::infinity(), SpherePoint::finite(z)};
}

void require_generator_count(const Triangulation& t, const Representation& rep) {
  if (static_cast<int>(rep.generators.size()) != t.generator_count())
    throw Error(ErrorKind::MalformedInput,
                "representation has " + std::to_string(rep.generators.size()) +
                    " generators, triangulation needs " +
                    std::to_string(t.generator_count()));
}

}  // namespace

Moebius evaluate(const Representation& rep, const Word& w) {
  Moebius m;
  for (const Letter& l : w) {
    const Moebius& g = rep.generators.at(static_cast<size_t>(l.generator));
    m = m * (l.power > 0 ? g : g.inverse());
  }
  return m;
}

double relator_residual(const Triangulation& t, const Representation& rep) {
  require_generator_count(t, rep);
  double worst = 0.0;
  for (const Word& r : t.relators())
    worst = std::max(worst, distance_up_to_sign(evaluate(rep, r), Moebius::identity()));
  return worst;
}

Representation conjugated(const Representation& rep, const Moebius& g) {
  Representation out;
  const Moebius g_inv = g.inverse();
  for (const Moebius& m : rep.generators) out.generators.push_back(g * m * g_inv);
  return out;
}

Representation mirrored(const Representation& rep) {
  Representation out;
  for (const Moebius& m : rep.generators) out.generators.push_back(m.conjugate_entries());
  return out;
}

std::vector<Moebius> peripheral_images(const Triangulation& t,
                                       const Representation& rep, int cusp) {
  std::vector<Moebius> images;
  for (const PeripheralLoop& loop : t.peripheral_loops(cusp))
    images.push_back(evaluate(rep, loop.word));
  return images;
}

Moebius peripheral_holonomy(const Triangulation& t, const Representation& rep,
                            int cusp, int p, int q) {
  const auto& words = t.peripheral_words(cusp);
  if (!words)
    throw Error(ErrorKind::MissingPeripheralRows,
                "cusp " + std::to_string(cusp) + " has no peripheral rows");
  return evaluate(rep, concat(power(words->meridian, p), power(words->longitude, q)));
}

Development develop(const Triangulation& t, std::span<const Complex> z,
                    double edge_tolerance) {
  validate_shapes(z, t.tet_count());
  EquationSystem edges;
  edges.tet_count = t.tet_count();
  for (auto& row : t.structure().edge_rows())
    edges.rows.push_back({RowKind::Edge, -1, std::move(row), 0, Complex(0.0, 2.0 * M_PI)});
  const double edge_res = residual(edges, z);
  if (edge_res > edge_tolerance)
    throw Error(ErrorKind::ShapeResidualTooLarge,
                "edge residual " + std::to_string(edge_res));

  const auto n = static_cast<size_t>(t.tet_count());
  Development dev;
  auto& pos = dev.domain.vertices;
  pos.resize(n);
  pos[0] = standard_positions(z[0]);
  for (const auto& [near, far] : t.spanning_tree().edges) {
    const FaceGluing& g = t.structure().gluing(near);
    auto& target = pos[static_cast<size_t>(far.tet)];
    std::array<SpherePoint, 3> known, standard;
    const auto std_pos = standard_positions(z[static_cast<size_t>(far.tet)]);
    size_t k = 0;
    for (int v = 0; v < 4; ++v) {
      if (v == near.face) continue;
      const int w = g.perm[static_cast<size_t>(v)];
      target[static_cast<size_t>(w)] = pos[static_cast<size_t>(near.tet)][static_cast<size_t>(v)];
      known[k] = target[static_cast<size_t>(w)];
      standard[k] = std_pos[static_cast<size_t>(w)];
      ++k;
    }
    const Moebius place = three_point_map(standard, known);
    target[static_cast<size_t>(far.face)] = place(std_pos[static_cast<size_t>(far.face)]);
  }

  for (size_t i = 0; i < n; ++i)
    for (size_t a = 0; a < 4; ++a)
      for (size_t b = a + 1; b < 4; ++b)
        if (chordal_distance(pos[i][a], pos[i][b]) < kVertexSeparation)
          throw Error(ErrorKind::NumericallyCoincidentVertices,
                      "tetrahedron " + std::to_string(i) + " collapses");

  for (const TetFace& face : t.spanning_tree().generator_faces) {
    const FaceGluing& g = t.structure().gluing(face);
    std::array<SpherePoint, 3> from, to;
    size_t k = 0;
    for (int v = 0; v < 4; ++v) {
      if (v == face.face) continue;
      from[k] = pos[static_cast<size_t>(g.to_tet)][static_cast<size_t>(g.perm[static_cast<size_t>(v)])];
      to[k] = pos[static_cast<size_t>(face.tet)][static_cast<size_t>(v)];
      ++k;
    }
    dev.rep.generators.push_back(three_point_map(from, to));
  }
  dev.relator_residual = relator_residual(t, dev.rep);
  return dev;
}

namespace {

std::vector<SpherePoint> cusp_points(const Triangulation& t, const Representation& rep,
                                     std::span<const FixedPointChoice> per_cusp) {
  std::vector<SpherePoint> xi;
  for (int c = 0; c < t.cusp_count(); ++c) {
    const auto images = peripheral_images(t, rep, c);
    xi.push_back(common_fixed_point(images, {per_cusp[static_cast<size_t>(c)], true}));
  }
  return xi;
}

}  // namespace

VolumeReport straighten_volume(const Triangulation& t, const Representation& rep,
                               std::span<const FixedPointChoice> per_cusp,
                               double relator_tolerance) {
  if (static_cast<int>(per_cusp.size()) != t.cusp_count())
    throw Error(ErrorKind::MalformedInput, "need one fixed-point choice per cusp");
  const double rel = relator_residual(t, rep);
  if (rel > relator_tolerance)
    throw Error(ErrorKind::RelatorResidualTooLarge,
                "relator residual " + std::to_string(rel));
  const auto xi = cusp_points(t, rep, per_cusp);

  std::vector<ShapeModulus> moduli;
  for (int tet = 0; tet < t.tet_count(); ++tet) {
    std::array<SpherePoint, 4> image;
    for (int v = 0; v < 4; ++v) {
      const TetVertex tv{tet, v};
      image[static_cast<size_t>(v)] =
          evaluate(rep, t.vertex_word(tv))(xi[static_cast<size_t>(t.cusp_of(tv))]);
    }
    moduli.push_back(cross_ratio(image[0], image[1], image[2], image[3]));
  }
  VolumeReport report = make_volume_report(moduli);
  std::string policy;
  for (FixedPointChoice c : per_cusp) {
    if (!policy.empty()) policy += ',';
    policy += to_string(c);
  }
  report.policy = policy;
  report.relator_residual = rel;
  return report;
}

VolumeReport straighten_volume(const Triangulation& t, const Representation& rep,
                               FixedPointChoice choice, double relator_tolerance) {
  const std::vector<FixedPointChoice> all(static_cast<size_t>(t.cusp_count()), choice);
  return straighten_volume(t, rep, all, relator_tolerance);
}

IndependenceReport fixed_point_independence_check(const Triangulation& t,
                                                  const Representation& rep,
                                                  double tolerance) {
  IndependenceReport report;
  const auto cusps = static_cast<size_t>(t.cusp_count());
  const std::vector<FixedPointChoice> att(cusps, FixedPointChoice::Attracting);
  const std::vector<FixedPointChoice> rep_choice(cusps, FixedPointChoice::Repelling);
  const auto xa = cusp_points(t, rep, att);
  const auto xr = cusp_points(t, rep, rep_choice);
  for (size_t c = 0; c < cusps; ++c)
    if (chordal_distance(xa[c], xr[c]) > 1e-6) report.ambiguous_cusps.push_back(static_cast<int>(c));
  if (report.ambiguous_cusps.empty())
    throw Error(ErrorKind::NotApplicable,
                "every peripheral image has a unique fixed point");

  const size_t k = report.ambiguous_cusps.size();
  for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
    std::vector<FixedPointChoice> choice = att;
    for (size_t j = 0; j < k; ++j)
      if ((mask >> j) & 1)
        choice[static_cast<size_t>(report.ambiguous_cusps[j])] = FixedPointChoice::Repelling;
    report.totals.push_back(straighten_volume(t, rep, choice).total);
    report.combinations.push_back(std::move(choice));
  }
  const auto [lo, hi] = std::minmax_element(report.totals.begin(), report.totals.end());
  report.discrepancy = *hi - *lo;
  report.pass = report.discrepancy <= tolerance;
  return report;
}

std::string_view to_string(RigidityVerdict v) {
  switch (v) {
    case RigidityVerdict::ConjugateToComplete: return "conjugate to the complete holonomy";
    case RigidityVerdict::MirrorOfComplete: return "conjugate to the mirrored complete holonomy";
    case RigidityVerdict::VolumeMatchesWithoutCertificate:
      return "volume matches but no conjugator found";
    case RigidityVerdict::StrictlySmallerVolume:
      return "strictly smaller volume - not the discrete faithful class";
    case RigidityVerdict::ExceedsCompleteVolume: return "volume exceeds the complete volume";
  }
  return "?";
}

RigidityReport rigidity_check(const Triangulation& t, const Representation& rep,
                              const Representation& complete,
                              double complete_volume) {
  if (!(complete_volume > 0.0))
    throw Error(ErrorKind::MalformedInput, "complete volume must be positive");
  RigidityReport report;
  report.complete_volume = complete_volume;
  report.volume = straighten_volume(t, rep).total;
  const double v = std::abs(report.volume);
  if (v > complete_volume + kVolumeMatch) {
    report.verdict = RigidityVerdict::ExceedsCompleteVolume;
    report.pass = false;
    return report;
  }
  if (v < complete_volume - kVolumeMatch) {
    report.verdict = RigidityVerdict::StrictlySmallerVolume;
    report.pass = true;
    return report;
  }
  if (auto phi = conjugator(complete.generators, rep.generators)) {
    report.verdict = RigidityVerdict::ConjugateToComplete;
    report.certificate = phi;
  } else if (auto psi = conjugator(mirrored(complete).generators, rep.generators)) {
    report.verdict = RigidityVerdict::MirrorOfComplete;
    report.certificate = psi;
  } else {
    report.verdict = RigidityVerdict::VolumeMatchesWithoutCertificate;
  }
  report.pass = report.certificate.has_value();
  return report;
}

}  // namespace cuspvol
