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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cuspvol/cli.hpp"
#include "cuspvol/error.hpp"
#include "cuspvol/holonomy.hpp"
#include "oracles.hpp"

namespace cuspvol {
namespace {

constexpr double kFig8Volume = 2.0298832128;
const Complex kRegular = std::polar(1.0, M_PI / 3);

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Triangulation fig8() { return load_triangulation(oracle::fixture("fig8.trig")); }

ShapeVector solve_fig8(std::optional<Filling> fill, NewtonResult* out = nullptr) {
  EquationOptions opts;
  opts.fillings[0] = fill;
  NewtonResult r = newton_solve(build_equations(fig8(), opts), regular_shapes(2));
  if (out) *out = r;
  return r.shapes;
}

const std::vector<Filling> kFills = {{5, 1}, {6, 1}, {7, 1}, {5, 2}, {8, 1}};

Outcome lobachevsky_dual_evaluation() {
  Outcome o;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double theta = -M_PI + 2 * M_PI * (k + 0.5) / 1000.0;
    worst = std::max(worst, std::abs(lobachevsky(theta) - oracle::lobachevsky_integral(theta)));
  }
  o.require(worst <= 1e-10, "series vs quadrature " + sci(worst));
  const double l = lobachevsky(M_PI / 3);
  o.require(std::abs(3 * l - 1.0149416064) <= 1e-10, "v3 = " + fixed(3 * l));
  o.require(std::abs(l - 0.3383138668) <= 5e-9, "L(pi/3) = " + fixed(l));
  o.detail = "max |series - quadrature| = " + sci(worst) + " over 1000 angles" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome fig8_complete() {
  Outcome o;
  NewtonResult r;
  const ShapeVector z = solve_fig8(std::nullopt, &r);
  o.require(r.iterations <= 25, std::to_string(r.iterations) + " iterations");
  for (Complex w : z) o.require(std::abs(w - kRegular) <= 1e-10, "shape off regular");
  o.require(r.residual <= 1e-12, "residual " + sci(r.residual));
  const double v = volume_of_shapes(z).total;
  o.require(std::abs(v - kFig8Volume) <= 1e-9, "volume " + fixed(v));
  if (o.pass)
    o.detail = std::to_string(r.iterations) + " iterations, residual " + sci(r.residual) +
               ", volume " + fixed(v);
  return o;
}

Outcome round_trip() {
  Outcome o;
  const Triangulation t = fig8();
  double worst = 0.0;
  std::vector<std::optional<Filling>> cases = {std::nullopt};
  for (const Filling& f : kFills) cases.push_back(f);
  for (const auto& f : cases) {
    const ShapeVector z = solve_fig8(f);
    const double d = std::abs(straighten_volume(t, develop(t, z).rep).total - volume_of_shapes(z).total);
    worst = std::max(worst, d);
  }
  o.require(worst <= 1e-8, "max discrepancy " + sci(worst));
  if (o.pass) o.detail = "complete + 5 fillings, max |delta| = " + sci(worst);
  return o;
}

Outcome policy_independence() {
  Outcome o;
  const Triangulation t = fig8();
  double worst = 0.0;
  for (const Filling& f : kFills) {
    const IndependenceReport r = fixed_point_independence_check(t, develop(t, solve_fig8(f)).rep);
    worst = std::max(worst, r.discrepancy);
    o.require(r.totals.size() == 2, "expected two fixed-point choices");
  }
  o.require(worst <= 1e-8, "discrepancy " + sci(worst));
  if (o.pass) o.detail = "5 fillings, max |attracting - repelling| = " + sci(worst);
  return o;
}

Outcome anti_symmetry() {
  Outcome o;
  const Triangulation t = fig8();
  const Representation rep = develop(t, solve_fig8(std::nullopt)).rep;
  const double mirror = straighten_volume(t, mirrored(rep)).total;
  o.require(std::abs(mirror + kFig8Volume) <= 1e-9, "mirror total " + std::to_string(mirror));
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i)
    worst = std::max(worst, std::abs(straighten_volume(t, conjugated(rep, oracle::random_moebius(rng))).total -
                                     kFig8Volume));
  o.require(worst <= 1e-9, "conjugation drift " + sci(worst));
  if (o.pass)
    o.detail = "mirror total " + fixed(mirror) + ", 20 conjugates max drift " + sci(worst);
  return o;
}

Outcome bounds() {
  Outcome o;
  const Triangulation t = fig8();
  EquationOptions opts;
  opts.edges_only = true;
  const ScanResult scan = solve_all(build_equations(t, opts), 50, 2026);
  o.require(!scan.solutions.empty(), "no solutions");
  double max_total = 0.0, max_tet = 0.0;
  for (const ScanSolution& s : scan.solutions) {
    const VolumeReport direct = volume_of_shapes(s.shapes);
    double total = std::abs(direct.total);
    try {
      total = std::max(total, std::abs(straighten_volume(t, develop(t, s.shapes).rep).total));
    } catch (const Error&) {
      // Deformations whose developed holonomy fails the gates still count
      // through their shape volume.
    }
    max_total = std::max(max_total, total);
    for (const TetVolume& tv : direct.per_tet) max_tet = std::max(max_tet, std::abs(tv.volume));
  }
  o.require(max_total <= kFig8Volume + 1e-6, "total " + std::to_string(max_total));
  o.require(max_tet <= kRegularIdealVolume + 1e-12, "tetrahedron " + std::to_string(max_tet));
  if (scan.max_volume_index) {
    const ScanSolution& best = scan.solutions[*scan.max_volume_index];
    o.require(std::abs(best.volume - kFig8Volume) <= 1e-8, "max-volume solution is not complete");
    o.require(residual(build_equations(t), best.shapes) <= 1e-8,
              "max-volume solution violates completeness");
  }
  if (o.pass)
    o.detail = std::to_string(scan.solutions.size()) + " distinct solutions from 50 starts, max |total| " +
               fixed(max_total);
  return o;
}

Outcome rigidity() {
  Outcome o;
  const Triangulation t = fig8();
  const Representation complete = develop(t, solve_fig8(std::nullopt)).rep;
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Moebius g = oracle::random_moebius(rng);
    const RigidityReport r = rigidity_check(t, conjugated(complete, g), complete, kFig8Volume);
    o.require(std::abs(r.volume - kFig8Volume) <= 1e-8, "conjugate volume");
    if (!r.certificate) {
      o.require(false, "no certificate for a conjugate");
      continue;
    }
    worst = std::max(worst, distance_up_to_sign(*r.certificate, g));
  }
  o.require(worst <= 1e-7, "certificate error " + sci(worst));
  for (const Filling& f : kFills) {
    const RigidityReport r = rigidity_check(t, develop(t, solve_fig8(f)).rep, complete, kFig8Volume);
    o.require(r.verdict == RigidityVerdict::StrictlySmallerVolume && !r.certificate,
              "filled solution mis-certified");
  }
  if (o.pass)
    o.detail = "10 conjugates certified (max |phi -+ g| " + sci(worst) +
               "), 5 fillings strictly smaller";
  return o;
}

Outcome combinatorics() {
  Outcome o;
  const Triangulation t = fig8();
  o.require(t.edge_classes().size() == 2, "edge classes");
  for (const EdgeClass& e : t.edge_classes()) o.require(e.valence() == 6, "valence");
  o.require(t.cusp_count() == 1 && t.cusp_classes()[0].euler_characteristic() == 0, "cusp link");
  o.require(static_cast<int>(t.edge_classes().size()) == t.tet_count(), "edges != tets");
  const std::vector<std::pair<std::string, std::string>> corrupt = {
      {"corrupt/glued_twice.trig", "NonInvolutiveGluing"},
      {"corrupt/non_involutive.trig", "NonInvolutiveGluing"},
      {"corrupt/unglued_face.trig", "UnglueedFace"},
      {"corrupt/non_torus.trig", "NonTorusLink"},
      {"corrupt/cusp_count.trig", "CuspCountMismatch"},
      {"corrupt/malformed.trig", "MalformedInput"}};
  for (const auto& [file, name] : corrupt) {
    std::ostringstream out, err;
    const int code = run_cli({"info", oracle::fixture(file)}, out, err);
    o.require(code == exit_code::kInputError && err.str().find(name) != std::string::npos,
              file + " gave exit " + std::to_string(code));
  }
  if (o.pass) o.detail = "2 edge classes of valence 6, torus cusp, 6 corrupted fixtures exit 2";
  return o;
}

Outcome degeneracy() {
  Outcome o;
  const Triangulation t = fig8();
  const VolumeReport r = straighten_volume(t, Representation{std::vector<Moebius>(3)});
  o.require(r.total == 0.0, "total " + std::to_string(r.total));
  o.require(r.all_degenerate(), "not every tetrahedron degenerate");
  if (o.pass) o.detail = "total 0, " + std::to_string(r.per_tet.size()) + " degenerate tetrahedra";
  return o;
}

}  // namespace
}  // namespace cuspvol

int main() {
  using namespace cuspvol;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria = {
      {"Lobachevsky dual evaluation", lobachevsky_dual_evaluation, 1.0},
      {"figure-eight complete structure", fig8_complete, 1.0},
      {"straightening round-trip", round_trip, 5.0},
      {"fixed-point policy independence", policy_independence, 30.0},
      {"mirror anti-symmetry and conjugation invariance", anti_symmetry, 30.0},
      {"volume bounds and maximal-volume solution", bounds, 30.0},
      {"rigidity certificate", rigidity, 30.0},
      {"combinatorics oracle and corrupted fixtures", combinatorics, 30.0},
      {"trivial representation degeneracy", degeneracy, 30.0},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[i].budget_s) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu: %s (%.3f s) - %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
