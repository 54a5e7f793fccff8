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

#include "cuspvol/gluing_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include "cuspvol/error.hpp"

namespace cuspvol {

namespace {

using std::numbers::pi;
const Complex kTwoPiI(0.0, 2.0 * pi);
const Complex kPiI(0.0, pi);

bool near_degenerate(Complex z, double guard) {
  return std::abs(z) < guard || std::abs(z - 1.0) < guard ||
         std::abs(z) > 1.0 / guard || !std::isfinite(z.real()) ||
         !std::isfinite(z.imag());
}

// Residual vector with the edge-row branches fixed by `branch`.
Eigen::VectorXcd lifted_values(const EquationSystem& sys,
                               std::span<const Complex> z,
                               std::span<const double> branch) {
  Eigen::VectorXcd f(static_cast<Eigen::Index>(sys.rows.size()));
  for (size_t r = 0; r < sys.rows.size(); ++r)
    f(static_cast<Eigen::Index>(r)) = sys.rows[r].evaluate(z) - kTwoPiI * branch[r];
  return f;
}

double max_abs(const Eigen::VectorXcd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

void validate_shapes(std::span<const Complex> z, int tet_count, double guard) {
  if (static_cast<int>(z.size()) != tet_count)
    throw Error(ErrorKind::MalformedInput,
                "expected " + std::to_string(tet_count) + " shapes, got " +
                    std::to_string(z.size()));
  for (size_t i = 0; i < z.size(); ++i)
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag()) ||
        std::abs(z[i]) <= guard || std::abs(z[i] - 1.0) <= guard)
      throw Error(ErrorKind::MalformedInput,
                  "shape " + std::to_string(i) + " is not in C \\ {0, 1}");
}

std::string_view to_string(RowKind k) {
  switch (k) {
    case RowKind::Edge: return "edge";
    case RowKind::Completeness: return "completeness";
    case RowKind::Filling: return "filling";
  }
  return "?";
}

Complex EquationRow::evaluate(std::span<const Complex> z) const {
  Complex sum = kPiI * static_cast<double>(pi_offset);
  for (size_t i = 0; i < exponents.size(); ++i) {
    const auto& [a, b, c] = exponents[i];
    if (a != 0) sum += static_cast<double>(a) * std::log(z[i]);
    if (b != 0) sum += static_cast<double>(b) * std::log(1.0 / (1.0 - z[i]));
    if (c != 0) sum += static_cast<double>(c) * std::log((z[i] - 1.0) / z[i]);
  }
  return sum - target;
}

size_t EquationSystem::count(RowKind kind) const {
  return static_cast<size_t>(std::count_if(rows.begin(), rows.end(),
                                           [&](const EquationRow& r) { return r.kind == kind; }));
}

EquationSystem build_equations(const Triangulation& t,
                               const EquationOptions& options) {
  EquationSystem sys;
  sys.tet_count = t.tet_count();
  for (auto& row : t.structure().edge_rows())
    sys.rows.push_back({RowKind::Edge, -1, std::move(row), 0, kTwoPiI});
  if (options.edges_only) return sys;

  for (int cusp = 0; cusp < t.cusp_count(); ++cusp) {
    std::optional<Filling> fill = t.filling(cusp);
    if (auto it = options.fillings.find(cusp); it != options.fillings.end())
      fill = it->second;
    if (fill && std::gcd(fill->p, fill->q) != 1)
      throw Error(ErrorKind::NonCoprimeFilling,
                  "filling (" + std::to_string(fill->p) + "," +
                      std::to_string(fill->q) + ") on cusp " +
                      std::to_string(cusp) + " is not coprime");
    const auto& curves = t.peripheral_curves(cusp);
    if (!curves)
      throw Error(ErrorKind::MissingPeripheralRows,
                  "cusp " + std::to_string(cusp) + " has no peripheral rows");
    if (!fill) {
      sys.rows.push_back({RowKind::Completeness, cusp, curves->meridian.exponents,
                          curves->meridian.pi_offset, 0.0});
      sys.rows.push_back({RowKind::Completeness, cusp, curves->longitude.exponents,
                          curves->longitude.pi_offset, 0.0});
      continue;
    }
    EquationRow row{RowKind::Filling, cusp, {}, 0, kTwoPiI};
    for (int i = 0; i < t.tet_count(); ++i) {
      SlotExponents e{};
      for (size_t s = 0; s < 3; ++s)
        e[s] = fill->p * curves->meridian.exponents[static_cast<size_t>(i)][s] +
               fill->q * curves->longitude.exponents[static_cast<size_t>(i)][s];
      row.exponents.push_back(e);
    }
    row.pi_offset = fill->p * curves->meridian.pi_offset +
                    fill->q * curves->longitude.pi_offset;
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

double residual(const EquationSystem& sys, std::span<const Complex> z) {
  double worst = 0.0;
  for (const EquationRow& row : sys.rows) {
    Complex v = row.evaluate(z);
    if (row.kind == RowKind::Edge)
      v -= kTwoPiI * std::round(v.imag() / (2.0 * pi));
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

NewtonResult newton_solve(const EquationSystem& sys, std::span<const Complex> z0,
                          const NewtonOptions& options) {
  validate_shapes(z0, sys.tet_count);
  const auto m = static_cast<Eigen::Index>(sys.rows.size());
  const auto n = static_cast<Eigen::Index>(sys.tet_count);

  std::vector<double> branch(sys.rows.size(), 0.0);
  for (size_t r = 0; r < sys.rows.size(); ++r)
    if (sys.rows[r].kind == RowKind::Edge)
      branch[r] = std::round(sys.rows[r].evaluate(z0).imag() / (2.0 * pi));

  ShapeVector z(z0.begin(), z0.end());
  Eigen::VectorXcd f = lifted_values(sys, z, branch);
  double res = max_abs(f);
  int iterations = 0;

  while (iterations < options.max_iterations) {
    Eigen::MatrixXcd jac(m, n);
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto& [a, b, c] =
            sys.rows[static_cast<size_t>(r)].exponents[static_cast<size_t>(i)];
        const Complex zi = z[static_cast<size_t>(i)];
        // d/dw with z = e^w: log z -> 1, log z' -> z/(1-z), log z'' -> 1/(z-1)
        jac(r, i) = static_cast<double>(a) + static_cast<double>(b) * zi / (1.0 - zi) +
                    static_cast<double>(c) / (zi - 1.0);
      }
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(jac);
    if (cod.rank() == 0) {
      if (res <= options.tolerance) break;
      throw Error(ErrorKind::SingularJacobianUnrecoverable, "Jacobian has rank 0");
    }
    const Eigen::VectorXcd step = cod.solve(-f);
    if (!step.allFinite())
      throw Error(ErrorKind::SingularJacobianUnrecoverable, "non-finite Newton step");

    double scale = 1.0;
    bool accepted = false;
    bool guarded = false;
    ShapeVector trial(z.size());
    Eigen::VectorXcd trial_f;
    for (int h = 0; h <= options.max_halvings; ++h, scale /= 2.0) {
      bool blocked = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        trial[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] * std::exp(scale * step(i));
        blocked = blocked || near_degenerate(trial[static_cast<size_t>(i)], options.guard_radius);
      }
      if (blocked) {
        guarded = true;
        continue;
      }
      trial_f = lifted_values(sys, trial, branch);
      if (max_abs(trial_f) < res) {
        accepted = true;
        break;
      }
    }
    if (res <= options.tolerance) {
      // Converged; a final step is kept only if it improves the residual.
      if (accepted) {
        z = trial;
        f = trial_f;
        res = max_abs(f);
        ++iterations;
      }
      break;
    }
    if (!accepted) {
      if (guarded)
        throw Error(ErrorKind::DegenerationGuard,
                    "iterates approach a degenerate shape");
      throw Error(ErrorKind::NoConvergence,
                  "damped step failed to reduce the residual " + std::to_string(res));
    }
    z = trial;
    f = trial_f;
    res = max_abs(f);
    ++iterations;
  }
  if (res > options.tolerance)
    throw Error(ErrorKind::NoConvergence,
                "residual " + std::to_string(res) + " after " +
                    std::to_string(iterations) + " iterations");
  return {z, residual(sys, z), iterations};
}

VolumeReport volume_of_shapes(std::span<const Complex> z) {
  std::vector<ShapeModulus> moduli;
  moduli.reserve(z.size());
  for (Complex zi : z) moduli.push_back(ShapeModulus::from_value(zi));
  return make_volume_report(moduli);
}

ShapeVector regular_shapes(int tet_count) {
  return ShapeVector(static_cast<size_t>(tet_count), std::polar(1.0, pi / 3.0));
}

ScanResult solve_all(const EquationSystem& sys, int restarts, std::uint64_t seed,
                     const NewtonOptions& options) {
  ScanResult result;
  if (restarts < 1) return result;

  std::vector<ShapeVector> starts{regular_shapes(sys.tet_count)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Complex center = std::polar(1.0, pi / 3.0);
  while (static_cast<int>(starts.size()) < restarts) {
    ShapeVector z;
    while (static_cast<int>(z.size()) < sys.tet_count) {
      Complex w = center + std::polar(2.0 * std::sqrt(unit(rng)), 2.0 * pi * unit(rng));
      if (std::abs(w.imag()) < 1e-3) w.imag(w.imag() < 0.0 ? -1e-3 : 1e-3);
      if (std::abs(w) < 1e-3 || std::abs(w - 1.0) < 1e-3) continue;
      z.push_back(w);
    }
    starts.push_back(std::move(z));
  }

  // Restarts are independent; results are merged in start order.
  std::vector<std::optional<NewtonResult>> found(starts.size());
  const size_t workers =
      std::clamp<size_t>(std::thread::hardware_concurrency(), 1, starts.size());
  std::vector<std::future<void>> jobs;
  for (size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (size_t i = w; i < starts.size(); i += workers) {
        try {
          found[i] = newton_solve(sys, starts[i], options);
        } catch (const Error&) {
        }
      }
    }));
  for (auto& j : jobs) j.get();

  for (const auto& r : found) {
    if (!r || r->residual > options.tolerance) continue;
    const bool duplicate = std::any_of(
        result.solutions.begin(), result.solutions.end(), [&](const ScanSolution& s) {
          double d = 0.0;
          for (size_t i = 0; i < s.shapes.size(); ++i)
            d = std::max(d, std::abs(s.shapes[i] - r->shapes[i]));
          return d <= kDedupTolerance;
        });
    if (duplicate) continue;
    ScanSolution s{r->shapes, r->residual, volume_of_shapes(r->shapes).total, {}};
    const bool all_pos = std::all_of(s.shapes.begin(), s.shapes.end(),
                                     [](Complex z) { return z.imag() > kFlatTolerance; });
    const bool all_neg = std::all_of(s.shapes.begin(), s.shapes.end(),
                                     [](Complex z) { return z.imag() < -kFlatTolerance; });
    s.flags.push_back(all_pos ? "positively_oriented"
                              : all_neg ? "negatively_oriented" : "mixed_orientation");
    if (std::any_of(s.shapes.begin(), s.shapes.end(),
                    [](Complex z) { return std::abs(z.imag()) <= kFlatTolerance; }))
      s.flags.push_back("flat");
    if (std::abs(s.volume) <= 1e-9) s.flags.push_back("zero_volume");
    result.solutions.push_back(std::move(s));
  }

  std::stable_sort(result.solutions.begin(), result.solutions.end(),
                   [](const ScanSolution& a, const ScanSolution& b) {
                     if (a.volume != b.volume) return a.volume > b.volume;
                     for (size_t i = 0; i < a.shapes.size(); ++i) {
                       if (a.shapes[i].real() != b.shapes[i].real())
                         return a.shapes[i].real() < b.shapes[i].real();
                       if (a.shapes[i].imag() != b.shapes[i].imag())
                         return a.shapes[i].imag() < b.shapes[i].imag();
                     }
                     return false;
                   });
  if (!result.solutions.empty()) {
    result.max_volume_index = 0;
    result.all_zero_volume =
        std::all_of(result.solutions.begin(), result.solutions.end(),
                    [](const ScanSolution& s) { return std::abs(s.volume) <= 1e-9; });
  }
  return result;
}

}  // namespace cuspvol
