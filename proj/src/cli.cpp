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

#include "cuspvol/cli.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "cuspvol/error.hpp"
#include "cuspvol/gluing_solver.hpp"
#include "cuspvol/holonomy.hpp"
#include "cuspvol/json_io.hpp"
#include "json_detail.hpp"

namespace cuspvol {

namespace {

using detail::Json;

constexpr double kRoundTripTolerance = 1e-8;
constexpr double kPolicyTolerance = 1e-8;
constexpr double kSymmetryTolerance = 1e-9;
constexpr double kCertificateTolerance = 1e-7;
constexpr int kCheckConjugations = 5;

struct RunConfig {
  std::string subcommand;
  std::string trig_path;
  std::vector<std::string> fills;
  bool scan = false;
  int restarts = 50;
  std::uint64_t seed = 0;
  std::string policy = "attracting";
  std::string shapes_path;
  std::string rep_path;
  std::string format = "text";
  double tol_newton = 1e-12;
  double tol_relator = kRelatorTolerance;
  std::optional<double> complete_volume;

  bool json() const { return format == "json"; }
  FixedPointChoice choice() const {
    return policy == "repelling" ? FixedPointChoice::Repelling
                                 : FixedPointChoice::Attracting;
  }
  NewtonOptions newton() const {
    NewtonOptions o;
    o.tolerance = tol_newton;
    return o;
  }
};

std::string fmt(double x, int precision = 12) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

std::string fmt(Complex z) {
  return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")";
}

std::map<int, std::optional<Filling>> parse_fills(const RunConfig& cfg,
                                                  const Triangulation& t) {
  static const std::regex kFill(R"(^\s*(\d+)\s*:\s*(-?\d+)\s*,\s*(-?\d+)\s*$)");
  std::map<int, std::optional<Filling>> fills;
  for (const std::string& f : cfg.fills) {
    std::smatch m;
    if (!std::regex_match(f, m, kFill))
      throw Error(ErrorKind::MalformedInput, "--fill expects <cusp>:<p>,<q>, got " + f);
    const int cusp = std::stoi(m[1]);
    if (cusp >= t.cusp_count())
      throw Error(ErrorKind::MalformedInput, "--fill names cusp " + m[1].str() +
                                                 " of " + std::to_string(t.cusp_count()));
    fills[cusp] = Filling{std::stoi(m[2]), std::stoi(m[3])};
  }
  return fills;
}

Json fillings_json(const Triangulation& t,
                   const std::map<int, std::optional<Filling>>& overrides) {
  Json out = Json::array();
  for (int c = 0; c < t.cusp_count(); ++c) {
    std::optional<Filling> f = t.filling(c);
    if (auto it = overrides.find(c); it != overrides.end()) f = it->second;
    out.push_back(f ? Json::array({f->p, f->q}) : Json(nullptr));
  }
  return out;
}

struct Inputs {
  std::string trig_text;
  Triangulation t;
};

Inputs load_inputs(const RunConfig& cfg) {
  std::string text = read_file(cfg.trig_path);
  Triangulation t = parse_triangulation(text);
  return {std::move(text), std::move(t)};
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  const Triangulation& t = in.t;
  if (cfg.json()) {
    Json j;
    j["tets"] = t.tet_count();
    j["edges"] = t.edge_classes().size();
    j["cusps"] = t.cusp_count();
    j["generators"] = t.generator_count();
    j["relators"] = t.relators().size();
    j["input_sha256"] = sha256_hex(in.trig_text);
    out << j.dump(2) << '\n';
  } else {
    out << "tets=" << t.tet_count() << " edges=" << t.edge_classes().size()
        << " cusps=" << t.cusp_count() << " generators=" << t.generator_count()
        << " relators=" << t.relators().size() << '\n';
  }
  return exit_code::kOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  EquationOptions opts;
  opts.fillings = parse_fills(cfg, in.t);
  const EquationSystem sys = build_equations(in.t, opts);
  const ScanResult result =
      solve_all(sys, cfg.scan ? cfg.restarts : 1, cfg.seed, cfg.newton());
  if (result.solutions.empty())
    throw Error(ErrorKind::NoConvergence, "no solution found");

  if (cfg.json()) {
    Json j = detail::scan_result_json(result);
    j["fillings"] = fillings_json(in.t, opts.fillings);
    j["input_sha256"] = sha256_hex(in.trig_text);
    out << j.dump(2) << '\n';
    return exit_code::kOk;
  }
  out << "solutions=" << result.solutions.size();
  if (result.max_volume_index) out << " max_volume_index=" << *result.max_volume_index;
  out << " all_zero_volume=" << (result.all_zero_volume ? "true" : "false") << '\n';
  for (size_t i = 0; i < result.solutions.size(); ++i) {
    const ScanSolution& s = result.solutions[i];
    out << '[' << i << "] volume=" << fmt(s.volume) << " residual=" << fmt(s.residual, 3);
    for (const std::string& f : s.flags) out << ' ' << f;
    out << "\n    shapes";
    for (Complex z : s.shapes) out << ' ' << fmt(z);
    out << '\n';
  }
  if (cfg.scan && result.max_volume_index)
    out << "advisory: solution " << *result.max_volume_index
        << " has maximal volume among those found\n";
  if (result.all_zero_volume)
    out << "advisory: every solution found has zero volume\n";
  return exit_code::kOk;
}

int cmd_volume(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  if (cfg.shapes_path.empty() == cfg.rep_path.empty())
    throw Error(ErrorKind::MalformedInput, "volume needs exactly one of --shapes, --rep");
  VolumeReport report;
  Json hashes;
  hashes["trig"] = sha256_hex(in.trig_text);
  if (!cfg.shapes_path.empty()) {
    const std::string text = read_file(cfg.shapes_path);
    const ShapeVector z = parse_shapes(text);
    validate_shapes(z, in.t.tet_count());
    report = volume_of_shapes(z);
    hashes["shapes"] = sha256_hex(text);
  } else {
    const std::string text = read_file(cfg.rep_path);
    const Representation rep = parse_representation(text);
    report = straighten_volume(in.t, rep, cfg.choice(), cfg.tol_relator);
    hashes["rep"] = sha256_hex(text);
  }
  if (cfg.json()) {
    Json j = detail::volume_report_json(report);
    j["input_sha256"] = std::move(hashes);
    out << j.dump(2) << '\n';
    return exit_code::kOk;
  }
  out << "total=" << fmt(report.total) << '\n';
  for (size_t i = 0; i < report.per_tet.size(); ++i) {
    const TetVolume& tv = report.per_tet[i];
    out << "tet " << i << ": modulus=";
    if (tv.modulus.is_degenerate())
      out << "degenerate:" << to_string(tv.modulus.tag());
    else
      out << fmt(tv.modulus.z());
    out << " volume=" << fmt(tv.volume);
    for (const std::string& f : tv.flags) out << ' ' << f;
    out << '\n';
  }
  out << "bound_v3n=" << (report.within_bound ? "true" : "false") << '\n';
  if (report.relator_residual)
    out << "relator_residual=" << fmt(*report.relator_residual, 3) << '\n';
  if (report.policy) out << "policy=" << *report.policy << '\n';
  return exit_code::kOk;
}

// --- check battery ---------------------------------------------------------

struct CheckLine {
  std::string name;
  std::string result;  // what is exercised
  bool pass = false;
  std::optional<double> value;
  std::optional<double> tolerance;
  std::string detail;
};

class Battery {
 public:
  void run(std::string name, std::string result,
           const std::function<void(CheckLine&)>& body) {
    CheckLine line;
    line.name = std::move(name);
    line.result = std::move(result);
    try {
      body(line);
    } catch (const Error& e) {
      line.pass = false;
      line.detail = e.what();
    }
    lines_.push_back(std::move(line));
  }
  void fail(std::string name, std::string result, std::string why) {
    CheckLine line;
    line.name = std::move(name);
    line.result = std::move(result);
    line.detail = std::move(why);
    lines_.push_back(std::move(line));
  }
  const std::vector<CheckLine>& lines() const { return lines_; }
  bool all_pass() const {
    return std::all_of(lines_.begin(), lines_.end(), [](const CheckLine& l) { return l.pass; });
  }

 private:
  std::vector<CheckLine> lines_;
};

void within(CheckLine& line, double value, double tol) {
  line.value = value;
  line.tolerance = tol;
  line.pass = value <= tol;
}

Moebius random_moebius(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Complex a(n(rng), n(rng)), b(n(rng), n(rng)), c(n(rng), n(rng)), d(n(rng), n(rng));
    if (std::abs(a * d - b * c) > 0.1) return Moebius(a, b, c, d);
  }
}

std::string fill_name(const std::vector<Filling>& fill) {
  std::string s;
  for (const Filling& f : fill) {
    if (!s.empty()) s += ';';
    s += "(" + std::to_string(f.p) + "," + std::to_string(f.q) + ")";
  }
  return s;
}

constexpr const char* kRoundTrip = "straightened volume of the developed holonomy equals the shape volume";
constexpr const char* kPolicy = "straightened volume is independent of the peripheral fixed-point choice";
constexpr const char* kMirror = "complex-conjugate representation has negated volume";
constexpr const char* kConjugation = "volume is a conjugacy invariant";
constexpr const char* kBound = "|vol| <= v3 * tet_count";
constexpr const char* kRigidity = "volume equal to vol(M) forces conjugacy to the complete holonomy";
constexpr const char* kSmaller = "non-complete representations have strictly smaller volume";

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Inputs in = load_inputs(cfg);
  const Triangulation& t = in.t;
  const auto overrides = parse_fills(cfg, t);
  std::optional<Representation> supplied_rep;
  std::optional<ShapeVector> supplied_shapes;
  if (!cfg.rep_path.empty()) supplied_rep = parse_representation(read_file(cfg.rep_path));
  if (!cfg.shapes_path.empty()) {
    supplied_shapes = parse_shapes(read_file(cfg.shapes_path));
    validate_shapes(*supplied_shapes, t.tet_count());
  }

  // Fillings exercised: the --fill overrides, otherwise a fixed family
  // applied to every cusp.
  std::vector<std::vector<Filling>> families;
  if (!overrides.empty()) {
    std::vector<Filling> f;
    for (int c = 0; c < t.cusp_count(); ++c)
      if (auto it = overrides.find(c); it != overrides.end() && it->second)
        f.push_back(*it->second);
    families.push_back(f);
  } else {
    for (Filling f : {Filling{5, 1}, Filling{6, 1}, Filling{7, 1}, Filling{5, 2}, Filling{8, 1}})
      families.emplace_back(static_cast<size_t>(t.cusp_count()), f);
  }

  Battery battery;
  const FixedPointChoice choice = cfg.choice();
  std::vector<VolumeReport> reports;

  auto round_trip = [&](CheckLine& line, std::span<const Complex> z) {
    const Development dev = develop(t, z);
    const VolumeReport straight = straighten_volume(t, dev.rep, choice, cfg.tol_relator);
    const VolumeReport direct = volume_of_shapes(z);
    reports.push_back(straight);
    reports.push_back(direct);
    within(line, std::abs(straight.total - direct.total), kRoundTripTolerance);
    line.detail = "volume " + fmt(direct.total);
    return dev;
  };

  // Complete structure.
  std::optional<Development> complete;
  double complete_volume = 0.0;
  battery.run("round-trip complete", kRoundTrip, [&](CheckLine& line) {
    EquationOptions opts;
    for (int c = 0; c < t.cusp_count(); ++c) opts.fillings[c] = std::nullopt;
    const NewtonResult r = newton_solve(build_equations(t, opts),
                                        regular_shapes(t.tet_count()), cfg.newton());
    complete = round_trip(line, r.shapes);
    complete_volume = volume_of_shapes(r.shapes).total;
  });
  if (cfg.complete_volume) complete_volume = *cfg.complete_volume;

  // Filled structures.
  std::vector<std::pair<std::string, Representation>> filled;
  for (const auto& family : families) {
    const std::string name = fill_name(family);
    battery.run("round-trip fill " + name, kRoundTrip, [&](CheckLine& line) {
      EquationOptions opts;
      int c = 0;
      for (int cusp = 0; cusp < t.cusp_count(); ++cusp) {
        auto it = overrides.find(cusp);
        if (!overrides.empty() && (it == overrides.end() || !it->second)) {
          opts.fillings[cusp] = std::nullopt;
          continue;
        }
        opts.fillings[cusp] = family[static_cast<size_t>(c++)];
      }
      const NewtonResult r = newton_solve(build_equations(t, opts),
                                          regular_shapes(t.tet_count()), cfg.newton());
      filled.emplace_back(name, round_trip(line, r.shapes).rep);
    });
  }
  for (const auto& [name, rep] : filled)
    battery.run("policy-independence fill " + name, kPolicy, [&](CheckLine& line) {
      const IndependenceReport r = fixed_point_independence_check(t, rep, kPolicyTolerance);
      within(line, r.discrepancy, kPolicyTolerance);
      line.detail = std::to_string(r.totals.size()) + " fixed-point combinations";
    });

  std::mt19937_64 rng(cfg.seed);
  if (complete) {
    battery.run("anti-conjugation complete", kMirror, [&](CheckLine& line) {
      const VolumeReport m = straighten_volume(t, mirrored(complete->rep), choice, cfg.tol_relator);
      reports.push_back(m);
      within(line, std::abs(m.total + complete_volume), kSymmetryTolerance);
      line.detail = "mirrored volume " + fmt(m.total);
    });
    battery.run("conjugation-invariance complete", kConjugation, [&](CheckLine& line) {
      double worst = 0.0;
      for (int i = 0; i < kCheckConjugations; ++i) {
        const Moebius g = random_moebius(rng);
        const VolumeReport r = straighten_volume(t, conjugated(complete->rep, g), choice, cfg.tol_relator);
        worst = std::max(worst, std::abs(r.total - complete_volume));
      }
      within(line, worst, kSymmetryTolerance);
      line.detail = std::to_string(kCheckConjugations) + " random conjugators";
    });
    battery.run("rigidity conjugated-complete", kRigidity, [&](CheckLine& line) {
      const Moebius g = random_moebius(rng);
      const RigidityReport r = rigidity_check(t, conjugated(complete->rep, g), complete->rep, complete_volume);
      line.detail = std::string(to_string(r.verdict));
      if (!r.certificate) return;
      within(line, distance_up_to_sign(*r.certificate, g), kCertificateTolerance);
      line.pass = line.pass && r.verdict == RigidityVerdict::ConjugateToComplete;
    });
    for (const auto& [name, rep] : filled)
      battery.run("rigidity fill " + name, kSmaller, [&](CheckLine& line) {
        const RigidityReport r = rigidity_check(t, rep, complete->rep, complete_volume);
        line.value = std::abs(r.volume);
        line.detail = std::string(to_string(r.verdict));
        line.pass = r.verdict == RigidityVerdict::StrictlySmallerVolume && !r.certificate &&
                    std::abs(r.volume) > 0.0;
      });
  } else {
    battery.fail("rigidity", kRigidity, "complete structure unavailable");
  }

  if (supplied_shapes)
    battery.run("round-trip shapes", kRoundTrip,
                [&](CheckLine& line) { round_trip(line, *supplied_shapes); });
  if (supplied_rep) {
    battery.run("round-trip rep", kRoundTrip, [&](CheckLine& line) {
      // Re-develop the straightened moduli and compare volumes.
      const VolumeReport straight = straighten_volume(t, *supplied_rep, choice, cfg.tol_relator);
      reports.push_back(straight);
      line.detail = "volume " + fmt(straight.total);
      if (straight.all_degenerate()) {
        line.pass = straight.total == 0.0;
        line.detail += " (every tetrahedron degenerate)";
        return;
      }
      ShapeVector z;
      for (const TetVolume& tv : straight.per_tet) {
        if (tv.modulus.is_degenerate())
          throw Error(ErrorKind::NumericallyCoincidentVertices, "partially degenerate straightening");
        z.push_back(tv.modulus.z());
      }
      const Development dev = develop(t, z);
      const VolumeReport again = straighten_volume(t, dev.rep, choice, cfg.tol_relator);
      within(line, std::abs(again.total - straight.total), kRoundTripTolerance);
    });
    if (complete)
      battery.run("rigidity rep", kRigidity, [&](CheckLine& line) {
        const RigidityReport r = rigidity_check(t, *supplied_rep, complete->rep, complete_volume);
        line.value = std::abs(r.volume);
        line.detail = std::string(to_string(r.verdict));
        line.pass = r.pass;
      });
  }

  battery.run("bound", kBound, [&](CheckLine& line) {
    line.pass = std::all_of(reports.begin(), reports.end(),
                            [](const VolumeReport& r) { return r.within_bound; });
    line.detail = std::to_string(reports.size()) + " reports";
  });

  const bool pass = battery.all_pass();
  if (cfg.json()) {
    Json checks = Json::array();
    for (const CheckLine& l : battery.lines()) {
      Json j;
      j["name"] = l.name;
      j["exercises"] = l.result;
      j["pass"] = l.pass;
      j["value"] = l.value ? Json(*l.value) : Json(nullptr);
      j["tolerance"] = l.tolerance ? Json(*l.tolerance) : Json(nullptr);
      j["detail"] = l.detail;
      checks.push_back(std::move(j));
    }
    Json j;
    j["checks"] = std::move(checks);
    j["complete_volume"] = complete_volume;
    j["pass"] = pass;
    j["input_sha256"] = sha256_hex(in.trig_text);
    out << j.dump(2) << '\n';
  } else {
    for (const CheckLine& l : battery.lines()) {
      out << (l.pass ? "PASS " : "FAIL ") << l.name;
      if (l.value) out << "  value=" << fmt(*l.value, 3);
      if (l.tolerance) out << " tol=" << fmt(*l.tolerance, 3);
      if (!l.detail.empty()) out << "  [" << l.detail << ']';
      out << "  -- " << l.result << '\n';
    }
    out << (pass ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return pass ? exit_code::kOk : exit_code::kCheckFailed;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RelatorResidualTooLarge:
    case ErrorKind::ShapeResidualTooLarge:
      return exit_code::kResidualGate;
    case ErrorKind::NoConvergence:
    case ErrorKind::DegenerationGuard:
    case ErrorKind::SingularJacobianUnrecoverable:
      return exit_code::kNoSolution;
    default:
      return exit_code::kInputError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Volumes of cusped hyperbolic 3-manifolds and their representations",
               "cuspvol"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("trig", cfg.trig_path, "Triangulation file")->required();
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--fill", cfg.fills, "Dehn filling <cusp>:<p>,<q> (repeatable)");
    sub->add_option("--tol-newton", cfg.tol_newton, "Newton residual tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_volume = [&](CLI::App* sub) {
    sub->add_option("--shapes", cfg.shapes_path, "Shape JSON file");
    sub->add_option("--rep", cfg.rep_path, "Representation JSON file");
    sub->add_option("--policy", cfg.policy, "Peripheral fixed-point choice")
        ->check(CLI::IsMember({"attracting", "repelling"}))
        ->capture_default_str();
    sub->add_option("--tol-relator", cfg.tol_relator, "Relator residual gate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  CLI::App* info = app.add_subcommand("info", "Print the derived combinatorics");
  add_common(info);

  CLI::App* solve = app.add_subcommand("solve", "Solve the gluing equations");
  add_common(solve);
  add_solver(solve);
  solve->add_flag("--scan", cfg.scan, "Multi-start search for all solutions");
  solve->add_option("--restarts", cfg.restarts, "Number of starts with --scan")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

  CLI::App* volume = app.add_subcommand("volume", "Volume of shapes or a representation");
  add_common(volume);
  add_volume(volume);

  CLI::App* check = app.add_subcommand("check", "Run the invariant battery");
  add_common(check);
  add_solver(check);
  add_volume(check);
  check->add_option("--seed", cfg.seed, "Seed for random conjugators")->capture_default_str();
  check->add_option("--complete-volume", cfg.complete_volume,
                    "Complete volume for the rigidity check (default: solved)")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kInputError;
  }

  try {
    if (info->parsed()) return cmd_info(cfg, out);
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (volume->parsed()) return cmd_volume(cfg, out);
    return cmd_check(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

}  // namespace cuspvol
