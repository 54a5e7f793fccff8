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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cuspvol/cli.hpp"
#include "cuspvol/error.hpp"
#include "cuspvol/gluing_solver.hpp"
#include "cuspvol/holonomy.hpp"
#include "cuspvol/ideal_geometry.hpp"
#include "cuspvol/json_io.hpp"

namespace py = pybind11;
using namespace cuspvol;

namespace {

using Matrix = std::tuple<Complex, Complex, Complex, Complex>;

Representation to_rep(const std::vector<Matrix>& gens) {
  Representation rep;
  for (const auto& [a, b, c, d] : gens) rep.generators.emplace_back(a, b, c, d);
  return rep;
}

std::vector<Matrix> from_rep(const Representation& rep) {
  std::vector<Matrix> out;
  for (const Moebius& m : rep.generators) out.emplace_back(m.a(), m.b(), m.c(), m.d());
  return out;
}

EquationSystem equations(const Triangulation& t,
                         const std::map<int, std::pair<int, int>>& fillings,
                         bool edges_only) {
  EquationOptions opts;
  for (const auto& [cusp, pq] : fillings) opts.fillings[cusp] = Filling{pq.first, pq.second};
  opts.edges_only = edges_only;
  return build_equations(t, opts);
}

FixedPointChoice choice_from(const std::string& policy) {
  if (policy == "attracting") return FixedPointChoice::Attracting;
  if (policy == "repelling") return FixedPointChoice::Repelling;
  throw Error(ErrorKind::MalformedInput, "policy must be attracting or repelling");
}

}  // namespace

PYBIND11_MODULE(_cuspvol, m) {
  m.doc() = "Volumes of cusped hyperbolic 3-manifolds and their representations";

  static py::exception<Error> error(m, "CuspvolError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), std::string(e.name())).ptr());
    }
  });

  py::class_<Triangulation>(m, "Triangulation")
      .def_property_readonly("tet_count", &Triangulation::tet_count)
      .def_property_readonly("cusp_count", &Triangulation::cusp_count)
      .def_property_readonly("edge_count",
                             [](const Triangulation& t) { return t.edge_classes().size(); })
      .def_property_readonly("generator_count", &Triangulation::generator_count)
      .def_property_readonly("relator_count",
                             [](const Triangulation& t) { return t.relators().size(); })
      .def("edge_valences",
           [](const Triangulation& t) {
             std::vector<int> v;
             for (const EdgeClass& e : t.edge_classes()) v.push_back(e.valence());
             return v;
           })
      .def("to_json", &to_canonical_json);

  m.def("parse_triangulation", &parse_triangulation, py::arg("text"));
  m.def("load_triangulation", &load_triangulation, py::arg("path"));

  m.def("lobachevsky", &lobachevsky, py::arg("theta"));
  m.def("tet_volume", py::overload_cast<Complex>(&tet_volume), py::arg("z"));
  m.attr("REGULAR_IDEAL_VOLUME") = kRegularIdealVolume;

  m.def(
      "solve",
      [](const Triangulation& t, const std::map<int, std::pair<int, int>>& fillings,
         bool edges_only, double tolerance) {
        NewtonOptions opts;
        opts.tolerance = tolerance;
        const NewtonResult r = newton_solve(equations(t, fillings, edges_only),
                                            regular_shapes(t.tet_count()), opts);
        py::dict out;
        out["shapes"] = r.shapes;
        out["residual"] = r.residual;
        out["iterations"] = r.iterations;
        out["volume"] = volume_of_shapes(r.shapes).total;
        return out;
      },
      py::arg("t"), py::arg("fillings") = std::map<int, std::pair<int, int>>{},
      py::arg("edges_only") = false, py::arg("tolerance") = 1e-12);

  m.def(
      "scan_json",
      [](const Triangulation& t, int restarts, std::uint64_t seed,
         const std::map<int, std::pair<int, int>>& fillings, bool edges_only) {
        return scan_result_to_json(solve_all(equations(t, fillings, edges_only), restarts, seed));
      },
      py::arg("t"), py::arg("restarts") = 50, py::arg("seed") = 0,
      py::arg("fillings") = std::map<int, std::pair<int, int>>{},
      py::arg("edges_only") = false);

  m.def("volume_of_shapes",
        [](const std::vector<Complex>& z) { return volume_of_shapes(z).total; },
        py::arg("shapes"));

  m.def(
      "develop",
      [](const Triangulation& t, const std::vector<Complex>& z) {
        return from_rep(develop(t, z).rep);
      },
      py::arg("t"), py::arg("shapes"));

  m.def(
      "relator_residual",
      [](const Triangulation& t, const std::vector<Matrix>& gens) {
        return relator_residual(t, to_rep(gens));
      },
      py::arg("t"), py::arg("generators"));

  m.def(
      "straighten_volume_json",
      [](const Triangulation& t, const std::vector<Matrix>& gens, const std::string& policy,
         double relator_tolerance) {
        return volume_report_to_json(
            straighten_volume(t, to_rep(gens), choice_from(policy), relator_tolerance));
      },
      py::arg("t"), py::arg("generators"), py::arg("policy") = "attracting",
      py::arg("relator_tolerance") = kRelatorTolerance);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
