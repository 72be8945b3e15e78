// Copyright 2026 The Capillary Authors.
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capillary/diagnostics.hpp"
#include "capillary/pipeline.hpp"

namespace py = pybind11;
using namespace capillary;

namespace {

using Triple = std::array<double, 3>;

Triple to_triple(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

std::vector<Triple> to_triples(const std::vector<Vec3>& vs) {
  std::vector<Triple> out;
  out.reserve(vs.size());
  for (const Vec3& v : vs) out.push_back(to_triple(v));
  return out;
}

SolverOptions make_options(double tol, int max_iter, double init_perturbation,
                           unsigned init_seed) {
  SolverOptions opts;
  opts.area_tolerance = tol;
  opts.max_iterations = max_iter;
  opts.init_perturbation = init_perturbation;
  opts.init_seed = init_seed;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Capillary constant-mean-curvature surfaces in polyhedral "
            "containers via the generalized Minkowski problem";

  m.def("cap_area", &cap_area, py::arg("r"),
        "Area of the spherical cap with sin-radius r");
  m.def(
      "cap_moment",
      [](const Triple& q, double r) {
        return to_triple(cap_moment(UnitVector(q[0], q[1], q[2]), r));
      },
      py::arg("q"), py::arg("r"), "First moment pi r^2 q of the cap B(q; r)");
  m.def(
      "annulus_moment",
      [](const Triple& q, double r, double s) {
        return to_triple(annulus_moment(UnitVector(q[0], q[1], q[2]), r, s));
      },
      py::arg("q"), py::arg("r"), py::arg("s"),
      "First moment pi (r^2 + 2 r s) q of the annulus A(q; r, s)");

  py::class_<CapillaryConfig>(m, "Config")
      .def_static("demo", &demo_config, py::arg("name"))
      .def_static("from_json", &config_from_json, py::arg("text"))
      .def_static("load", &load_config, py::arg("path"))
      .def("to_json", &config_to_json)
      .def_property_readonly("H",
                             [](const CapillaryConfig& c) { return c.H; })
      .def_property_readonly(
          "face_count",
          [](const CapillaryConfig& c) { return c.faces.size(); })
      .def("validate", [](const CapillaryConfig& c) { validate(c); })
      .def("balancing_residual",
           [](const CapillaryConfig& c) { return to_triple(check_balancing(c)); })
      .def("repair", &repair_areas)
      .def("__repr__", [](const CapillaryConfig& c) {
        return "<capillary.Config with " + std::to_string(c.faces.size()) +
               " faces, H = " + std::to_string(c.H) + ">";
      });

  m.def("demo_names", &demo_names);

  py::class_<CapillaryOutput>(m, "Output")
      .def_property_readonly(
          "level", [](const CapillaryOutput& o) { return o.level; })
      .def_property_readonly(
          "scale", [](const CapillaryOutput& o) { return o.scale; })
      .def("sigma_vertices",
           [](const CapillaryOutput& o) { return to_triples(o.sigma.vertices); })
      .def("sigma_gauss",
           [](const CapillaryOutput& o) { return to_triples(o.sigma.gauss); })
      .def("sigma_triangles",
           [](const CapillaryOutput& o) { return o.sigma.triangles; })
      .def("plane_supports",
           [](const CapillaryOutput& o) {
             std::vector<double> s;
             for (const auto& p : o.planes) s.push_back(p.support);
             return s;
           })
      .def("disk_areas",
           [](const CapillaryOutput& o) {
             std::vector<double> s;
             for (const auto& d : o.disks) s.push_back(d.area);
             return s;
           })
      .def("disk_perimeters",
           [](const CapillaryOutput& o) {
             std::vector<double> s;
             for (const auto& d : o.disks) s.push_back(d.perimeter);
             return s;
           })
      .def("support_numbers",
           [](const CapillaryOutput& o) { return o.support.values; })
      .def("energy", &compute_energy)
      .def("area_identity_residuals", &area_identity_check)
      .def("report_json",
           [](const CapillaryOutput& o) { return report_to_json(build_report(o)); })
      .def("sigma_obj", &sigma_to_obj)
      .def("disks_obj", &disks_to_obj)
      .def("polytope_off",
           [](const CapillaryOutput& o) { return to_off(o.polytope); });

  m.def(
      "solve",
      [](const CapillaryConfig& config, int level, double tol, int max_iter,
         double init_perturbation, unsigned init_seed) {
        return run(config, level,
                   make_options(tol, max_iter, init_perturbation, init_seed));
      },
      py::arg("config"), py::arg("level") = 4, py::arg("tol") = 1e-11,
      py::arg("max_iter") = 120, py::arg("init_perturbation") = 0.0,
      py::arg("init_seed") = 1,
      "Run the full construction and return the output surface");

  m.def(
      "solve_minkowski",
      [](const std::vector<Triple>& normals, const std::vector<double>& weights,
         double tol, int max_iter) {
        std::vector<Vec3> n;
        n.reserve(normals.size());
        for (const Triple& t : normals) n.push_back(Vec3(t[0], t[1], t[2]));
        const MinkowskiSolution sol =
            solve_minkowski(n, weights, make_options(tol, max_iter, 0.0, 1));
        py::dict out;
        out["h"] = sol.h.values;
        out["areas"] = sol.polytope.areas();
        out["vertices"] = to_triples(sol.polytope.vertices);
        out["iterations"] = sol.iterations;
        out["residual"] = sol.area_residual;
        return out;
      },
      py::arg("normals"), py::arg("weights"), py::arg("tol") = 1e-11,
      py::arg("max_iter") = 120,
      "Reconstruct the polytope with the prescribed facet areas");

  m.def(
      "verify_uniqueness",
      [](const CapillaryConfig& config, int level) {
        return verify_uniqueness(config, level);
      },
      py::arg("config"), py::arg("level") = 4);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
